#include "pgs/model.hpp"

#include <cmath>
#include <string>

namespace pgs {

namespace {

struct ClassSizes {
  double target_block_rest;  // b - 1
  double outside;            // N - b
};

ClassSizes class_sizes(const Geometry& g) {
  return {static_cast<double>(g.block_size - 1),
          static_cast<double>(g.n_items - g.block_size)};
}

double safe_sqrt_count(double count) { return count > 0.0 ? std::sqrt(count) : 0.0; }

}  // namespace

Geometry make_geometry(std::uint64_t n_items, std::uint64_t n_blocks) {
  if (n_items < 2) {
    throw Error(ErrorKind::TooSmall,
                "database needs at least 2 items, got " + std::to_string(n_items));
  }
  if (n_items > kMaxExactItems) {
    throw Error(ErrorKind::Precision,
                "N = " + std::to_string(n_items) + " exceeds 2^53 and is not exact in double");
  }
  if (n_blocks == 0) {
    throw Error(ErrorKind::BadK, "block count must be positive");
  }
  if (n_items % n_blocks != 0) {
    throw Error(ErrorKind::NonDivisible, "K = " + std::to_string(n_blocks) +
                                             " does not divide N = " + std::to_string(n_items));
  }
  Geometry g;
  g.n_items = n_items;
  g.n_blocks = n_blocks;
  g.block_size = n_items / n_blocks;
  g.theta1 = std::asin(1.0 / std::sqrt(static_cast<double>(n_items)));
  g.theta2 = std::asin(1.0 / std::sqrt(static_cast<double>(g.block_size)));
  return g;
}

double weighted_norm_squared(const ReducedState& s, const Geometry& g) {
  const auto sizes = class_sizes(g);
  return s.amp_target * s.amp_target + sizes.target_block_rest * s.amp_ntt * s.amp_ntt +
         sizes.outside * s.amp_nb * s.amp_nb;
}

Schedule make_schedule(std::uint64_t j1, std::uint64_t j2, bool trailing_global) {
  return Schedule{j1, j2, trailing_global, j1 + j2 + (trailing_global ? 1u : 0u)};
}

ReducedState uniform_state(const Geometry& g) {
  const double a = 1.0 / std::sqrt(static_cast<double>(g.n_items));
  return {a, a, a};
}

ReducedState apply_global(const ReducedState& s, const Geometry& g) {
  const auto sizes = class_sizes(g);
  const double flipped = -s.amp_target;
  const double mean =
      (flipped + sizes.target_block_rest * s.amp_ntt + sizes.outside * s.amp_nb) /
      static_cast<double>(g.n_items);
  return {2.0 * mean - flipped, 2.0 * mean - s.amp_ntt, 2.0 * mean - s.amp_nb};
}

ReducedState apply_local(const ReducedState& s, const Geometry& g) {
  if (g.block_size == 1) {
    return s;
  }
  const auto sizes = class_sizes(g);
  const double flipped = -s.amp_target;
  const double mean =
      (flipped + sizes.target_block_rest * s.amp_ntt) / static_cast<double>(g.block_size);
  return {2.0 * mean - flipped, 2.0 * mean - s.amp_ntt, s.amp_nb};
}

ReducedState run_schedule(const Geometry& g, const Schedule& sch, QueryCounter& counter) {
  ReducedState s = uniform_state(g);
  for (std::uint64_t i = 0; i < sch.j1; ++i) {
    s = apply_global(s, g);
    ++counter.global;
  }
  for (std::uint64_t i = 0; i < sch.j2; ++i) {
    s = apply_local(s, g);
    ++counter.local;
  }
  if (sch.trailing_global) {
    s = apply_global(s, g);
    ++counter.global;
  }
  return s;
}

ReducedState run_schedule(const Geometry& g, const Schedule& sch) {
  QueryCounter unused;
  return run_schedule(g, sch, unused);
}

double block_success_probability(const ReducedState& s, const Geometry& g) {
  const auto sizes = class_sizes(g);
  return s.amp_target * s.amp_target + sizes.target_block_rest * s.amp_ntt * s.amp_ntt;
}

double block_success_probability_complement(const ReducedState& s, const Geometry& g) {
  const auto sizes = class_sizes(g);
  return 1.0 - sizes.outside * s.amp_nb * s.amp_nb;
}

double item_success_probability(const ReducedState& s) { return s.amp_target * s.amp_target; }

Vector3c apply_iteration(const Vector3c& v, const Geometry& g, IterationKind which) {
  const auto sizes = class_sizes(g);
  const double root_rest = safe_sqrt_count(sizes.target_block_rest);
  const double root_outside = safe_sqrt_count(sizes.outside);

  auto to_items = [&](auto part) {
    return ReducedState{part(v[0]), root_rest > 0.0 ? part(v[1]) / root_rest : 0.0,
                        root_outside > 0.0 ? part(v[2]) / root_outside : 0.0};
  };
  auto step = [&](const ReducedState& s) {
    return which == IterationKind::Global ? apply_global(s, g) : apply_local(s, g);
  };

  const ReducedState re = step(to_items([](std::complex<double> z) { return z.real(); }));
  const ReducedState im = step(to_items([](std::complex<double> z) { return z.imag(); }));
  return {std::complex<double>(re.amp_target, im.amp_target),
          std::complex<double>(re.amp_ntt, im.amp_ntt) * root_rest,
          std::complex<double>(re.amp_nb, im.amp_nb) * root_outside};
}

std::vector<EigenPair> eigensystem(const Geometry& g, IterationKind which) {
  using namespace std::complex_literals;
  const double half = 1.0 / std::sqrt(2.0);

  if (which == IterationKind::Global) {
    const auto sizes = class_sizes(g);
    const double rest = static_cast<double>(g.n_items - 1);
    const double w_ntt = std::sqrt(sizes.target_block_rest / rest);
    const double w_nb = std::sqrt(sizes.outside / rest);
    const auto lambda = std::polar(1.0, 2.0 * g.theta1);
    return {
        {lambda, {half, 1i * half * w_ntt, 1i * half * w_nb}},
        {std::conj(lambda), {half, -1i * half * w_ntt, -1i * half * w_nb}},
    };
  }

  if (g.block_size < 2) {
    throw Error(ErrorKind::Degenerate, "local iteration has no |ntt> component when b = 1");
  }
  const auto lambda = std::polar(1.0, 2.0 * g.theta2);
  return {
      {lambda, {half, 1i * half, 0.0}},
      {std::conj(lambda), {half, -1i * half, 0.0}},
  };
}

}  // namespace pgs
