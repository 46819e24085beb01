#include "pgs/optimizer.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdio>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace pgs {

namespace {

using std::numbers::pi;

void require_at_least_two(BlockCount k) {
  if (!k.is_infinite() && k.value() < 2) {
    throw Error(ErrorKind::BadK, "need K >= 2, got " + k.to_string());
  }
}

// Half-to-even under the default floating-point environment.
std::uint64_t round_count(double x) {
  const double r = std::nearbyint(x);
  return r <= 0.0 ? 0 : static_cast<std::uint64_t>(r);
}

}  // namespace

OptimalParameters asymptotic_optimum(BlockCount n_blocks) {
  require_at_least_two(n_blocks);
  OptimalParameters p;
  p.n_blocks = n_blocks;
  if (n_blocks.is_infinite()) {
    p.alpha = pi / 6.0;
    p.eta = std::sqrt(3.0) / 2.0;
  } else {
    const double k = static_cast<double>(n_blocks.value());
    p.alpha = 0.5 * std::acos((k - 2.0) / (2.0 * (k - 1.0)));
    p.eta = 0.5 * std::sqrt(k) * std::atan2(std::sqrt(3.0 * k - 4.0), k - 2.0);
  }
  p.c = p.eta - p.alpha;
  return p;
}

double eta_from_alpha(std::uint64_t n_blocks, double alpha) {
  const double k = static_cast<double>(n_blocks);
  const double root_k = std::sqrt(k);
  const double s = std::sin(alpha);
  return 0.5 * root_k * std::atan2(2.0 * root_k * std::sin(2.0 * alpha), k - 4.0 * s * s);
}

Expansion asymptotic_expansion(BlockCount n_blocks) {
  require_at_least_two(n_blocks);
  const double root3 = std::sqrt(3.0);
  if (n_blocks.is_infinite()) {
    return {pi / 6.0, root3 / 2.0};
  }
  const double k = static_cast<double>(n_blocks.value());
  const double first = 1.0 / (2.0 * root3 * k);
  return {pi / 6.0 + first + 5.0 * root3 / ((6.0 * k) * (6.0 * k)),
          root3 / 2.0 + first + 11.0 * root3 / (90.0 * k * k)};
}

Schedule asymptotic_schedule(const Geometry& g) {
  require_at_least_two(g.n_blocks);
  const auto opt = asymptotic_optimum(g.n_blocks);
  const double root_n = std::sqrt(static_cast<double>(g.n_items));
  const double root_b = std::sqrt(static_cast<double>(g.block_size));
  const std::uint64_t j1 = round_count(pi * root_n / 4.0 - opt.eta * root_b);
  const std::uint64_t j2 = round_count(opt.alpha * root_b);
  return make_schedule(j1, j2, true);
}

double vanishing_residual(const Geometry& g, std::uint64_t j1, std::uint64_t j2) {
  const double n = static_cast<double>(g.n_items);
  const double k = static_cast<double>(g.n_blocks);
  const double b = static_cast<double>(g.block_size);
  const double x = (2.0 * static_cast<double>(j1) + 1.0) * g.theta1;
  const double y = 2.0 * static_cast<double>(j2) * g.theta2;
  const double root_rest = std::sqrt(n - 1.0);

  const double lhs = (-n / root_rest) * (0.5 - 1.0 / k) * std::cos(x);
  const double rhs = std::cos(y) * std::sin(x) +
                     std::sqrt((b - 1.0) / (n - 1.0)) * std::sin(y) * std::cos(x) -
                     std::sqrt(b - 1.0) * std::sin(y) * std::sin(x) +
                     ((b - 1.0) / root_rest) * std::cos(y) * std::cos(x);
  return lhs - rhs;
}

SearchRange exact_search_range(const Geometry& g) {
  const double root_n = std::sqrt(static_cast<double>(g.n_items));
  const double root_b = std::sqrt(static_cast<double>(g.block_size));
  return {static_cast<std::uint64_t>(std::ceil(pi * root_n / 4.0)),
          static_cast<std::uint64_t>(std::ceil(pi * root_b / 2.0))};
}

unsigned default_thread_count() {
  if (const char* env = std::getenv("PGS_THREADS"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

Schedule optimal_exact_schedule(const Geometry& g, double success_threshold, unsigned threads) {
  require_at_least_two(g.n_blocks);
  if (!(success_threshold > 0.0 && success_threshold < 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "success threshold must lie in (0, 1)");
  }
  const SearchRange range = exact_search_range(g);

  // State after j1 global iterations, for every j1 in range.
  std::vector<ReducedState> after_globals;
  after_globals.reserve(range.j1_max + 1);
  after_globals.push_back(uniform_state(g));
  for (std::uint64_t j1 = 1; j1 <= range.j1_max; ++j1) {
    after_globals.push_back(apply_global(after_globals.back(), g));
  }

  // Within a row the first passing j2 is the row's best: queries grow with j2.
  std::vector<std::optional<std::uint64_t>> row_best(range.j1_max + 1);
  auto scan_row = [&](std::uint64_t j1) {
    ReducedState s = after_globals[j1];
    for (std::uint64_t j2 = 0; j2 <= range.j2_max; ++j2) {
      if (j2 > 0) s = apply_local(s, g);
      if (block_success_probability(apply_global(s, g), g) >= success_threshold) {
        row_best[j1] = j2;
        return;
      }
    }
  };

  if (threads == 0) threads = default_thread_count();
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, range.j1_max + 1));
  if (threads <= 1) {
    for (std::uint64_t j1 = 0; j1 <= range.j1_max; ++j1) scan_row(j1);
  } else {
    std::atomic<std::uint64_t> next{0};
    std::vector<std::jthread> workers;
    workers.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) {
      workers.emplace_back([&] {
        for (std::uint64_t j1 = next++; j1 <= range.j1_max; j1 = next++) scan_row(j1);
      });
    }
  }

  std::optional<Schedule> best;
  for (std::uint64_t j1 = 0; j1 <= range.j1_max; ++j1) {
    if (!row_best[j1]) continue;
    const Schedule cand = make_schedule(j1, *row_best[j1], true);
    if (!best || cand.queries < best->queries ||
        (cand.queries == best->queries && cand.j2 < best->j2)) {
      best = cand;
    }
  }
  if (!best) {
    std::array<char, 32> buf;
    std::snprintf(buf.data(), buf.size(), "%.17g", success_threshold);
    const std::string threshold_text(buf.data());
    throw Error(ErrorKind::Infeasible,
                "no schedule with j1 <= " + std::to_string(range.j1_max) + ", j2 <= " +
                    std::to_string(range.j2_max) + " reaches block success " +
                    threshold_text);
  }
  return *best;
}

}  // namespace pgs
