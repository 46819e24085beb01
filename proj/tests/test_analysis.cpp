#include <cmath>
#include <numbers>

#include <doctest.h>

#include "pgs/analysis.hpp"

using namespace pgs;
using std::numbers::pi;

TEST_CASE("random_pick_coefficient") {
  CHECK(std::abs(random_pick_coefficient(3) - 0.641) <= 5e-4);
  CHECK(std::abs(random_pick_coefficient(4) - 0.68) <= 5e-3);
  CHECK(random_pick_coefficient(2) == doctest::Approx(pi / (4 * std::sqrt(2.0))).epsilon(1e-15));
  CHECK(std::abs(random_pick_coefficient(2) - partial_search_coefficient(2)) <= 1e-12);
  CHECK_THROWS_AS(random_pick_coefficient(1), Error);
}

TEST_CASE("random_pick_expansion") {
  for (std::uint64_t k : {100, 1000, 10000}) {
    const double kk = static_cast<double>(k);
    CHECK(std::abs(random_pick_expansion(k) - random_pick_coefficient(k)) <= 1.0 / (kk * kk));
  }
}

TEST_CASE("partial_search_coefficient") {
  CHECK(std::abs(partial_search_coefficient(3) - 0.5908) <= 5e-4);
  CHECK(std::abs(partial_search_coefficient(3) - 0.59) <= 5e-3);
  CHECK(std::abs(partial_search_coefficient(5) - 0.6329) <= 5e-4);
  // Table-consistent value, not the printed 0.586.
  CHECK(std::abs(partial_search_coefficient(4) - 0.6155) <= 5e-4);
  CHECK(std::abs(partial_search_coefficient(4) - (pi / 4 - 0.3398 / 2)) <= 5e-4);
  CHECK(std::abs(partial_search_coefficient(4) - kPrintedS4) > 0.02);
  CHECK_THROWS_AS(partial_search_coefficient(1), Error);
}

TEST_CASE("interrupted_probability") {
  CHECK(interrupted_probability(2) == 0.0);
  CHECK(interrupted_probability(30) == doctest::Approx(784.0 / 870.0).epsilon(1e-15));
  for (std::uint64_t k = 2; k < 1000; ++k) {
    CHECK(interrupted_probability(k + 1) > interrupted_probability(k));
  }
  for (std::uint64_t k : {100, 1000, 10000}) {
    const double kk = static_cast<double>(k);
    CHECK(std::abs(interrupted_probability(k) - (1 - 3 / kk)) <= 3.0 / (kk * kk));
  }
  CHECK_THROWS_AS(interrupted_probability(0), Error);
}

TEST_CASE("operating_range") {
  const auto r = operating_range(0.9);
  CHECK(r.k_min == 3);
  CHECK(r.k_max_large_k == BlockCount(30));
  // Integer scan oracle.
  std::uint64_t scan = 2;
  while (interrupted_probability(scan + 1) <= 0.9) ++scan;
  CHECK(r.k_max == BlockCount(scan));
  CHECK(scan == 29);

  for (double p : {0.5, 0.75, 0.99, 0.999}) {
    std::uint64_t k = 2;
    while (interrupted_probability(k + 1) <= p) ++k;
    CHECK(operating_range(p).k_max == BlockCount(k));
  }

  CHECK_FALSE(operating_range(0.9999).k_max.is_infinite());
  const auto limit = operating_range(std::nextafter(1.0, 0.0));
  CHECK(limit.k_max_large_k.is_infinite());
  CHECK(limit.k_max.is_infinite());

  CHECK_THROWS_AS(operating_range(0.0), Error);
  CHECK_THROWS_AS(operating_range(1.0), Error);
}

TEST_CASE("final_state_deviation") {
  const std::uint64_t b = std::uint64_t{1} << 14;
  const Geometry g4 = make_geometry(4 * b, 4);
  const ReducedState d = run_schedule(g4, asymptotic_schedule(g4));
  CHECK(std::abs(d.amp_target - 1.0 / std::sqrt(3.0)) <= 0.02);
  CHECK(final_state_deviation(g4, asymptotic_schedule(g4)) <= 0.05);

  const Geometry g2 = make_geometry(2 * b, 2);
  const auto j2 = static_cast<std::uint64_t>(std::nearbyint(pi * std::sqrt(double(b)) / 4));
  const ReducedState d2 = run_schedule(g2, make_schedule(0, j2, false));
  CHECK(std::abs(d2.amp_target - std::sqrt(2.0) / 2) <= 0.01);

  const double empty = final_state_deviation(g4, make_schedule(0, 0, false));
  MESSAGE("deviation of the uniform state: " << empty);
  CHECK(empty > 0.5);

  CHECK_THROWS_AS(final_state_deviation(make_geometry(64, 1), make_schedule(1, 1, true)), Error);
}

TEST_CASE("property: final state converges with block size") {
  double prev = 1.0;
  for (int lb : {8, 10, 12, 14}) {
    const std::uint64_t b = std::uint64_t{1} << lb;
    const Geometry g = make_geometry(4 * b, 4);
    const double dev = final_state_deviation(g, asymptotic_schedule(g));
    MESSAGE("b=2^" << lb << " deviation " << dev);
    CHECK(dev <= prev + 1e-3);
    prev = dev;
  }
}

TEST_CASE("effective_local_iterations") {
  CHECK(std::abs(effective_local_iterations(4, 256) - 4.923837669363099) <= 1e-12);
  CHECK(std::abs(effective_local_iterations(BlockCount::infinite(), 10000) - 26.17993877991494) <=
        1e-12);
  CHECK_THROWS_AS(effective_local_iterations(1, 256), Error);

}

namespace {

// Target amplitude after round(j_e) local iterations from the block-uniform state.
double effective_target(std::uint64_t k, std::uint64_t b) {
  const Geometry g = make_geometry(k * b, k);
  const auto j = static_cast<std::uint64_t>(std::nearbyint(effective_local_iterations(k, b)));
  const double a = 1.0 / std::sqrt(static_cast<double>(b));
  ReducedState s{a, a, 0.0};
  for (std::uint64_t i = 0; i < j; ++i) s = apply_local(s, g);
  return s.amp_target;
}

}  // namespace

TEST_CASE("effective_local_iterations: reproduces the final target amplitude") {
  // sin((2j+1) theta2) differs from sin(alpha) by at most (1 + 2|j - j_e|) theta2 <= 2/sqrt(b).
  for (std::uint64_t k : {3, 4, 8}) {
    for (std::uint64_t b : {256, 1024, 4096, 65536}) {
      CAPTURE(k);
      CAPTURE(b);
      const double err = std::abs(effective_target(k, b) - std::sin(asymptotic_optimum(k).alpha));
      CHECK(err <= 2.0 / std::sqrt(static_cast<double>(b)));
      if (b >= 1024) CHECK(err <= 0.05);
    }
  }
}

TEST_CASE("effective_local_iterations: 0.05 agreement already at b=256" * doctest::may_fail()) {
  for (std::uint64_t k : {3, 4, 8}) {
    const double err = std::abs(effective_target(k, 256) - std::sin(asymptotic_optimum(k).alpha));
    MESSAGE("K=" << k << " b=256 error " << err);
    CHECK(err <= 0.05);
  }
}

TEST_CASE("lower_bound_queries") {
  const Geometry g = make_geometry(1024, 4);
  CHECK(std::abs(lower_bound_queries(g, BoundVariant::Basic) - 12.566370614359172) <= 1e-12);
  CHECK(std::abs(lower_bound_queries(g, BoundVariant::Tighter) - 16.755160819145562) <= 1e-12);
  CHECK(std::abs(lower_bound_queries(g, BoundVariant::AlphaExact) - 17.490208283722272) <= 1e-12);
  CHECK(asymptotic_schedule(g).queries >= lower_bound_queries(g, BoundVariant::Tighter));

  CHECK(parse_bound_variant("alpha_exact") == BoundVariant::AlphaExact);
  CHECK(to_string(BoundVariant::Tighter) == "tighter");
  try {
    (void)parse_bound_variant("loose");
    FAIL("expected BadVariant");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::BadVariant);
  }
}

TEST_CASE("property: bound ordering") {
  const std::uint64_t b = std::uint64_t{1} << 16;
  for (std::uint64_t k = 3; k <= 100; ++k) {
    const Geometry g = make_geometry(k * b, k);
    const double basic = lower_bound_queries(g, BoundVariant::Basic);
    const double tighter = lower_bound_queries(g, BoundVariant::Tighter);
    const double exact = lower_bound_queries(g, BoundVariant::AlphaExact);
    CHECK(basic <= tighter);
    CHECK(tighter <= exact);
  }
}

TEST_CASE("comparison_table") {
  const auto rows = comparison_table(std::nullopt, 2, 30);
  REQUIRE(rows.size() == 29);
  CHECK(rows.front().n_blocks == 2);
  CHECK(std::abs(rows[0].s_coeff - rows[0].r_coeff) <= 1e-12);
  CHECK(std::abs(rows[0].s_coeff - 0.5554) <= 5e-4);
  CHECK(std::abs(rows[1].s_coeff - 0.5908) <= 5e-4);
  CHECK(std::abs(rows[1].r_coeff - 0.6409) <= 5e-4);
  CHECK(rows[2].note.find("0.586") != std::string::npos);
  CHECK(rows[1].note.empty());
  CHECK(std::abs(rows.back().p_interrupted - 0.901) <= 5e-4);
  for (const auto& r : rows) {
    CHECK(r.r_coeff == doctest::Approx(pi / 4 * std::sqrt((r.n_blocks - 1.0) / r.n_blocks)));
    CHECK(r.p_interrupted >= 0.0);
    CHECK(r.p_interrupted < 1.0);
  }

  const auto annotated = comparison_table(std::uint64_t{1024}, 2, 5);
  CHECK(annotated[1].note == "K does not divide N");
  CHECK(annotated[2].note.find("0.586") != std::string::npos);
  CHECK(annotated[0].note.empty());

  CHECK_THROWS_AS(comparison_table(std::nullopt, 1, 5), Error);
  CHECK_THROWS_AS(comparison_table(std::nullopt, 2, 2'000'000), Error);
}

TEST_CASE("property: partial search beats random pick from K=3") {
  for (std::uint64_t k = 3; k <= 10000; ++k) {
    REQUIRE(partial_search_coefficient(k) < random_pick_coefficient(k));
  }
}

TEST_CASE("property: interrupted run reproduces the closed form") {
  for (std::uint64_t k : {4, 8, 16}) {
    const Geometry g = make_geometry(k << 14, k);
    const Schedule s = asymptotic_schedule(g);
    const double p = item_success_probability(run_schedule(g, make_schedule(s.j1, 0, false)));
    CHECK(std::abs(p - interrupted_probability(k)) <= 0.01);
  }
}
