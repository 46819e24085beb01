#pragma once

#include <cstdint>
#include <string>
#include <utility>

#include "pgs/model.hpp"

namespace pgs {

/// Number of blocks K, or the K -> infinity limit.
class BlockCount {
 public:
  constexpr BlockCount(std::uint64_t k) : k_(k) {}  // NOLINT(google-explicit-constructor)
  static constexpr BlockCount infinite() { return BlockCount(); }

  constexpr bool is_infinite() const noexcept { return infinite_; }
  // 0 for the infinite sentinel.
  constexpr std::uint64_t value() const noexcept { return k_; }

  std::string to_string() const { return infinite_ ? "inf" : std::to_string(k_); }

  friend constexpr bool operator==(BlockCount, BlockCount) = default;

 private:
  constexpr BlockCount() : k_(0), infinite_(true) {}
  std::uint64_t k_;
  bool infinite_ = false;
};

struct OptimalParameters {
  double alpha = 0.0;  // local iterations j2 = alpha sqrt(b)
  double eta = 0.0;    // global deficit j1 = pi sqrt(N)/4 - eta sqrt(b)
  double c = 0.0;      // eta - alpha
  BlockCount n_blocks = BlockCount::infinite();
};

/// Optimum of the large-block query count for K blocks. Throws BadK for K < 2.
OptimalParameters asymptotic_optimum(BlockCount n_blocks);

/// eta satisfying the large-block vanishing constraint for a given alpha,
/// principal branch 2 eta / sqrt(K) in (0, pi).
double eta_from_alpha(std::uint64_t n_blocks, double alpha);

struct Expansion {
  double alpha = 0.0;
  double eta = 0.0;
};

/// Second-order large-K series for (alpha_K, eta_K). Only accurate for large K;
/// the K = 2 value is returned as-is.
Expansion asymptotic_expansion(BlockCount n_blocks);

/// Rounded large-block schedule with the trailing global iteration; j1 is
/// clamped at 0. Rounding is half-to-even. Throws BadK for K < 2.
Schedule asymptotic_schedule(const Geometry& g);

/// LHS - RHS of the printed finite-N vanishing condition, evaluated verbatim.
double vanishing_residual(const Geometry& g, std::uint64_t j1, std::uint64_t j2);

struct SearchRange {
  std::uint64_t j1_max = 0;
  std::uint64_t j2_max = 0;
};

// j1 in [0, ceil(pi sqrt(N)/4)], j2 in [0, ceil(pi sqrt(b)/2)].
SearchRange exact_search_range(const Geometry& g);

/// Cheapest schedule G1 G2^j2 G1^j1 whose block success reaches the
/// threshold; ties prefer smaller j2, then smaller j1. The j1 rows are split
/// across `threads` workers (0 = default from PGS_THREADS or the hardware);
/// the result does not depend on the thread count.
/// Throws Infeasible, BadK, InvalidArgument.
Schedule optimal_exact_schedule(const Geometry& g, double success_threshold,
                                unsigned threads = 0);

inline constexpr double kDefaultSuccessThreshold = 0.99;

/// Worker count from PGS_THREADS, else hardware concurrency (at least 1).
unsigned default_thread_count();

}  // namespace pgs
