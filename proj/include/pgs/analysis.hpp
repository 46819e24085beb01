#pragma once

// Query-cost comparisons and bounds for partial search. Coefficients are
// per sqrt(N): a cost of x sqrt(N) queries is reported as x.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pgs/model.hpp"
#include "pgs/optimizer.hpp"

namespace pgs {

// Full search of K-1 randomly chosen blocks: (pi/4) sqrt((K-1)/K).
double random_pick_coefficient(std::uint64_t n_blocks);
// Large-K form pi/4 - pi/(8K).
double random_pick_expansion(std::uint64_t n_blocks);

// pi/4 + (alpha_K - eta_K)/sqrt(K).
double partial_search_coefficient(std::uint64_t n_blocks);

// Target-item probability when only the leading global iterations run:
// (K-2)^2 / (K(K-1)).
double interrupted_probability(std::uint64_t n_blocks);

struct OperatingRange {
  std::uint64_t k_min = 3;
  BlockCount k_max = BlockCount::infinite();        // exact integer scan
  BlockCount k_max_large_k = BlockCount::infinite();  // floor(3 / (1 - p))
};

/// Range of K for which the interrupted version stays below p_threshold.
/// Throws InvalidArgument unless 0 < p_threshold < 1.
OperatingRange operating_range(double p_threshold);

/// Distance of the schedule's final state from sin(alpha_K)|t> + cos(alpha_K)|ntt>:
/// max of the target error, the ntt error and the non-target weight amplitude.
double final_state_deviation(const Geometry& g, const Schedule& sch);

// (alpha_K / 2) sqrt(b).
double effective_local_iterations(BlockCount n_blocks, std::uint64_t block_size);

enum class BoundVariant { Basic, Tighter, AlphaExact };

BoundVariant parse_bound_variant(std::string_view name);  // throws BadVariant
std::string_view to_string(BoundVariant v) noexcept;

double lower_bound_queries(const Geometry& g, BoundVariant variant);

struct ComparisonRow {
  std::uint64_t n_blocks = 0;
  double s_coeff = 0.0;
  double r_coeff = 0.0;
  double p_interrupted = 0.0;
  double c = 0.0;
  std::string note;
};

// Value printed for S_4 in the literature; the optimum table implies ~0.6155.
inline constexpr double kPrintedS4 = 0.586;

/// One row per K in [k_first, k_last], ordered by K. When n_items is given,
/// rows whose K does not divide it are annotated.
std::vector<ComparisonRow> comparison_table(std::optional<std::uint64_t> n_items,
                                            std::uint64_t k_first, std::uint64_t k_last);

ComparisonRow comparison_row(std::uint64_t n_blocks, std::optional<std::uint64_t> n_items = {});

}  // namespace pgs
