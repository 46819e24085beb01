#include "pgs/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace pgs {

namespace {

using std::numbers::pi;

void require_at_least_two(std::uint64_t k) {
  if (k < 2) throw Error(ErrorKind::BadK, "need K >= 2, got " + std::to_string(k));
}

double interrupted_probability_unchecked(double k) {
  return ((k - 2.0) / k) * ((k - 2.0) / (k - 1.0));
}

BlockCount finite_or_infinite(double k) {
  if (!std::isfinite(k) || k >= static_cast<double>(kMaxExactItems)) {
    return BlockCount::infinite();
  }
  return BlockCount(static_cast<std::uint64_t>(k));
}

}  // namespace

double random_pick_coefficient(std::uint64_t n_blocks) {
  require_at_least_two(n_blocks);
  const double k = static_cast<double>(n_blocks);
  return pi / 4.0 * std::sqrt((k - 1.0) / k);
}

double random_pick_expansion(std::uint64_t n_blocks) {
  require_at_least_two(n_blocks);
  return pi / 4.0 - pi / (8.0 * static_cast<double>(n_blocks));
}

double partial_search_coefficient(std::uint64_t n_blocks) {
  const auto opt = asymptotic_optimum(n_blocks);
  return pi / 4.0 + (opt.alpha - opt.eta) / std::sqrt(static_cast<double>(n_blocks));
}

double interrupted_probability(std::uint64_t n_blocks) {
  require_at_least_two(n_blocks);
  return interrupted_probability_unchecked(static_cast<double>(n_blocks));
}

OperatingRange operating_range(double p_threshold) {
  if (!(p_threshold > 0.0 && p_threshold < 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "probability threshold must lie in (0, 1)");
  }
  const double p = p_threshold;
  OperatingRange range;
  range.k_max_large_k = finite_or_infinite(std::floor(3.0 / (1.0 - p)));

  // (K-2)^2 <= p K (K-1)  <=>  (1-p) K^2 - (4-p) K + 4 <= 0; take the upper root.
  const double upper = (4.0 - p + std::sqrt(p * p + 8.0 * p)) / (2.0 * (1.0 - p));
  const BlockCount approx = finite_or_infinite(std::floor(upper));
  if (approx.is_infinite()) {
    range.k_max = approx;
    return range;
  }
  std::uint64_t k = std::max<std::uint64_t>(approx.value(), 2);
  while (interrupted_probability_unchecked(static_cast<double>(k + 1)) <= p) ++k;
  while (k > 2 && interrupted_probability_unchecked(static_cast<double>(k)) > p) --k;
  range.k_max = BlockCount(k);
  return range;
}

double final_state_deviation(const Geometry& g, const Schedule& sch) {
  const auto opt = asymptotic_optimum(g.n_blocks);
  const ReducedState s = run_schedule(g, sch);
  const double rest = std::sqrt(static_cast<double>(g.block_size - 1));
  const double outside = std::sqrt(static_cast<double>(g.n_items - g.block_size));
  return std::max({std::abs(s.amp_target - std::sin(opt.alpha)),
                   std::abs(rest * s.amp_ntt - std::cos(opt.alpha)),
                   outside * std::abs(s.amp_nb)});
}

double effective_local_iterations(BlockCount n_blocks, std::uint64_t block_size) {
  if (block_size < 1) throw Error(ErrorKind::InvalidArgument, "block size must be positive");
  return asymptotic_optimum(n_blocks).alpha / 2.0 * std::sqrt(static_cast<double>(block_size));
}

BoundVariant parse_bound_variant(std::string_view name) {
  if (name == "basic") return BoundVariant::Basic;
  if (name == "tighter") return BoundVariant::Tighter;
  if (name == "alpha_exact") return BoundVariant::AlphaExact;
  throw Error(ErrorKind::BadVariant, "unknown bound variant '" + std::string(name) + "'");
}

std::string_view to_string(BoundVariant v) noexcept {
  switch (v) {
    case BoundVariant::Basic: return "basic";
    case BoundVariant::Tighter: return "tighter";
    case BoundVariant::AlphaExact: return "alpha_exact";
  }
  return "unknown";
}

double lower_bound_queries(const Geometry& g, BoundVariant variant) {
  const double full = pi / 4.0 * std::sqrt(static_cast<double>(g.n_items));
  const double root_b = std::sqrt(static_cast<double>(g.block_size));
  switch (variant) {
    case BoundVariant::Basic:
      return full - pi / 4.0 * root_b;
    case BoundVariant::Tighter:
      return full - pi / 6.0 * root_b;
    case BoundVariant::AlphaExact: {
      const double alpha = asymptotic_optimum(g.n_blocks).alpha;
      return full + (-pi / 4.0 + alpha / 2.0) * root_b;
    }
  }
  throw Error(ErrorKind::BadVariant, "unknown bound variant");
}

ComparisonRow comparison_row(std::uint64_t n_blocks, std::optional<std::uint64_t> n_items) {
  const auto opt = asymptotic_optimum(n_blocks);
  ComparisonRow row;
  row.n_blocks = n_blocks;
  row.s_coeff = partial_search_coefficient(n_blocks);
  row.r_coeff = random_pick_coefficient(n_blocks);
  row.p_interrupted = interrupted_probability(n_blocks);
  row.c = opt.c;

  std::vector<std::string> notes;
  if (n_blocks == 4) notes.emplace_back("printed S_4=0.586 is a suspected misprint");
  if (n_items && *n_items % n_blocks != 0) notes.emplace_back("K does not divide N");
  for (std::size_t i = 0; i < notes.size(); ++i) {
    if (i > 0) row.note += "; ";
    row.note += notes[i];
  }
  return row;
}

std::vector<ComparisonRow> comparison_table(std::optional<std::uint64_t> n_items,
                                            std::uint64_t k_first, std::uint64_t k_last) {
  constexpr std::uint64_t kLargestK = 1'000'000;
  if (k_first < 2 || k_last > kLargestK || k_first > k_last) {
    throw Error(ErrorKind::BadK, "K range must satisfy 2 <= first <= last <= 10^6");
  }
  std::vector<ComparisonRow> rows;
  rows.reserve(k_last - k_first + 1);
  for (std::uint64_t k = k_first; k <= k_last; ++k) rows.push_back(comparison_row(k, n_items));
  return rows;
}

}  // namespace pgs
