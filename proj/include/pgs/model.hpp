#pragma once

// Partial search dynamics restricted to the three-dimensional real subspace
// spanned by the target item, the rest of the target block, and the
// non-target blocks. Both iteration types leave this subspace invariant, so
// any database size representable in a double is supported.

#include <array>
#include <complex>
#include <cstdint>
#include <vector>

#include "pgs/error.hpp"

namespace pgs {

// Largest item count whose integer value converts to double without loss.
inline constexpr std::uint64_t kMaxExactItems = std::uint64_t{1} << 53;

struct Geometry {
  std::uint64_t n_items = 0;
  std::uint64_t n_blocks = 0;
  std::uint64_t block_size = 0;
  double theta1 = 0.0;  // sin^2 = 1/N
  double theta2 = 0.0;  // sin^2 = 1/b

  friend bool operator==(const Geometry&, const Geometry&) = default;
};

// Throws NonDivisible, TooSmall or Precision.
Geometry make_geometry(std::uint64_t n_items, std::uint64_t n_blocks);

/// Per-item amplitudes. Every item of a class carries the same value:
/// the target, each of the b-1 other target-block items, each of the N-b
/// items outside the target block.
struct ReducedState {
  double amp_target = 0.0;
  double amp_ntt = 0.0;
  double amp_nb = 0.0;

  friend bool operator==(const ReducedState&, const ReducedState&) = default;
};

/// Sum of squared per-item amplitudes weighted by class multiplicity.
double weighted_norm_squared(const ReducedState& s, const Geometry& g);

struct Schedule {
  std::uint64_t j1 = 0;
  std::uint64_t j2 = 0;
  bool trailing_global = true;
  std::uint64_t queries = 1;

  friend bool operator==(const Schedule&, const Schedule&) = default;
};

Schedule make_schedule(std::uint64_t j1, std::uint64_t j2, bool trailing_global);

ReducedState uniform_state(const Geometry& g);

// G1 = -I_{s1} I_t. One oracle query.
ReducedState apply_global(const ReducedState& s, const Geometry& g);

// G2 = -I_{s2} I_t applied blockwise. Non-target blocks are fixed points, so
// amp_nb is copied through. For b = 1 the target block is left untouched.
ReducedState apply_local(const ReducedState& s, const Geometry& g);

/// Counts iteration applications made by run_schedule.
struct QueryCounter {
  std::uint64_t global = 0;
  std::uint64_t local = 0;

  std::uint64_t total() const noexcept { return global + local; }
};

/// G1^{trailing} G2^{j2} G1^{j1} applied to the uniform state.
ReducedState run_schedule(const Geometry& g, const Schedule& sch);
ReducedState run_schedule(const Geometry& g, const Schedule& sch, QueryCounter& counter);

double block_success_probability(const ReducedState& s, const Geometry& g);
// Same quantity evaluated as 1 - (N-b) amp_nb^2.
double block_success_probability_complement(const ReducedState& s, const Geometry& g);
double item_success_probability(const ReducedState& s);

enum class IterationKind { Global, Local };

// Components are in the orthonormal basis (|t>, |ntt>, |nb>), where |ntt> and
// |nb> are the normalized uniform sums over their item classes.
using Vector3c = std::array<std::complex<double>, 3>;

struct EigenPair {
  std::complex<double> eigenvalue;
  Vector3c eigenvector;
};

/// The rotating pair of the chosen iteration: exp(+2i theta) first, then
/// exp(-2i theta). Throws Degenerate for the local iteration when b = 1.
std::vector<EigenPair> eigensystem(const Geometry& g, IterationKind which);

/// Applies the real iteration map to a complex vector in the orthonormal
/// basis used by eigensystem.
Vector3c apply_iteration(const Vector3c& v, const Geometry& g, IterationKind which);

}  // namespace pgs
