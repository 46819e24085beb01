#pragma once

// Full N-amplitude simulation of partial search. Blocks are the contiguous
// index ranges [m*b, (m+1)*b); for N = 2^n and K = 2^k the block index is the
// top k bits of the item index.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "pgs/model.hpp"

namespace pgs {

inline constexpr std::uint64_t kDefaultAmplitudeCap = std::uint64_t{1} << 24;

class FullState {
 public:
  FullState(const Geometry& g, std::uint64_t target_index, std::vector<double> amplitudes);

  const Geometry& geometry() const noexcept { return geometry_; }
  std::uint64_t target_index() const noexcept { return target_; }
  std::uint64_t target_block() const noexcept { return target_ / geometry_.block_size; }

  std::span<const double> amplitudes() const noexcept { return amplitudes_; }
  std::span<double> amplitudes() noexcept { return amplitudes_; }

  double norm_squared() const;

  // In-place kernels; the free functions below wrap these with value semantics.
  void apply_oracle() noexcept;
  void apply_global_diffusion() noexcept;
  void apply_local_diffusion() noexcept;

 private:
  Geometry geometry_;
  std::uint64_t target_;
  std::vector<double> amplitudes_;
};

// Throws CapExceeded when N > cap and BadIndex for a target outside [0, N).
FullState sv_uniform(const Geometry& g, std::uint64_t target_index,
                     std::uint64_t cap = kDefaultAmplitudeCap);

FullState sv_apply_oracle(FullState s);
FullState sv_apply_global_diffusion(FullState s);
FullState sv_apply_local_diffusion(FullState s);

FullState sv_run_schedule(const Geometry& g, std::uint64_t target_index, const Schedule& sch,
                          std::uint64_t cap = kDefaultAmplitudeCap);

struct Reduction {
  ReducedState state;
  double coherence_residual = 0.0;  // max deviation from the class representative
};

Reduction sv_reduce(const FullState& s);

std::vector<double> measure_block_distribution(const FullState& s);

// Binary dump: "PGSV", u32 version, u64 N, u64 K, u64 target index, then N
// little-endian doubles.
inline constexpr std::uint32_t kStateFormatVersion = 1;

void write_state(std::ostream& out, const FullState& s);
void write_state(const std::filesystem::path& path, const FullState& s);
FullState read_state(std::istream& in);

}  // namespace pgs
