#include "pgs/statevector.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

namespace pgs {

namespace {

double sum_of(std::span<const double> xs) {
  double acc = 0.0;
  for (double x : xs) acc += x;
  return acc;
}

// Reflect xs about their mean: x -> 2 mean - x.
void reflect_about_mean(std::span<double> xs) {
  const double twice_mean = 2.0 * sum_of(xs) / static_cast<double>(xs.size());
  for (double& x : xs) x = twice_mean - x;
}

template <typename T>
void put_le(std::ostream& out, T value) {
  static_assert(std::is_trivially_copyable_v<T>);
  std::array<char, sizeof(T)> bytes;
  std::memcpy(bytes.data(), &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) {
    std::reverse(bytes.begin(), bytes.end());
  }
  out.write(bytes.data(), bytes.size());
}

template <typename T>
T get_le(std::istream& in) {
  std::array<char, sizeof(T)> bytes;
  if (!in.read(bytes.data(), bytes.size())) {
    throw Error(ErrorKind::Io, "truncated PGSV stream");
  }
  if constexpr (std::endian::native == std::endian::big) {
    std::reverse(bytes.begin(), bytes.end());
  }
  T value;
  std::memcpy(&value, bytes.data(), sizeof(T));
  return value;
}

constexpr std::array<char, 4> kMagic = {'P', 'G', 'S', 'V'};

}  // namespace

FullState::FullState(const Geometry& g, std::uint64_t target_index, std::vector<double> amplitudes)
    : geometry_(g), target_(target_index), amplitudes_(std::move(amplitudes)) {
  if (target_index >= g.n_items) {
    throw Error(ErrorKind::BadIndex, "target index " + std::to_string(target_index) +
                                         " outside [0, " + std::to_string(g.n_items) + ")");
  }
  if (amplitudes_.size() != g.n_items) {
    throw Error(ErrorKind::BadIndex, "amplitude count does not match N");
  }
}

double FullState::norm_squared() const {
  double acc = 0.0;
  for (double a : amplitudes_) acc += a * a;
  return acc;
}

void FullState::apply_oracle() noexcept { amplitudes_[target_] = -amplitudes_[target_]; }

void FullState::apply_global_diffusion() noexcept { reflect_about_mean(amplitudes_); }

void FullState::apply_local_diffusion() noexcept {
  const std::span<double> all(amplitudes_);
  const std::uint64_t b = geometry_.block_size;
  for (std::uint64_t m = 0; m < geometry_.n_blocks; ++m) {
    reflect_about_mean(all.subspan(m * b, b));
  }
}

FullState sv_uniform(const Geometry& g, std::uint64_t target_index, std::uint64_t cap) {
  if (g.n_items > cap) {
    throw Error(ErrorKind::CapExceeded, "N = " + std::to_string(g.n_items) +
                                            " exceeds the amplitude cap " + std::to_string(cap));
  }
  if (target_index >= g.n_items) {
    throw Error(ErrorKind::BadIndex, "target index " + std::to_string(target_index) +
                                         " outside [0, " + std::to_string(g.n_items) + ")");
  }
  const double a = 1.0 / std::sqrt(static_cast<double>(g.n_items));
  return FullState(g, target_index, std::vector<double>(g.n_items, a));
}

FullState sv_apply_oracle(FullState s) {
  s.apply_oracle();
  return s;
}

FullState sv_apply_global_diffusion(FullState s) {
  s.apply_global_diffusion();
  return s;
}

FullState sv_apply_local_diffusion(FullState s) {
  s.apply_local_diffusion();
  return s;
}

FullState sv_run_schedule(const Geometry& g, std::uint64_t target_index, const Schedule& sch,
                          std::uint64_t cap) {
  FullState s = sv_uniform(g, target_index, cap);
  for (std::uint64_t i = 0; i < sch.j1; ++i) {
    s.apply_oracle();
    s.apply_global_diffusion();
  }
  for (std::uint64_t i = 0; i < sch.j2; ++i) {
    s.apply_oracle();
    s.apply_local_diffusion();
  }
  if (sch.trailing_global) {
    s.apply_oracle();
    s.apply_global_diffusion();
  }
  return s;
}

Reduction sv_reduce(const FullState& s) {
  const auto amps = s.amplitudes();
  const Geometry& g = s.geometry();
  const std::uint64_t t = s.target_index();
  const std::uint64_t first = s.target_block() * g.block_size;
  const std::uint64_t last = first + g.block_size;

  // Representatives: first member of each class, 0 for an empty class.
  double ntt = 0.0;
  bool have_ntt = false;
  double nb = 0.0;
  bool have_nb = false;
  for (std::uint64_t i = 0; i < amps.size() && !(have_ntt && have_nb); ++i) {
    if (i == t) continue;
    const bool inside = i >= first && i < last;
    if (inside && !have_ntt) {
      ntt = amps[i];
      have_ntt = true;
    } else if (!inside && !have_nb) {
      nb = amps[i];
      have_nb = true;
    }
  }

  double residual = 0.0;
  for (std::uint64_t i = 0; i < amps.size(); ++i) {
    if (i == t) continue;
    const double rep = (i >= first && i < last) ? ntt : nb;
    residual = std::max(residual, std::abs(amps[i] - rep));
  }
  return {{amps[t], ntt, nb}, residual};
}

std::vector<double> measure_block_distribution(const FullState& s) {
  const Geometry& g = s.geometry();
  const auto amps = s.amplitudes();
  std::vector<double> probs(g.n_blocks, 0.0);
  for (std::uint64_t m = 0; m < g.n_blocks; ++m) {
    double acc = 0.0;
    for (double a : amps.subspan(m * g.block_size, g.block_size)) acc += a * a;
    probs[m] = acc;
  }
  return probs;
}

void write_state(std::ostream& out, const FullState& s) {
  out.write(kMagic.data(), kMagic.size());
  put_le<std::uint32_t>(out, kStateFormatVersion);
  put_le<std::uint64_t>(out, s.geometry().n_items);
  put_le<std::uint64_t>(out, s.geometry().n_blocks);
  put_le<std::uint64_t>(out, s.target_index());
  for (double a : s.amplitudes()) put_le<double>(out, a);
  if (!out) throw Error(ErrorKind::Io, "failed writing PGSV stream");
}

void write_state(const std::filesystem::path& path, const FullState& s) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Io, "cannot open " + path.string());
  write_state(out, s);
}

FullState read_state(std::istream& in) {
  std::array<char, 4> magic;
  if (!in.read(magic.data(), magic.size()) || magic != kMagic) {
    throw Error(ErrorKind::Io, "not a PGSV stream");
  }
  const auto version = get_le<std::uint32_t>(in);
  if (version != kStateFormatVersion) {
    throw Error(ErrorKind::Io, "unsupported PGSV version " + std::to_string(version));
  }
  const auto n = get_le<std::uint64_t>(in);
  const auto k = get_le<std::uint64_t>(in);
  const auto target = get_le<std::uint64_t>(in);
  const Geometry g = make_geometry(n, k);
  std::vector<double> amps(n);
  for (double& a : amps) a = get_le<double>(in);
  return FullState(g, target, std::move(amps));
}

}  // namespace pgs
