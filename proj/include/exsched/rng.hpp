#pragma once
// Counter-based random streams. Every draw is a pure function of
// (seed, stream, replicate, time, sub-index), so noise banks can be
// rebuilt bit-exactly and sliced across workers in any order.

#include <cstdint>
#include <span>
#include <vector>

namespace exsched {

// Stream ids used by the experiment harness.
enum class NoiseStream : std::uint64_t {
  measurement = 0,   // e_t, t = 0 is the initialization experiment
  gaussian_base = 1, // unit-variance Gaussian excitation bases
  binary_base = 2,   // +/-1 excitation bases
  aux = 3,           // scratch streams for self-tests
};

// splitmix64 finalizer (Steele/Lea/Flood mixing constants).
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Hash of the full counter tuple. Chained finalizers give full avalanche
// between the key words.
constexpr std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t stream,
                                     std::uint64_t replicate, std::uint64_t t,
                                     std::uint64_t sub = 0) {
  std::uint64_t h = mix64(seed);
  h = mix64(h ^ stream);
  h = mix64(h ^ replicate);
  h = mix64(h ^ t);
  h = mix64(h ^ sub);
  return h;
}

// Uniform draw in the open interval (0, 1); 53 mantissa bits.
constexpr double uniform01(std::uint64_t h) {
  return (static_cast<double>(h >> 11) + 0.5) * 0x1.0p-53;
}

double normal_draw(std::uint64_t seed, std::uint64_t stream,
                   std::uint64_t replicate, std::uint64_t t);

// Exactly -1 or +1, equiprobable.
double binary_draw(std::uint64_t seed, std::uint64_t stream,
                   std::uint64_t replicate, std::uint64_t t);

// Pre-materialized noise for one experiment. Row r holds replicate r;
// e has T+1 columns (column 0 feeds the initialization experiment),
// the excitation bases have T columns for t = 1..T.
struct NoiseBank {
  std::size_t n_mc = 0;
  std::size_t horizon = 0;
  std::uint64_t master_seed = 0;
  std::vector<double> e;            // n_mc x (T+1)
  std::vector<double> alpha_gauss;  // n_mc x T
  std::vector<double> alpha_binary; // n_mc x T

  const double* e_row(std::size_t r) const { return e.data() + r * (horizon + 1); }
  const double* gauss_row(std::size_t r) const { return alpha_gauss.data() + r * horizon; }
  const double* binary_row(std::size_t r) const { return alpha_binary.data() + r * horizon; }
};

NoiseBank build_noise_bank(std::uint64_t master_seed, std::size_t n_mc, std::size_t horizon);

// Deterministic pairwise (cascade) summation; the result depends only on
// the element order, never on how work was split between threads.
double pairwise_sum(std::span<const double> values);

} // namespace exsched
