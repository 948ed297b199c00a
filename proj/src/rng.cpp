#include "exsched/rng.hpp"

#include <cmath>
#include <numbers>

namespace exsched {

double normal_draw(std::uint64_t seed, std::uint64_t stream,
                   std::uint64_t replicate, std::uint64_t t) {
  // Box-Muller on two dedicated sub-draws; fixed consumption keeps the
  // mapping (key -> value) stateless.
  const double u1 = uniform01(counter_hash(seed, stream, replicate, t, 0));
  const double u2 = uniform01(counter_hash(seed, stream, replicate, t, 1));
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double binary_draw(std::uint64_t seed, std::uint64_t stream,
                   std::uint64_t replicate, std::uint64_t t) {
  const std::uint64_t h = counter_hash(seed, stream, replicate, t, 0);
  return (h >> 63) ? 1.0 : -1.0;
}

NoiseBank build_noise_bank(std::uint64_t master_seed, std::size_t n_mc, std::size_t horizon) {
  NoiseBank bank;
  bank.n_mc = n_mc;
  bank.horizon = horizon;
  bank.master_seed = master_seed;
  bank.e.resize(n_mc * (horizon + 1));
  bank.alpha_gauss.resize(n_mc * horizon);
  bank.alpha_binary.resize(n_mc * horizon);
  const auto e_id = static_cast<std::uint64_t>(NoiseStream::measurement);
  const auto g_id = static_cast<std::uint64_t>(NoiseStream::gaussian_base);
  const auto b_id = static_cast<std::uint64_t>(NoiseStream::binary_base);
  for (std::size_t r = 0; r < n_mc; ++r) {
    for (std::size_t t = 0; t <= horizon; ++t)
      bank.e[r * (horizon + 1) + t] = normal_draw(master_seed, e_id, r, t);
    for (std::size_t t = 1; t <= horizon; ++t) {
      bank.alpha_gauss[r * horizon + (t - 1)] = normal_draw(master_seed, g_id, r, t);
      bank.alpha_binary[r * horizon + (t - 1)] = binary_draw(master_seed, b_id, r, t);
    }
  }
  return bank;
}

double pairwise_sum(std::span<const double> values) {
  if (values.size() <= 32) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

} // namespace exsched
