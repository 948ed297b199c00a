#include "exsched/infofn.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "exsched/rng.hpp"

namespace exsched {

InformationFunction gaussian_info(double u0_star, double sigma2) {
  if (!(sigma2 > 0.0)) throw std::invalid_argument("gaussian_info: sigma2 must be positive");
  const double q = u0_star * u0_star;
  InformationFunction f;
  f.family = InfoFamily::gaussian;
  f.u0_star_sq = q;
  f.eval = [q, sigma2](double x) { return (3.0 * x * x + 6.0 * q * x + q * q) / sigma2; };
  f.deriv = [q, sigma2](double x) { return (6.0 * x + 6.0 * q) / sigma2; };
  return f;
}

InformationFunction binary_info(double u0_star, double sigma2) {
  if (!(sigma2 > 0.0)) throw std::invalid_argument("binary_info: sigma2 must be positive");
  const double q = u0_star * u0_star;
  InformationFunction f;
  f.family = InfoFamily::binary;
  f.u0_star_sq = q;
  f.eval = [q, sigma2](double x) { return (x * x + 6.0 * q * x + q * q) / sigma2; };
  f.deriv = [q, sigma2](double x) { return (2.0 * x + 6.0 * q) / sigma2; };
  return f;
}

bool satisfies_info_assumptions(const InformationFunction& ifn) {
  // Log grid over [1e-6, 1e3] plus the origin; tolerances absorb roundoff
  // in user-supplied closures.
  std::vector<double> grid{0.0};
  for (int k = 0; k <= 90; ++k) grid.push_back(std::pow(10.0, -6.0 + 9.0 * k / 90.0));
  double prev_deriv = -1e300;
  for (double x : grid) {
    const double v = ifn.eval(x);
    const double d = ifn.deriv(x);
    if (!(v >= -1e-12) || !std::isfinite(v)) return false;
    if (!(d >= -1e-12) || !std::isfinite(d)) return false;
    if (d < prev_deriv - 1e-9 * std::max(1.0, std::abs(prev_deriv))) return false;
    prev_deriv = d;
  }
  return true;
}

InformationFunction custom_info(std::function<double(double)> eval,
                                std::function<double(double)> deriv) {
  InformationFunction f;
  f.family = InfoFamily::custom;
  f.eval = std::move(eval);
  f.deriv = std::move(deriv);
  if (!satisfies_info_assumptions(f))
    throw std::invalid_argument(
        "custom_info: function must be nonnegative, increasing and convex on [0, inf)");
  return f;
}

InformationFunction exploration_only(const InformationFunction& ifn) {
  InformationFunction f = ifn;
  const double base = ifn.eval(0.0);
  auto inner = ifn.eval;
  f.eval = [inner, base](double x) { return inner(x) - base; };
  return f;
}

double full_incremental_info(InfoFamily family, double u0_star, double x, double info_inv) {
  if (x < 0.0 || info_inv < 0.0)
    throw std::invalid_argument("full_incremental_info: arguments must be nonnegative");
  if (family == InfoFamily::custom)
    throw std::invalid_argument("full_incremental_info: closed form exists only for the shipped families");
  const double q = u0_star * u0_star;
  const double a = info_inv;
  const double x2_coeff = (family == InfoFamily::gaussian) ? 3.0 : 1.0;
  return x2_coeff * x * x + (6.0 * a + 6.0 * q) * x + 3.0 * a * a + 6.0 * q * a + q * q;
}

std::pair<double, double> moment_expansion_check(InfoFamily family, double u0_star, double x,
                                                 double info_inv, std::size_t n_samples,
                                                 std::uint64_t seed) {
  if (n_samples < 10000)
    throw std::invalid_argument("moment_expansion_check: need at least 1e4 samples");
  const double analytic = full_incremental_info(family, u0_star, x, info_inv);
  const double sd = std::sqrt(info_inv);
  const double sx = std::sqrt(x);
  const auto aux = static_cast<std::uint64_t>(NoiseStream::aux);
  const std::size_t pairs = n_samples / 4; // 4 antithetic evaluations per draw pair
  std::vector<double> acc(pairs);
  for (std::size_t k = 0; k < pairs; ++k) {
    const double d = sd * normal_draw(seed, aux, k, 0);
    const double b = (family == InfoFamily::gaussian) ? normal_draw(seed, aux, k, 1)
                                                      : binary_draw(seed, aux, k, 1);
    const double a = sx * b;
    double s = 0.0;
    for (double u : {u0_star + d + a, u0_star + d - a, u0_star - d + a, u0_star - d - a})
      s += u * u * u * u;
    acc[k] = 0.25 * s;
  }
  const double mc = pairwise_sum(acc) / static_cast<double>(pairs);
  return {analytic, mc};
}

} // namespace exsched
