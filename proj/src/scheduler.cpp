#include "exsched/scheduler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace exsched {

std::pair<double, bool> immediate_condition(const InformationFunction& ifn, double i0,
                                            std::size_t horizon) {
  if (horizon < 2) throw std::invalid_argument("immediate_condition: horizon must be >= 2");
  if (!(i0 > 0.0)) throw std::invalid_argument("immediate_condition: i0 must be positive");
  const double d0 = ifn.deriv(0.0);
  const double i_at_0 = ifn.eval(0.0);
  double sum = 0.0;
  for (std::size_t t = 1; t + 1 <= horizon; ++t) {
    const double den = i0 + static_cast<double>(t) * i_at_0;
    sum += d0 / (den * den);
  }
  return {sum, sum > 1.0};
}

namespace {

// Objective restricted to immediate schedules: every step after the first
// contributes i(0), the first contributes i(x1).
struct ImmediateObjective {
  const InformationFunction& ifn;
  double i0;
  std::size_t horizon;
  double i_at_0;

  double value(double x1) const {
    const double ix = ifn.eval(x1);
    double total = x1;
    double acc = i0 + ix;
    for (std::size_t t = 1; t + 1 <= horizon; ++t) {
      total += 1.0 / acc;
      acc += i_at_0;
    }
    return total;
  }

  double slope(double x1) const {
    const double ix = ifn.eval(x1);
    double s = 0.0;
    double acc = i0 + ix;
    for (std::size_t t = 1; t + 1 <= horizon; ++t) {
      s += 1.0 / (acc * acc);
      acc += i_at_0;
    }
    return 1.0 - ifn.deriv(x1) * s;
  }
};

double golden_min(const ImmediateObjective& g, double a, double b) {
  constexpr double inv_phi = 0.6180339887498949;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = g.value(x1);
  double f2 = g.value(x2);
  while (b - a > 1e-12 * std::max(1.0, std::abs(a) + std::abs(b))) {
    if (f1 <= f2) {
      b = x2; x2 = x1; f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = g.value(x1);
    } else {
      a = x1; x1 = x2; f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = g.value(x2);
    }
  }
  return 0.5 * (a + b);
}

// Bisection on the analytic slope; requires slope(lo) < 0 <= slope(hi).
double polish_stationary(const ImmediateObjective& g, double lo, double hi) {
  for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (g.slope(mid) < 0.0) lo = mid; else hi = mid;
  }
  return 0.5 * (lo + hi);
}

} // namespace

ScheduleSolution optimize_schedule(const InformationFunction& ifn, double i0,
                                   std::size_t horizon, double x_max) {
  if (horizon < 2) throw std::invalid_argument("optimize_schedule: horizon must be >= 2");
  if (!(i0 > 0.0)) throw std::invalid_argument("optimize_schedule: i0 must be positive");
  if (!(x_max > 0.0)) throw std::invalid_argument("optimize_schedule: x_max must be positive");

  const ImmediateObjective g{ifn, i0, horizon, ifn.eval(0.0)};
  const auto [cond, cond_holds] = immediate_condition(ifn, i0, horizon);

  // Scan {0} plus a 301-point log grid up to x_max.
  constexpr int kScanPoints = 301;
  std::vector<double> xs;
  xs.reserve(kScanPoints + 1);
  xs.push_back(0.0);
  const double lo_exp = -9.0;
  const double hi_exp = std::log10(x_max);
  for (int k = 0; k < kScanPoints; ++k)
    xs.push_back(std::pow(10.0, lo_exp + (hi_exp - lo_exp) * k / (kScanPoints - 1)));

  std::size_t best = 0;
  double best_val = g.value(xs[0]);
  for (std::size_t k = 1; k < xs.size(); ++k) {
    const double v = g.value(xs[k]);
    if (v < best_val) { best_val = v; best = k; }
  }

  // Refine around the scan winner (or below the scan resolution when the
  // condition certifies that the optimum is interior). The analytic slope
  // lets a bisection land exactly on the stationary point, which keeps the
  // first multiplier at zero.
  double x1 = xs[best];
  double val = best_val;
  if (best > 0 || cond_holds) {
    double lo = best > 0 ? xs[best - 1] : 0.0;
    double hi = best + 1 < xs.size() ? xs[best + 1] : x_max;
    if (g.slope(lo) >= 0.0) {
      // A local maximum sits between lo and the winner; golden-section
      // isolates the descending side first.
      const double xg = golden_min(g, lo, hi);
      const double w = std::max(1e-9, 1e-3 * (hi - lo));
      lo = std::max(lo, xg - w);
      hi = std::min(hi, xg + w);
    }
    if (g.slope(lo) < 0.0) {
      while (hi < x_max && g.slope(hi) < 0.0) hi = std::min(x_max, 2.0 * hi + 1e-12);
      x1 = g.slope(hi) >= 0.0 ? polish_stationary(g, lo, hi) : x_max;
    } else {
      x1 = golden_min(g, best > 0 ? xs[best - 1] : 0.0, hi);
    }
    val = g.value(x1);
    // Keep the scan winner if refinement regressed; never hand a zero back
    // when the refinement ran because the condition certified an interior
    // optimum below the scan resolution.
    if (best > 0 && best_val < val) { x1 = xs[best]; val = best_val; }
  }

  ScheduleSolution sol;
  sol.condition_lhs = cond;
  const double lazy_val = g.value(0.0);
  // Ties prefer the cheaper action and sub-resolution variances count as
  // zero, except when the sufficient condition certifies that an immediate
  // schedule is strictly better; then the classification follows it.
  const bool prefer_lazy = lazy_val <= val + 1e-12 || x1 < 1e-9;
  if (prefer_lazy && !cond_holds) {
    sol.kind = ScheduleKind::lazy;
    sol.x1 = 0.0;
    sol.bound_value = 1.0 / i0 + lazy_val;
  } else {
    sol.kind = ScheduleKind::immediate;
    sol.x1 = x1;
    sol.bound_value = 1.0 / i0 + val;
    sol.hit_upper_bracket = x1 >= x_max * (1.0 - 1e-6);
  }
  std::vector<double> schedule(horizon - 1, 0.0);
  schedule[0] = sol.x1;
  sol.kkt_residuals = kkt_certificate(ifn, i0, schedule, horizon);
  return sol;
}

std::vector<double> kkt_certificate(const InformationFunction& ifn, double i0,
                                    std::span<const double> x, std::size_t horizon) {
  if (horizon < 2 || x.size() != horizon - 1)
    throw std::invalid_argument("kkt_certificate: schedule length must be T-1");
  const std::size_t n = x.size();
  // inv_sq[t] = 1 / (i0 + sum_{s<=t+1} i(x_s))^2, then suffix-summed.
  std::vector<double> suffix(n + 1, 0.0);
  double acc = i0;
  std::vector<double> inv_sq(n);
  for (std::size_t t = 0; t < n; ++t) {
    acc += ifn.eval(x[t]);
    inv_sq[t] = 1.0 / (acc * acc);
  }
  for (std::size_t t = n; t-- > 0;) suffix[t] = suffix[t + 1] + inv_sq[t];
  std::vector<double> lambda(n);
  for (std::size_t k = 0; k < n; ++k) lambda[k] = 1.0 - ifn.deriv(x[k]) * suffix[k];
  return lambda;
}

double kkt_lambda_max_violation(std::span<const double> lambda) {
  double worst = 0.0;
  for (double l : lambda) worst = std::max(worst, -l);
  return worst;
}

BruteForceResult brute_force_verify(const InformationFunction& ifn, double i0,
                                    std::size_t horizon, std::span<const double> grid,
                                    std::size_t max_evaluations) {
  if (horizon < 3 || horizon > 5)
    throw std::invalid_argument("brute_force_verify: horizon must be 3, 4 or 5");
  if (grid.empty() || std::find(grid.begin(), grid.end(), 0.0) == grid.end())
    throw std::invalid_argument("brute_force_verify: grid must contain 0");
  const std::size_t n = horizon - 1;
  double total_d = 1.0;
  for (std::size_t k = 0; k < n; ++k) total_d *= static_cast<double>(grid.size());
  if (total_d > static_cast<double>(max_evaluations))
    throw budget_exceeded("brute_force_verify: grid exceeds the evaluation budget");

  std::vector<double> i_vals(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) {
    if (grid[j] < 0.0)
      throw std::invalid_argument("brute_force_verify: grid values must be nonnegative");
    i_vals[j] = ifn.eval(grid[j]);
  }

  std::vector<std::size_t> idx(n, 0);
  std::vector<std::size_t> best_idx(n, 0);
  double best = std::numeric_limits<double>::infinity();
  std::size_t evals = 0;
  while (true) {
    double acc = i0;
    double cost = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      acc += i_vals[idx[k]];
      cost += 1.0 / acc + grid[idx[k]];
    }
    ++evals;
    if (cost < best) {
      best = cost;
      best_idx = idx;
    }
    // Odometer with x1 as the most significant digit.
    std::size_t k = n;
    while (k-- > 0) {
      if (++idx[k] < grid.size()) break;
      idx[k] = 0;
      if (k == 0) { k = SIZE_MAX; break; }
    }
    if (k == SIZE_MAX) break;
  }

  BruteForceResult res;
  res.argmin.resize(n);
  for (std::size_t k = 0; k < n; ++k) res.argmin[k] = grid[best_idx[k]];
  res.min_bound = 1.0 / i0 + best;
  res.tail_zero = std::all_of(res.argmin.begin() + 1, res.argmin.end(),
                              [](double v) { return v == 0.0; });
  res.nonincreasing = std::is_sorted(res.argmin.rbegin(), res.argmin.rend());
  res.evaluations = evals;
  const double x_hi = *std::max_element(grid.begin(), grid.end());
  res.gap_to_optimizer =
      res.min_bound -
      optimize_schedule(ifn, i0, horizon, std::max(1.0, 2.0 * x_hi)).bound_value;
  return res;
}

} // namespace exsched
