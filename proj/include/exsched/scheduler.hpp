#pragma once
// Minimizes the regret upper bound over exploration schedules. The optimum
// is provably lazy (all-zero) or immediate (first step only), which reduces
// the search to one dimension; the solver certifies its output with the
// first-order multipliers and a small-horizon exhaustive check.

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "exsched/infofn.hpp"

namespace exsched {

struct budget_exceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class ScheduleKind { lazy, immediate };

struct ScheduleSolution {
  ScheduleKind kind = ScheduleKind::lazy;
  double x1 = 0.0;            // first-step variance, 0 iff lazy
  double bound_value = 0.0;   // full upper bound at the solution
  double condition_lhs = 0.0; // left side of the immediate-excitation test
  std::vector<double> kkt_residuals;
  bool hit_upper_bracket = false; // minimizer sat at x_max; widen the bracket
};

// sum_{t=1}^{T-1} i'(0) / (i0 + t i(0))^2 and whether it exceeds 1, the
// sufficient condition for the optimal schedule to be immediate. Uses the
// right derivative at 0. Requires T >= 2, i0 > 0.
std::pair<double, bool> immediate_condition(const InformationFunction& ifn, double i0,
                                            std::size_t horizon);

// 1-D minimization of the bound over {lazy} and {immediate, x1 in (0, x_max]}:
// a 301-point log scan brackets the minimum, golden-section refines it, and a
// bisection on the analytic derivative polishes stationarity so the
// multipliers come out clean. Ties within 1e-12 classify as lazy, as does
// any x1 below 1e-9.
ScheduleSolution optimize_schedule(const InformationFunction& ifn, double i0,
                                   std::size_t horizon, double x_max = 100.0);

// Multipliers lambda_1..lambda_{T-1} of the nonnegativity constraints at a
// feasible schedule x (length T-1):
//   lambda_k = 1 - sum_{t=k}^{T-1} i'(x_k) / (i0 + sum_{s<=t} i(x_s))^2
double kkt_lambda_max_violation(std::span<const double> lambda);
std::vector<double> kkt_certificate(const InformationFunction& ifn, double i0,
                                    std::span<const double> x, std::size_t horizon);

struct BruteForceResult {
  std::vector<double> argmin;  // length T-1
  double min_bound = 0.0;      // full upper bound at the grid argmin
  bool tail_zero = false;      // entries 2..T-1 all zero
  bool nonincreasing = false;  // argmin sorted in descending order
  double gap_to_optimizer = 0.0; // min_bound - optimize_schedule bound
  std::size_t evaluations = 0;
};

// Exhaustive evaluation of the bound over grid^(T-1); T must be 3, 4 or 5
// and the grid must contain 0. Ties break toward the first point in
// enumeration order (x1 slowest), so parallel and serial runs agree.
// Throws budget_exceeded when grid^(T-1) > max_evaluations.
BruteForceResult brute_force_verify(const InformationFunction& ifn, double i0,
                                    std::size_t horizon, std::span<const double> grid,
                                    std::size_t max_evaluations = 100000000);

} // namespace exsched
