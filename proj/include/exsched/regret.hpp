#pragma once
// The three regret quantities for an exploration-variance schedule:
// empirical cumulative regret from simulated trajectories, the approximate
// regret through the information recursion, and its deterministic upper
// bound. Design formulas use the scaled-regret convention (the Hu/2 factor
// omitted), which for the quadratic instance equals the raw regret exactly;
// empirical regret always evaluates the true cost.

#include <span>
#include <vector>

#include "exsched/infofn.hpp"
#include "exsched/model.hpp"

namespace exsched {

enum class Strategy { Lazy, ImmediateGaussian, ImmediateBinary, DecayingGaussian, Explicit };

const char* strategy_name(Strategy s);

struct ExplorationSchedule {
  std::vector<double> variances; // x_1..x_T
  Strategy strategy = Strategy::Lazy;
  InfoFamily base_family = InfoFamily::gaussian; // distribution of the bases
  double x1 = 0.0;                               // immediate strategies
  double c = 0.0, p = 0.0;                       // decaying strategy
};

ExplorationSchedule lazy_schedule(std::size_t horizon);
// family selects the excitation distribution (gaussian or binary).
ExplorationSchedule immediate_schedule(std::size_t horizon, double x1, InfoFamily family);
// x_t = c * t^p with c >= 0 and p < 0.
ExplorationSchedule decaying_schedule(std::size_t horizon, double c, double p);
ExplorationSchedule explicit_schedule(std::vector<double> variances, InfoFamily family);

struct RegretReport {
  double empirical = 0.0;          // replicate mean of the cumulative regret
  double std_error = 0.0;          // standard error of that mean
  double approx = 0.0;             // information-recursion approximation
  double upper_bound = 0.0;        // deterministic bound
  std::vector<double> trajectory;  // mean cumulative regret vs t
  std::vector<double> traj_stderr; // per-t standard errors
};

// Deterministic bound: 1/i0 + sum_{t=1}^{T-1} 1/(i0 + sum_{s<=t} i(x_s))
// + sum x_t. x must have length T-1 (the final variance is forced to zero)
// or length T, in which case the trailing entry contributes only its linear
// cost. Throws on i0 <= 0, negative entries, or other lengths.
double regret_upper_bound(const InformationFunction& ifn, double i0,
                          std::span<const double> x, std::size_t horizon);

// Approximate regret via the recursion I_t = I_{t-1} + J(x_t, 1/I_{t-1})
// starting from i0, where J is the two-argument incremental information
// scaled by 1/sigma2. Same argument contract as regret_upper_bound.
double regret_approx(InfoFamily family, double u0_star, double i0,
                     std::span<const double> x, std::size_t horizon, double sigma2 = 1.0);

struct EmpiricalRegret {
  double mean = 0.0;
  double std_error = 0.0;
  std::vector<double> trajectory;
  std::vector<double> traj_stderr;
};

// Replicate-mean cumulative regret of recorded input sequences, plus the
// mean cumulative trajectory. Reduction is pairwise in replicate order.
// Throws on an empty replicate set or ragged rows.
EmpiricalRegret empirical_regret(const std::vector<std::vector<double>>& input_sequences,
                                 const SystemModel& model);

} // namespace exsched
