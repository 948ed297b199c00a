#pragma once
// Weighted-least-squares parameter estimator for measurement maps that are
// linear in theta (h = theta * phi(u)), together with the accumulated
// Fisher information. For Gaussian noise this is the MLE; with inputs
// fixed in advance it is unbiased and attains the Cramer-Rao bound, which
// is the idealization the design formulas rely on.

#include "exsched/model.hpp"

namespace exsched {

struct EstimatorState {
  double theta_hat = 0.0; // current estimate
  double info = 0.0;      // accumulated Fisher information
  double s_num = 0.0;     // running sum of phi(u) * y
  double s_den = 0.0;     // running sum of phi(u)^2
  double sigma2 = 1.0;    // noise variance used in the information accounting
};

// One identification experiment at input u_init with the supplied noise
// realization. Throws std::invalid_argument when the input yields a zero
// information increment (phi(u_init) == 0).
EstimatorState init_experiment(const SystemModel& model, double u_init, double noise);

// Functional update with one (u, y) pair. theta_hat = s_num / s_den and the
// information grows by phi(u)^2 / sigma2; a zero regressor leaves the state
// unchanged. Information is tracked with the realized inputs, not their
// design-time expectations.
EstimatorState update(const SystemModel& model, const EstimatorState& state, double u, double y);

// 1 / info, the idealized value of E[(theta_hat - theta0)^2]. Throws when
// info is not positive.
double estimate_variance_bound(const EstimatorState& state);

} // namespace exsched
