#include "exsched/estimator.hpp"

#include <stdexcept>

namespace exsched {

EstimatorState init_experiment(const SystemModel& model, double u_init, double noise) {
  const double phi = model.measurement_dtheta(u_init, 0.0);
  if (phi == 0.0)
    throw std::invalid_argument("init_experiment: input carries no information");
  const double y = measure(model, u_init, noise);
  EstimatorState s;
  s.sigma2 = model.sigma2;
  s.s_num = phi * y;
  s.s_den = phi * phi;
  s.theta_hat = s.s_num / s.s_den;
  s.info = s.s_den / s.sigma2;
  return s;
}

EstimatorState update(const SystemModel& model, const EstimatorState& state, double u, double y) {
  const double phi = model.measurement_dtheta(u, state.theta_hat);
  if (phi == 0.0) return state;
  EstimatorState s = state;
  s.s_num += phi * y;
  s.s_den += phi * phi;
  s.theta_hat = s.s_num / s.s_den;
  s.info += phi * phi / s.sigma2;
  return s;
}

double estimate_variance_bound(const EstimatorState& state) {
  if (!(state.info > 0.0))
    throw std::invalid_argument("estimate_variance_bound: information must be positive");
  return 1.0 / state.info;
}

} // namespace exsched
