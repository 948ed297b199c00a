#include "exsched/model.hpp"

#include <stdexcept>

namespace exsched {

SystemModel quadratic_example(double theta0, double sigma2) {
  if (!(sigma2 > 0.0))
    throw std::invalid_argument("quadratic_example: sigma2 must be positive");
  SystemModel m;
  m.theta0 = theta0;
  m.sigma2 = sigma2;
  m.cost = [](double u, double theta) { return u * u + 2.0 * (theta + 1.0) * u; };
  m.measurement = [](double u, double theta) { return theta * u * u; };
  m.measurement_dtheta = [](double u, double) { return u * u; };
  m.optimal_input_map = [](double theta) { return -(theta + 1.0); };
  m.j_theta = -1.0;
  m.h_u = 2.0;
  return m;
}

double optimal_input(const SystemModel& model, double theta) {
  return model.optimal_input_map(theta);
}

double measure(const SystemModel& model, double u, double noise) {
  return model.measurement(u, model.theta0) + noise;
}

double instantaneous_regret(const SystemModel& model, double u) {
  return model.cost(u, model.theta0) - model.cost(model.u0_star(), model.theta0);
}

namespace {
constexpr double kFdStep = 1e-6;
}

double fd_j_theta(const SystemModel& model) {
  const double t = model.theta0;
  return (model.optimal_input_map(t + kFdStep) - model.optimal_input_map(t - kFdStep)) /
         (2.0 * kFdStep);
}

double fd_h_u(const SystemModel& model) {
  const double u = model.u0_star();
  const double t = model.theta0;
  return (model.cost(u + kFdStep, t) - 2.0 * model.cost(u, t) + model.cost(u - kFdStep, t)) /
         (kFdStep * kFdStep);
}

double fd_cost_slope(const SystemModel& model, double u, double theta) {
  return (model.cost(u + kFdStep, theta) - model.cost(u - kFdStep, theta)) / (2.0 * kFdStep);
}

} // namespace exsched
