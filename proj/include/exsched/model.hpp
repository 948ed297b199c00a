#pragma once
// Scalar system under optimization: cost Phi(u, theta), measurement map
// h(u, theta), optimal-input map U(theta) and the sensitivities entering
// the regret expansion. Values are immutable after construction and safe
// to share across concurrent simulation replicates.

#include <functional>

namespace exsched {

struct SystemModel {
  double theta0 = 0.0; // true parameter (known to the simulator only)
  double sigma2 = 1.0; // measurement-noise variance

  std::function<double(double, double)> cost;               // Phi(u, theta)
  std::function<double(double, double)> measurement;        // h(u, theta)
  std::function<double(double, double)> measurement_dtheta; // dh/dtheta
  std::function<double(double)> optimal_input_map;          // U(theta)

  double j_theta = 0.0; // dU/dtheta at theta0
  double h_u = 0.0;     // d2Phi/du2 at u0*, assumed > 0

  double u0_star() const { return optimal_input_map(theta0); }
};

// The quadratic instance: Phi(u,theta) = u^2 + 2(theta+1)u, h = theta u^2,
// U(theta) = -(theta+1), j_theta = -1, h_u = 2. Throws std::invalid_argument
// if sigma2 <= 0.
SystemModel quadratic_example(double theta0, double sigma2);

double optimal_input(const SystemModel& model, double theta);

// h(u, theta0) + noise. Noise realizations are injected by the caller;
// the model never owns an RNG.
double measure(const SystemModel& model, double u, double noise);

// Phi(u, theta0) - Phi(u0*, theta0); nonnegative by optimality of u0*.
double instantaneous_regret(const SystemModel& model, double u);

// Central-difference sensitivities for user-supplied models that do not
// come with analytic j_theta / h_u (step 1e-6).
double fd_j_theta(const SystemModel& model);
double fd_h_u(const SystemModel& model);

// d(Phi)/du at (u, theta) by central differences; used to probe that
// U(theta) is a stationary point.
double fd_cost_slope(const SystemModel& model, double u, double theta);

} // namespace exsched
