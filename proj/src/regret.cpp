#include "exsched/regret.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "exsched/rng.hpp"

namespace exsched {

const char* strategy_name(Strategy s) {
  switch (s) {
    case Strategy::Lazy: return "lazy";
    case Strategy::ImmediateGaussian: return "immediate_gaussian";
    case Strategy::ImmediateBinary: return "immediate_binary";
    case Strategy::DecayingGaussian: return "decaying_gaussian";
    case Strategy::Explicit: return "explicit";
  }
  return "unknown";
}

ExplorationSchedule lazy_schedule(std::size_t horizon) {
  ExplorationSchedule s;
  s.variances.assign(horizon, 0.0);
  s.strategy = Strategy::Lazy;
  return s;
}

ExplorationSchedule immediate_schedule(std::size_t horizon, double x1, InfoFamily family) {
  if (x1 < 0.0) throw std::invalid_argument("immediate_schedule: x1 must be nonnegative");
  ExplorationSchedule s;
  s.variances.assign(horizon, 0.0);
  if (horizon > 0) s.variances[0] = x1;
  s.strategy = family == InfoFamily::binary ? Strategy::ImmediateBinary
                                            : Strategy::ImmediateGaussian;
  s.base_family = family;
  s.x1 = x1;
  return s;
}

ExplorationSchedule decaying_schedule(std::size_t horizon, double c, double p) {
  if (c < 0.0) throw std::invalid_argument("decaying_schedule: c must be nonnegative");
  if (!(p < 0.0)) throw std::invalid_argument("decaying_schedule: p must be negative");
  ExplorationSchedule s;
  s.variances.resize(horizon);
  for (std::size_t t = 1; t <= horizon; ++t)
    s.variances[t - 1] = c * std::pow(static_cast<double>(t), p);
  s.strategy = Strategy::DecayingGaussian;
  s.base_family = InfoFamily::gaussian;
  s.c = c;
  s.p = p;
  return s;
}

ExplorationSchedule explicit_schedule(std::vector<double> variances, InfoFamily family) {
  for (double v : variances)
    if (v < 0.0) throw std::invalid_argument("explicit_schedule: variances must be nonnegative");
  ExplorationSchedule s;
  s.variances = std::move(variances);
  s.strategy = Strategy::Explicit;
  s.base_family = family;
  return s;
}

namespace {

void check_schedule_args(double i0, std::span<const double> x, std::size_t horizon,
                         const char* who) {
  if (!(i0 > 0.0)) throw std::invalid_argument(std::string(who) + ": i0 must be positive");
  if (horizon < 2) throw std::invalid_argument(std::string(who) + ": horizon must be >= 2");
  if (x.size() != horizon - 1 && x.size() != horizon)
    throw std::invalid_argument(std::string(who) + ": schedule length must be T-1 or T");
  for (double v : x)
    if (v < 0.0 || !std::isfinite(v))
      throw std::invalid_argument(std::string(who) + ": variances must be nonnegative");
}

} // namespace

double regret_upper_bound(const InformationFunction& ifn, double i0,
                          std::span<const double> x, std::size_t horizon) {
  check_schedule_args(i0, x, horizon, "regret_upper_bound");
  double total = 1.0 / i0;
  double info = i0;
  for (std::size_t t = 1; t + 1 <= horizon; ++t) {
    info += ifn.eval(x[t - 1]);
    total += 1.0 / info;
  }
  for (double v : x) total += v;
  return total;
}

double regret_approx(InfoFamily family, double u0_star, double i0,
                     std::span<const double> x, std::size_t horizon, double sigma2) {
  check_schedule_args(i0, x, horizon, "regret_approx");
  if (!(sigma2 > 0.0)) throw std::invalid_argument("regret_approx: sigma2 must be positive");
  double total = 1.0 / i0;
  double info = i0;
  for (std::size_t t = 1; t + 1 <= horizon; ++t) {
    info += full_incremental_info(family, u0_star, x[t - 1], 1.0 / info) / sigma2;
    total += 1.0 / info;
  }
  for (double v : x) total += v;
  return total;
}

EmpiricalRegret empirical_regret(const std::vector<std::vector<double>>& input_sequences,
                                 const SystemModel& model) {
  if (input_sequences.empty())
    throw std::invalid_argument("empirical_regret: replicate set is empty");
  const std::size_t horizon = input_sequences.front().size();
  const std::size_t n = input_sequences.size();
  const double phi_star = model.cost(model.u0_star(), model.theta0);

  // cum[r * T + t] = cumulative regret of replicate r up to step t+1.
  std::vector<double> cum(n * horizon);
  for (std::size_t r = 0; r < n; ++r) {
    const auto& row = input_sequences[r];
    if (row.size() != horizon)
      throw std::invalid_argument("empirical_regret: ragged replicate lengths");
    double acc = 0.0;
    for (std::size_t t = 0; t < horizon; ++t) {
      acc += model.cost(row[t], model.theta0) - phi_star;
      cum[r * horizon + t] = acc;
    }
  }

  EmpiricalRegret out;
  out.trajectory.resize(horizon);
  out.traj_stderr.resize(horizon);
  std::vector<double> col(n);
  const double dn = static_cast<double>(n);
  for (std::size_t t = 0; t < horizon; ++t) {
    for (std::size_t r = 0; r < n; ++r) col[r] = cum[r * horizon + t];
    const double mean = pairwise_sum(col) / dn;
    out.trajectory[t] = mean;
    if (n > 1) {
      std::vector<double> sq(n);
      for (std::size_t r = 0; r < n; ++r) sq[r] = (col[r] - mean) * (col[r] - mean);
      out.traj_stderr[t] = std::sqrt(pairwise_sum(sq) / (dn * (dn - 1.0)));
    }
  }
  out.mean = out.trajectory.back();
  out.std_error = out.traj_stderr.back();
  return out;
}

} // namespace exsched
