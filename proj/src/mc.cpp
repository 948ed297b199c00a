#include "exsched/mc.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <thread>

namespace exsched {

std::vector<double> GridSpec::points() const {
  std::vector<double> out(count);
  if (count == 1) {
    out[0] = lo;
    return out;
  }
  const double llo = std::log10(lo), lhi = std::log10(hi);
  for (std::size_t j = 0; j < count; ++j)
    out[j] = std::pow(10.0, llo + (lhi - llo) * static_cast<double>(j) /
                                static_cast<double>(count - 1));
  return out;
}

std::vector<double> ExponentGridSpec::points() const {
  // Log spacing is defined on the magnitudes; the grid runs from the
  // smallest magnitude (hi) to the largest (lo).
  std::vector<double> out(count);
  if (count == 1) {
    out[0] = hi;
    return out;
  }
  const double m_lo = std::log10(-hi), m_hi = std::log10(-lo);
  for (std::size_t j = 0; j < count; ++j)
    out[j] = -std::pow(10.0, m_lo + (m_hi - m_lo) * static_cast<double>(j) /
                                 static_cast<double>(count - 1));
  return out;
}

void ExperimentConfig::validate() const {
  if (theta0_list.empty()) throw std::invalid_argument("config.theta0_list: must be nonempty");
  if (horizon < 2) throw std::invalid_argument("config.horizon: must be >= 2");
  if (!(sigma2 > 0.0)) throw std::invalid_argument("config.sigma2: must be positive");
  if (n_mc < 1) throw std::invalid_argument("config.n_mc: must be >= 1");
  if (constants_grid.count < 1) throw std::invalid_argument("config.constants_grid.count: must be >= 1");
  if (!(constants_grid.lo > 0.0))
    throw std::invalid_argument("config.constants_grid.lo: must be positive (log spacing)");
  if (constants_grid.count > 1 && !(constants_grid.lo < constants_grid.hi))
    throw std::invalid_argument("config.constants_grid: lo must be < hi");
  if (exponent_grid.count < 1) throw std::invalid_argument("config.exponent_grid.count: must be >= 1");
  if (!(exponent_grid.lo < 0.0) || !(exponent_grid.hi < 0.0))
    throw std::invalid_argument("config.exponent_grid: exponents must be negative");
  if (exponent_grid.count > 1 && !(exponent_grid.lo < exponent_grid.hi))
    throw std::invalid_argument("config.exponent_grid: lo must be < hi");
  if (init_input == 0.0) throw std::invalid_argument("config.init_input: must be nonzero");
  if (i0_override && !(*i0_override > 0.0))
    throw std::invalid_argument("config.i0_override: must be positive");
  if (fig_trajectory_index >= theta0_list.size())
    throw std::invalid_argument("config.fig_trajectory_index: out of range");
}

namespace detail {

// Shared hot path. inputs_out / cum_out may be null.
inline double simulate_replicate(const SystemModel& model, std::span<const double> variances,
                                 const double* e, const double* alpha, double init_input,
                                 double* inputs_out, double* cum_out) {
  EstimatorState st = init_experiment(model, init_input, e[0]);
  const double u_star = model.u0_star();
  const double phi_star = model.cost(u_star, model.theta0);
  double total = 0.0;
  const std::size_t horizon = variances.size();
  for (std::size_t t = 1; t <= horizon; ++t) {
    double u = model.optimal_input_map(st.theta_hat);
    const double x = variances[t - 1];
    if (x > 0.0 && alpha) u += std::sqrt(x) * alpha[t - 1];
    total += model.cost(u, model.theta0) - phi_star;
    const double y = model.measurement(u, model.theta0) + e[t];
    st = update(model, st, u, y);
    if (inputs_out) inputs_out[t - 1] = u;
    if (cum_out) cum_out[t - 1] = total;
  }
  return total;
}

} // namespace detail

ReplicateResult run_replicate(const SystemModel& model, const ExplorationSchedule& schedule,
                              const ReplicateNoise& noise, double init_input) {
  const std::size_t horizon = schedule.variances.size();
  ReplicateResult out;
  out.inputs.resize(horizon);
  std::vector<double> cum(horizon);
  detail::simulate_replicate(model, schedule.variances, noise.e, noise.alpha, init_input,
                             out.inputs.data(), cum.data());
  out.regrets.resize(horizon);
  for (std::size_t t = 0; t < horizon; ++t)
    out.regrets[t] = cum[t] - (t ? cum[t - 1] : 0.0);
  return out;
}

DesignContext make_design_context(const SystemModel& model, const ExperimentConfig& config,
                                  const NoiseBank& bank) {
  DesignContext ctx;
  const double phi = model.measurement_dtheta(config.init_input, 0.0);
  if (phi == 0.0)
    throw std::invalid_argument("make_design_context: init_input carries no information");
  if (config.oracle_design) {
    ctx.u0_star_design = model.u0_star();
  } else {
    // Certainty equivalence at design time: average the initialization
    // estimate over the bank.
    std::vector<double> est(bank.n_mc);
    for (std::size_t r = 0; r < bank.n_mc; ++r)
      est[r] = measure(model, config.init_input, bank.e_row(r)[0]) / phi;
    const double theta_hat = pairwise_sum(est) / static_cast<double>(bank.n_mc);
    ctx.u0_star_design = model.optimal_input_map(theta_hat);
  }
  const double j2 = model.j_theta * model.j_theta;
  ctx.i0 = config.i0_override ? *config.i0_override
                              : (phi * phi / model.sigma2) / j2;
  ctx.gaussian = gaussian_info(ctx.u0_star_design, model.sigma2);
  ctx.binary = binary_info(ctx.u0_star_design, model.sigma2);
  if (config.design_info == DesignInfo::exploration_only) {
    ctx.gaussian = exploration_only(ctx.gaussian);
    ctx.binary = exploration_only(ctx.binary);
  }
  return ctx;
}

namespace {

ExplorationSchedule build_schedule(Strategy strategy, const Tuning& tuning, std::size_t horizon) {
  switch (strategy) {
    case Strategy::Lazy:
      return lazy_schedule(horizon);
    case Strategy::ImmediateGaussian:
      return immediate_schedule(horizon, tuning.x, InfoFamily::gaussian);
    case Strategy::ImmediateBinary:
      return immediate_schedule(horizon, tuning.x, InfoFamily::binary);
    case Strategy::DecayingGaussian:
      return decaying_schedule(horizon, tuning.c, tuning.p);
    case Strategy::Explicit:
      throw std::invalid_argument("run_strategy: explicit schedules go through run_schedule");
  }
  throw std::invalid_argument("run_strategy: unknown strategy");
}

} // namespace

RegretReport run_schedule(const SystemModel& model, const ExplorationSchedule& schedule,
                          const ExperimentConfig& config, const NoiseBank& bank,
                          const DesignContext& design, int jobs, bool with_trajectory) {
  const std::size_t n = bank.n_mc;
  const std::size_t horizon = schedule.variances.size();
  if (horizon != bank.horizon)
    throw std::invalid_argument("run_schedule: schedule horizon does not match the bank");

  std::vector<double> totals(n);
  std::vector<double> cum;
  if (with_trajectory) cum.resize(n * horizon);

  auto worker = [&](std::size_t r_begin, std::size_t r_end) {
    for (std::size_t r = r_begin; r < r_end; ++r) {
      const double* alpha = schedule.base_family == InfoFamily::binary ? bank.binary_row(r)
                                                                       : bank.gauss_row(r);
      totals[r] = detail::simulate_replicate(model, schedule.variances, bank.e_row(r), alpha,
                                             config.init_input, nullptr,
                                             with_trajectory ? cum.data() + r * horizon : nullptr);
    }
  };

  const int n_jobs = std::max(1, jobs);
  if (n_jobs == 1 || n < 2 * static_cast<std::size_t>(n_jobs)) {
    worker(0, n);
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (n + n_jobs - 1) / n_jobs;
    for (int j = 0; j < n_jobs; ++j) {
      const std::size_t b = std::min(n, static_cast<std::size_t>(j) * chunk);
      const std::size_t e = std::min(n, b + chunk);
      if (b < e) pool.emplace_back(worker, b, e);
    }
    for (auto& th : pool) th.join();
  }

  RegretReport rep;
  const double dn = static_cast<double>(n);
  rep.empirical = pairwise_sum(totals) / dn;
  if (n > 1) {
    std::vector<double> sq(n);
    for (std::size_t r = 0; r < n; ++r)
      sq[r] = (totals[r] - rep.empirical) * (totals[r] - rep.empirical);
    rep.std_error = std::sqrt(pairwise_sum(sq) / (dn * (dn - 1.0)));
  }
  if (with_trajectory) {
    rep.trajectory.resize(horizon);
    rep.traj_stderr.resize(horizon);
    std::vector<double> col(n), sq(n);
    for (std::size_t t = 0; t < horizon; ++t) {
      for (std::size_t r = 0; r < n; ++r) col[r] = cum[r * horizon + t];
      const double mean = pairwise_sum(col) / dn;
      rep.trajectory[t] = mean;
      if (n > 1) {
        for (std::size_t r = 0; r < n; ++r) sq[r] = (col[r] - mean) * (col[r] - mean);
        rep.traj_stderr[t] = std::sqrt(pairwise_sum(sq) / (dn * (dn - 1.0)));
      }
    }
  }

  // Design-time quantities for the executed schedule (first T-1 variances;
  // the final one is forced to zero in the bound's derivation).
  const auto& ifn = schedule.base_family == InfoFamily::binary ? design.binary : design.gaussian;
  std::span<const double> head(schedule.variances.data(), horizon - 1);
  rep.upper_bound = regret_upper_bound(ifn, design.i0, head, horizon);
  const InfoFamily fam = schedule.base_family == InfoFamily::binary ? InfoFamily::binary
                                                                    : InfoFamily::gaussian;
  rep.approx = regret_approx(fam, design.u0_star_design, design.i0, head, horizon, model.sigma2);
  return rep;
}

RegretReport run_strategy(const SystemModel& model, Strategy strategy, const Tuning& tuning,
                          const ExperimentConfig& config, const NoiseBank& bank,
                          const DesignContext& design, int jobs, bool with_trajectory) {
  if (tuning.x < 0.0 || tuning.c < 0.0)
    throw std::invalid_argument("run_strategy: tuning constants must be nonnegative");
  const auto schedule = build_schedule(strategy, tuning, config.horizon);
  return run_schedule(model, schedule, config, bank, design, jobs, with_trajectory);
}

GridSearchResult grid_search(const SystemModel& model, Strategy strategy,
                             const ExperimentConfig& config, const NoiseBank& bank,
                             const DesignContext& design, int jobs) {
  GridSearchResult res;
  res.strategy = strategy;

  std::vector<Tuning> tunings;
  switch (strategy) {
    case Strategy::Lazy:
      tunings.push_back({});
      break;
    case Strategy::ImmediateGaussian:
    case Strategy::ImmediateBinary:
      for (double v : config.constants_grid.points()) tunings.push_back({.x = v});
      break;
    case Strategy::DecayingGaussian: {
      const auto cs = config.constants_grid.points();
      const auto ps = config.exponent_grid.points();
      for (double c : cs)
        for (double p : ps) tunings.push_back({.c = c, .p = p});
      break;
    }
    case Strategy::Explicit:
      throw std::invalid_argument("grid_search: explicit schedules have no tuning grid");
  }

  res.points.resize(tunings.size());
  for (std::size_t k = 0; k < tunings.size(); ++k) {
    const auto rep = run_strategy(model, strategy, tunings[k], config, bank, design, jobs);
    res.points[k] = {tunings[k], rep.empirical, rep.std_error, rep.upper_bound};
  }
  for (std::size_t k = 1; k < res.points.size(); ++k) {
    if (res.points[k].upper_bound < res.points[res.best_a].upper_bound) res.best_a = k;
    if (res.points[k].empirical < res.points[res.best_b].empirical) res.best_b = k;
  }
  return res;
}

} // namespace exsched
