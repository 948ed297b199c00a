#include "exsched/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace exsched {

namespace {

int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const budget_exceeded& e) {
    err << "error: " << e.what() << '\n';
    return exit_budget_exceeded;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return exit_config_error;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_unexpected;
  }
}

const InformationFunction& family_ifn(const DesignContext& ctx, InfoFamily f) {
  return f == InfoFamily::binary ? ctx.binary : ctx.gaussian;
}

const char* family_name(InfoFamily f) {
  switch (f) {
    case InfoFamily::gaussian: return "gaussian";
    case InfoFamily::binary: return "binary";
    case InfoFamily::custom: return "custom";
  }
  return "custom";
}

constexpr Strategy kTableStrategies[] = {Strategy::Lazy, Strategy::ImmediateGaussian,
                                         Strategy::ImmediateBinary, Strategy::DecayingGaussian};

std::size_t grid_size(const ExperimentConfig& c, Strategy s) {
  switch (s) {
    case Strategy::Lazy: return 1;
    case Strategy::ImmediateGaussian:
    case Strategy::ImmediateBinary: return c.constants_grid.count;
    case Strategy::DecayingGaussian: return c.constants_grid.count * c.exponent_grid.count;
    case Strategy::Explicit: return 0;
  }
  return 0;
}

} // namespace

int cmd_plan(const ExperimentConfig& config, const std::filesystem::path& out_dir,
             std::ostream& out) {
  return guarded(out, [&]() -> int {
    config.validate();
    const auto bank = build_noise_bank(config.master_seed, config.n_mc, config.horizon);
    auto rows = nlohmann::ordered_json::array();
    out << "theta0      family    kind       x1            bound        condition\n";
    for (double theta0 : config.theta0_list) {
      const auto model = quadratic_example(theta0, config.sigma2);
      const auto ctx = make_design_context(model, config, bank);
      for (InfoFamily fam : {InfoFamily::gaussian, InfoFamily::binary}) {
        const auto sol = optimize_schedule(family_ifn(ctx, fam), ctx.i0, config.horizon,
                                           config.constants_grid.hi);
        out << std::setw(8) << theta0 << "  " << std::setw(9) << family_name(fam) << "  "
            << std::setw(9) << (sol.kind == ScheduleKind::immediate ? "immediate" : "lazy")
            << "  " << std::setw(12) << sol.x1 << "  " << std::setw(11) << sol.bound_value
            << "  " << sol.condition_lhs
            << (sol.hit_upper_bracket ? "  (minimizer at x_max; widen the bracket)" : "")
            << '\n';
        rows.push_back({{"theta0", theta0},
                        {"family", family_name(fam)},
                        {"kind", sol.kind == ScheduleKind::immediate ? "immediate" : "lazy"},
                        {"x1", sol.x1},
                        {"bound_value", sol.bound_value},
                        {"condition_lhs", sol.condition_lhs},
                        {"i0", ctx.i0},
                        {"u0_star_design", ctx.u0_star_design},
                        {"kkt_max_violation", kkt_lambda_max_violation(sol.kkt_residuals)},
                        {"hit_upper_bracket", sol.hit_upper_bracket}});
      }
    }
    if (!out_dir.empty()) {
      std::filesystem::create_directories(out_dir);
      nlohmann::ordered_json j;
      j["code_version"] = kCodeVersion;
      j["config_hash"] = config_hash(config);
      j["plan"] = rows;
      std::ofstream f(out_dir / "plan.json", std::ios::binary);
      if (!f) throw std::runtime_error("cmd_plan: cannot write plan.json");
      f << j.dump(2) << '\n';
    }
    return exit_ok;
  });
}

int cmd_check_condition(const ExperimentConfig& config, const std::filesystem::path& out_dir,
                        std::ostream& out) {
  return guarded(out, [&]() -> int {
    config.validate();
    const auto bank = build_noise_bank(config.master_seed, config.n_mc, config.horizon);
    auto rows = nlohmann::ordered_json::array();
    out << "theta0      family    configured    full\n";
    for (double theta0 : config.theta0_list) {
      const auto model = quadratic_example(theta0, config.sigma2);
      const auto ctx = make_design_context(model, config, bank);
      ExperimentConfig full_cfg = config;
      full_cfg.design_info = DesignInfo::full;
      const auto full_ctx = make_design_context(model, full_cfg, bank);
      for (InfoFamily fam : {InfoFamily::gaussian, InfoFamily::binary}) {
        const auto configured = immediate_condition(family_ifn(ctx, fam), ctx.i0, config.horizon);
        const auto full = immediate_condition(family_ifn(full_ctx, fam), full_ctx.i0, config.horizon);
        out << std::setw(8) << theta0 << "  " << std::setw(9) << family_name(fam) << "  "
            << std::setw(12) << configured.first << "  " << full.first << '\n';
        rows.push_back({{"theta0", theta0},
                        {"family", family_name(fam)},
                        {"condition_configured", configured.first},
                        {"holds_configured", configured.second},
                        {"condition_full", full.first},
                        {"holds_full", full.second}});
      }
    }
    if (!out_dir.empty()) {
      std::filesystem::create_directories(out_dir);
      std::ofstream f(out_dir / "condition.json", std::ios::binary);
      if (!f) throw std::runtime_error("cmd_check_condition: cannot write condition.json");
      f << nlohmann::ordered_json{{"code_version", kCodeVersion},
                                  {"config_hash", config_hash(config)},
                                  {"conditions", rows}}
               .dump(2)
        << '\n';
    }
    return exit_ok;
  });
}

namespace {

std::string trajectory_csv(const RegretReport& rep) {
  std::string csv = "t,mean_cumulative_regret,stderr\n";
  for (std::size_t t = 0; t < rep.trajectory.size(); ++t) {
    csv += std::to_string(t + 1);
    csv += ',';
    csv += format_double(rep.trajectory[t]);
    csv += ',';
    csv += format_double(rep.traj_stderr[t]);
    csv += '\n';
  }
  return csv;
}

} // namespace

int cmd_simulate(const ExperimentConfig& config, Strategy strategy, const Tuning& tuning,
                 const std::filesystem::path& out_dir, int jobs, std::ostream& out) {
  return guarded(out, [&]() -> int {
    config.validate();
    const double theta0 = config.theta0_list.front();
    const auto model = quadratic_example(theta0, config.sigma2);
    const auto bank = build_noise_bank(config.master_seed, config.n_mc, config.horizon);
    const auto ctx = make_design_context(model, config, bank);
    const auto rep = run_strategy(model, strategy, tuning, config, bank, ctx, jobs, true);
    out << "theta0 " << theta0 << "  strategy " << strategy_name(strategy) << "\n"
        << "regret " << rep.empirical << " +/- " << rep.std_error
        << "  upper_bound " << rep.upper_bound << "  approx " << rep.approx << '\n';
    if (!out_dir.empty()) {
      std::filesystem::create_directories(out_dir);
      const std::string name = std::string("sim_") + strategy_name(strategy) + ".csv";
      std::ofstream f(out_dir / name, std::ios::binary);
      if (!f) throw std::runtime_error("cmd_simulate: cannot write " + name);
      f << trajectory_csv(rep);
    }
    return exit_ok;
  });
}

int cmd_reproduce(const ExperimentConfig& config, const std::filesystem::path& out_dir,
                  int jobs, std::ostream& out) {
  return guarded(out, [&]() -> int {
    const auto t_start = std::chrono::steady_clock::now();
    config.validate();

    std::size_t planned = 0;
    for (Strategy s : kTableStrategies) planned += grid_size(config, s);
    planned *= config.n_mc * config.theta0_list.size();
    if (planned > config.max_replicate_runs)
      throw budget_exceeded("cmd_reproduce: planned " + std::to_string(planned) +
                            " replicate runs exceed max_replicate_runs");

    std::filesystem::create_directories(out_dir);
    const auto bank = build_noise_bank(config.master_seed, config.n_mc, config.horizon);

    RunManifest manifest;
    manifest.config_hash = config_hash(config);
    manifest.seed = config.master_seed;

    const bool want_a = config.design_mode != DesignMode::empirical_b;
    const bool want_b = config.design_mode != DesignMode::bound_a;

    std::string table = "theta0,strategy,design,x,c,p,regret,std_error,upper_bound\n";
    std::string fig_combined = "strategy,design,t,mean_cumulative_regret,stderr\n";
    std::vector<std::pair<std::string, std::string>> fig_files;
    nlohmann::ordered_json systems = nlohmann::ordered_json::array();

    for (std::size_t sys = 0; sys < config.theta0_list.size(); ++sys) {
      const double theta0 = config.theta0_list[sys];
      const auto model = quadratic_example(theta0, config.sigma2);
      const auto ctx = make_design_context(model, config, bank);
      const bool fig_system = sys == config.fig_trajectory_index;
      const auto cond_g = immediate_condition(ctx.gaussian, ctx.i0, config.horizon);
      const auto cond_b = immediate_condition(ctx.binary, ctx.i0, config.horizon);

      nlohmann::ordered_json results = nlohmann::ordered_json::array();
      for (Strategy strat : kTableStrategies) {
        const auto grid = grid_search(model, strat, config, bank, ctx, jobs);
        struct DesignPick { const char* design; std::size_t index; };
        std::vector<DesignPick> picks;
        if (want_a) picks.push_back({"a", grid.best_a});
        if (want_b) picks.push_back({"b", grid.best_b});
        for (const auto& pick : picks) {
          const auto& pt = grid.points[pick.index];
          RegretReport rep;
          if (fig_system) {
            rep = run_strategy(model, strat, pt.tuning, config, bank, ctx, jobs, true);
            const std::string name = std::string("fig2_") + strategy_name(strat) + "_" +
                                     pick.design + ".csv";
            fig_files.emplace_back(name, trajectory_csv(rep));
            for (std::size_t t = 0; t < rep.trajectory.size(); ++t) {
              fig_combined += strategy_name(strat);
              fig_combined += ',';
              fig_combined += pick.design;
              fig_combined += ',';
              fig_combined += std::to_string(t + 1);
              fig_combined += ',';
              fig_combined += format_double(rep.trajectory[t]);
              fig_combined += ',';
              fig_combined += format_double(rep.traj_stderr[t]);
              fig_combined += '\n';
            }
          } else {
            rep = run_strategy(model, strat, pt.tuning, config, bank, ctx, jobs, false);
          }
          table += format_double(theta0);
          table += ',';
          table += strategy_name(strat);
          table += ',';
          table += pick.design;
          table += ',';
          table += format_double(pt.tuning.x);
          table += ',';
          table += format_double(pt.tuning.c);
          table += ',';
          table += format_double(pt.tuning.p);
          table += ',';
          table += format_double(rep.empirical);
          table += ',';
          table += format_double(rep.std_error);
          table += ',';
          table += format_double(rep.upper_bound);
          table += '\n';
          results.push_back({{"strategy", strategy_name(strat)},
                             {"design", pick.design},
                             {"tuning",
                              {{"x", pt.tuning.x}, {"c", pt.tuning.c}, {"p", pt.tuning.p}}},
                             {"regret", rep.empirical},
                             {"std_error", rep.std_error},
                             {"upper_bound", rep.upper_bound},
                             {"approx", rep.approx},
                             {"condition_lhs", strat == Strategy::ImmediateBinary
                                                   ? cond_b.first
                                                   : cond_g.first}});
          out << "theta0 " << theta0 << "  " << strategy_name(strat) << "  design "
              << pick.design << "  regret " << rep.empirical << '\n';
        }
      }
      systems.push_back({{"theta0", theta0},
                         {"u0_star_design", ctx.u0_star_design},
                         {"i0", ctx.i0},
                         {"condition_lhs",
                          {{"gaussian", cond_g.first}, {"binary", cond_b.first}}},
                         {"results", results}});
    }

    emit_file(manifest, out_dir, "table1.csv", table);
    emit_file(manifest, out_dir, "fig2_data.csv", fig_combined);
    for (const auto& [name, content] : fig_files) emit_file(manifest, out_dir, name, content);

    nlohmann::ordered_json summary;
    summary["code_version"] = kCodeVersion;
    summary["config_hash"] = manifest.config_hash;
    summary["config"] = config_to_json(config);
    summary["systems"] = systems;
    emit_file(manifest, out_dir, "summary.json", summary.dump(2) + "\n");

    manifest.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    write_manifest(manifest, out_dir / "manifest.json");
    out << "wrote " << manifest.outputs.size() + 1 << " files to " << out_dir.string() << '\n';
    return exit_ok;
  });
}

int cmd_verify(const ExperimentConfig& config, std::ostream& out) {
  return guarded(out, [&]() -> int {
    config.validate();
    std::size_t checked = 0, violations = 0;

    auto report = [&](bool ok, const std::string& what) {
      ++checked;
      if (!ok) {
        ++violations;
        out << "FAIL  " << what << '\n';
      }
    };

    for (std::size_t horizon : {3u, 4u, 5u}) {
      const std::size_t n_grid = horizon == 3 ? 41 : horizon == 4 ? 21 : 13;
      std::vector<double> grid{0.0};
      for (std::size_t k = 0; k + 1 < n_grid; ++k)
        grid.push_back(std::pow(10.0, -3.0 + (std::log10(8.0) + 3.0) *
                                                 static_cast<double>(k) /
                                                 static_cast<double>(n_grid - 2)));
      for (InfoFamily fam : {InfoFamily::gaussian, InfoFamily::binary}) {
        for (double i0 : {0.5, 1.0, 2.0}) {
          for (double u0 : {-2.0, -1.0, -0.5}) {
            const auto ifn = fam == InfoFamily::gaussian ? gaussian_info(u0) : binary_info(u0);
            std::ostringstream tag;
            tag << "T=" << horizon << " " << family_name(fam) << " i0=" << i0 << " u0*=" << u0;
            const auto brute =
                brute_force_verify(ifn, i0, horizon, grid, config.brute_force_budget);
            report(brute.tail_zero, tag.str() + ": grid argmin has nonzero tail");
            report(brute.nonincreasing, tag.str() + ": grid argmin is not nonincreasing");
            report(brute.gap_to_optimizer >= -1e-9,
                   tag.str() + ": optimizer bound above exhaustive minimum");
            const auto sol = optimize_schedule(ifn, i0, horizon, 16.0);
            report(!(sol.condition_lhs > 1.0) || sol.kind == ScheduleKind::immediate,
                   tag.str() + ": condition > 1 but optimizer returned lazy");
            report(kkt_lambda_max_violation(sol.kkt_residuals) <= 1e-8,
                   tag.str() + ": dual feasibility violated");
            report(sol.kkt_residuals.front() * sol.x1 <= 1e-8,
                   tag.str() + ": complementary slackness violated");
            // One-cell resolution check against the exhaustive minimum.
            double cell = 0.0;
            if (brute.argmin.front() > 0.0) {
              const auto it = std::find(grid.begin(), grid.end(), brute.argmin.front());
              const std::size_t j = static_cast<std::size_t>(it - grid.begin());
              std::vector<double> probe(horizon - 1, 0.0);
              for (std::size_t jn : {j - 1, std::min(j + 1, grid.size() - 1)}) {
                probe[0] = grid[jn];
                cell = std::max(cell, std::abs(regret_upper_bound(ifn, i0, probe, horizon) -
                                               brute.min_bound));
              }
            } else {
              std::vector<double> probe(horizon - 1, 0.0);
              probe[0] = grid[1];
              cell = std::abs(regret_upper_bound(ifn, i0, probe, horizon) - brute.min_bound);
            }
            report(brute.gap_to_optimizer <= cell + 1e-9,
                   tag.str() + ": optimizer missed the exhaustive minimum");
          }
        }
      }
    }

    // The custom-function screen must reject a concave information function.
    bool rejected = false;
    try {
      custom_info([](double x) { return std::sqrt(x); },
                  [](double x) { return x > 0 ? 0.5 / std::sqrt(x) : 1e300; });
    } catch (const std::invalid_argument&) {
      rejected = true;
    }
    report(rejected, "custom-function screen accepted a concave function");

    out << "verify: " << checked << " checks, " << violations << " violations\n";
    return violations == 0 ? exit_ok : exit_verify_failure;
  });
}

int cmd_sweep(const ExperimentConfig& config, const std::filesystem::path& out_dir,
              int jobs, std::ostream& out) {
  return guarded(out, [&]() -> int {
    config.validate();
    std::size_t planned = 0;
    for (Strategy s : kTableStrategies) planned += grid_size(config, s);
    planned *= config.n_mc * config.theta0_list.size();
    if (planned > config.max_replicate_runs)
      throw budget_exceeded("cmd_sweep: planned " + std::to_string(planned) +
                            " replicate runs exceed max_replicate_runs");
    std::filesystem::create_directories(out_dir);
    const auto bank = build_noise_bank(config.master_seed, config.n_mc, config.horizon);
    for (std::size_t sys = 0; sys < config.theta0_list.size(); ++sys) {
      const double theta0 = config.theta0_list[sys];
      const auto model = quadratic_example(theta0, config.sigma2);
      const auto ctx = make_design_context(model, config, bank);
      for (Strategy strat : kTableStrategies) {
        const auto grid = grid_search(model, strat, config, bank, ctx, jobs);
        std::string csv = "x,c,p,regret,std_error,upper_bound\n";
        for (const auto& pt : grid.points) {
          csv += format_double(pt.tuning.x);
          csv += ',';
          csv += format_double(pt.tuning.c);
          csv += ',';
          csv += format_double(pt.tuning.p);
          csv += ',';
          csv += format_double(pt.empirical);
          csv += ',';
          csv += format_double(pt.std_error);
          csv += ',';
          csv += format_double(pt.upper_bound);
          csv += '\n';
        }
        const std::string name = "sweep_theta" + std::to_string(sys) + "_" +
                                 strategy_name(strat) + ".csv";
        std::ofstream f(out_dir / name, std::ios::binary);
        if (!f) throw std::runtime_error("cmd_sweep: cannot write " + name);
        f << csv;
        out << name << ": " << grid.points.size() << " points, best_a index " << grid.best_a
            << ", best_b index " << grid.best_b << '\n';
      }
    }
    return exit_ok;
  });
}

} // namespace exsched
