// Command-line front end. Subcommands:
//   plan             schedule design per system (optimizer + condition)
//   check-condition  immediate-excitation condition values
//   simulate         one strategy at an explicit tuning
//   reproduce        full experiment (table, trajectories, summary, manifest)
//   verify           structural verification battery
//   sweep            raw grid-search matrices

#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "exsched/cli.hpp"

using namespace exsched;

namespace {

struct CommonOpts {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<double> theta0;
  std::optional<std::string> design;
  std::optional<bool> oracle;
  std::optional<std::string> design_info;
  std::optional<double> i0;
  int jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  std::string out_dir = "out";
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--config", o.config_path, "config file (JSON)");
  cmd->add_option("--seed", o.seed, "master seed override");
  cmd->add_option("--theta0", o.theta0, "run a single system with this parameter");
  cmd->add_option("--design", o.design, "a | b | both")->check(CLI::IsMember({"a", "b", "both"}));
  cmd->add_option("--oracle-design", o.oracle, "design formulas use the true parameter");
  cmd->add_option("--design-info", o.design_info, "exploration_only | full")
      ->check(CLI::IsMember({"exploration_only", "full"}));
  cmd->add_option("--i0", o.i0, "override the design-time initial information");
  cmd->add_option("--jobs", o.jobs, "worker threads (output is identical for any value)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--out", o.out_dir, "output directory");
}

int resolve_config(const CommonOpts& o, ExperimentConfig& cfg) {
  try {
    if (!o.config_path.empty()) cfg = load_config(o.config_path);
    if (o.seed) cfg.master_seed = *o.seed;
    if (o.theta0) {
      cfg.theta0_list = {*o.theta0};
      cfg.fig_trajectory_index = 0;
    }
    if (o.design) {
      cfg.design_mode = *o.design == "a"   ? DesignMode::bound_a
                        : *o.design == "b" ? DesignMode::empirical_b
                                           : DesignMode::both;
    }
    if (o.oracle) cfg.oracle_design = *o.oracle;
    if (o.design_info)
      cfg.design_info = *o.design_info == "full" ? DesignInfo::full
                                                 : DesignInfo::exploration_only;
    if (o.i0) cfg.i0_override = *o.i0;
    cfg.validate();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_config_error;
  }
  return exit_ok;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exploration-schedule design and validation for scalar optimization under parametric uncertainty"};
  app.require_subcommand(1);

  CommonOpts plan_o, cond_o, sim_o, rep_o, ver_o, sweep_o;
  auto* plan = app.add_subcommand("plan", "design the exploration schedule per system");
  add_common(plan, plan_o);
  auto* cond = app.add_subcommand("check-condition", "immediate-excitation condition values");
  add_common(cond, cond_o);

  auto* sim = app.add_subcommand("simulate", "run one strategy at an explicit tuning");
  add_common(sim, sim_o);
  std::string sim_strategy = "lazy";
  Tuning sim_tuning;
  sim->add_option("--strategy", sim_strategy, "lazy | immediate_gaussian | immediate_binary | decaying_gaussian")
      ->check(CLI::IsMember({"lazy", "immediate_gaussian", "immediate_binary", "decaying_gaussian"}));
  sim->add_option("--x", sim_tuning.x, "first-step variance (immediate strategies)");
  sim->add_option("--c", sim_tuning.c, "decay constant");
  sim->add_option("--p", sim_tuning.p, "decay exponent (negative)");

  auto* rep = app.add_subcommand("reproduce", "full experiment with file outputs");
  add_common(rep, rep_o);
  auto* ver = app.add_subcommand("verify", "structural verification battery");
  add_common(ver, ver_o);
  auto* sweep = app.add_subcommand("sweep", "emit raw grid-search matrices");
  add_common(sweep, sweep_o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_config_error;
  }

  ExperimentConfig cfg;
  if (plan->parsed()) {
    if (int rc = resolve_config(plan_o, cfg)) return rc;
    return cmd_plan(cfg, plan_o.out_dir, std::cout);
  }
  if (cond->parsed()) {
    if (int rc = resolve_config(cond_o, cfg)) return rc;
    return cmd_check_condition(cfg, cond_o.out_dir, std::cout);
  }
  if (sim->parsed()) {
    if (int rc = resolve_config(sim_o, cfg)) return rc;
    Strategy strat = Strategy::Lazy;
    if (sim_strategy == "immediate_gaussian") strat = Strategy::ImmediateGaussian;
    else if (sim_strategy == "immediate_binary") strat = Strategy::ImmediateBinary;
    else if (sim_strategy == "decaying_gaussian") strat = Strategy::DecayingGaussian;
    return cmd_simulate(cfg, strat, sim_tuning, sim_o.out_dir, sim_o.jobs, std::cout);
  }
  if (rep->parsed()) {
    if (int rc = resolve_config(rep_o, cfg)) return rc;
    return cmd_reproduce(cfg, rep_o.out_dir, rep_o.jobs, std::cout);
  }
  if (ver->parsed()) {
    if (int rc = resolve_config(ver_o, cfg)) return rc;
    return cmd_verify(cfg, std::cout);
  }
  if (sweep->parsed()) {
    if (int rc = resolve_config(sweep_o, cfg)) return rc;
    return cmd_sweep(cfg, sweep_o.out_dir, sweep_o.jobs, std::cout);
  }
  return exit_config_error;
}
