#pragma once
// Subcommand implementations shared by the command-line binary and the
// test suites. Each returns a process exit code:
//   0 success, 2 config/validation error, 3 verification failure,
//   4 evaluation budget exceeded, 1 unexpected failure.

#include <filesystem>
#include <iosfwd>

#include "exsched/io.hpp"
#include "exsched/mc.hpp"

namespace exsched {

enum ExitCode : int {
  exit_ok = 0,
  exit_unexpected = 1,
  exit_config_error = 2,
  exit_verify_failure = 3,
  exit_budget_exceeded = 4,
};

// Per-system schedule design: optimizer solution and immediate-excitation
// condition for both excitation families. Writes plan.json when out_dir is
// nonempty.
int cmd_plan(const ExperimentConfig& config, const std::filesystem::path& out_dir,
             std::ostream& out);

// Condition values for every system and family under the configured design
// accounting and under the full accounting. Writes condition.json.
int cmd_check_condition(const ExperimentConfig& config, const std::filesystem::path& out_dir,
                        std::ostream& out);

// One strategy at an explicit tuning; writes the trajectory CSV.
int cmd_simulate(const ExperimentConfig& config, Strategy strategy, const Tuning& tuning,
                 const std::filesystem::path& out_dir, int jobs, std::ostream& out);

// Full experiment: per-system grid search for every strategy under designs
// (a) and (b), trajectory emission for the configured system, and the run
// manifest. Files: table1.csv, fig2_data.csv, fig2_<strategy>_<design>.csv,
// summary.json, manifest.json.
int cmd_reproduce(const ExperimentConfig& config, const std::filesystem::path& out_dir,
                  int jobs, std::ostream& out);

// Structural verification battery: exhaustive small-horizon grids, optimizer
// consistency, multiplier sign checks, and the custom-function screen.
int cmd_verify(const ExperimentConfig& config, std::ostream& out);

// Raw grid-search matrices per system and strategy, one CSV each.
int cmd_sweep(const ExperimentConfig& config, const std::filesystem::path& out_dir,
              int jobs, std::ostream& out);

} // namespace exsched
