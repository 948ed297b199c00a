#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "exsched/cli.hpp"
#include "exsched/io.hpp"

using namespace exsched;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("exsched_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ExperimentConfig tiny_config() {
  ExperimentConfig c;
  c.theta0_list = {0.4, -0.5};
  c.fig_trajectory_index = 0;
  c.horizon = 12;
  c.n_mc = 40;
  c.constants_grid = {.count = 5, .lo = 1e-2, .hi = 10.0};
  c.exponent_grid = {.count = 2, .lo = -20.0, .hi = -0.5};
  c.master_seed = 5;
  return c;
}

} // namespace

TEST_CASE("shortest round-trip formatting") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(-2.4024) == "-2.4024");
  CHECK(format_double(1e-3) == "0.001");
  const double v = 10.676123456789;
  CHECK(std::stod(format_double(v)) == v);
}

TEST_CASE("sha256 known answers") {
  CHECK(sha256_hex(std::string("")) ==
        "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(sha256_hex(std::string("abc")) ==
        "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  // Long input crosses several blocks.
  CHECK(sha256_hex(std::string(1000, 'a')) ==
        "41edece42d63e8d9bf515a9ba6932e1c20cbc9f5a5d134645adb5db1b9737ea3");
}

TEST_CASE("config round-trips through JSON with full defaulting") {
  const ExperimentConfig def;
  const auto j = config_to_json(def);
  CHECK(j["horizon"] == 50);
  CHECK(j["n_mc"] == 1000);
  CHECK(j["sigma2"] == 1.0);
  CHECK(j["constants_grid"]["count"] == 301);
  CHECK(j["exponent_grid"]["count"] == 21);
  CHECK(j["theta0_list"].size() == 10);
  CHECK(j["design_info"] == "exploration_only");

  const auto parsed = parse_config(j);
  CHECK(config_hash(parsed) == config_hash(def));

  // An empty object resolves to the defaults.
  const auto empty = parse_config(nlohmann::json::object());
  CHECK(config_hash(empty) == config_hash(def));
}

TEST_CASE("config rejects malformed trees with the offending key") {
  CHECK_THROWS_WITH_AS(parse_config({{"sigma2", -2.0}}), "config.sigma2: must be positive",
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(parse_config({{"bogus_key", 1}}), "config.bogus_key: unknown key",
                       std::invalid_argument);
  CHECK_THROWS_AS(parse_config({{"design_mode", "c"}}), std::invalid_argument);
  CHECK_THROWS_AS(parse_config({{"horizon", "fifty"}}), std::invalid_argument);
  CHECK_THROWS_AS(parse_config({{"exponent_grid", {{"hi", 0.3}}}}), std::invalid_argument);
  CHECK_THROWS_AS(parse_config(nlohmann::json::array()), std::invalid_argument);
}

TEST_CASE("load_config reports parse position") {
  const auto dir = temp_dir("cfg");
  {
    std::ofstream f(dir / "bad.json");
    f << "{ \"horizon\": 50, }";
  }
  try {
    load_config(dir / "bad.json");
    FAIL("expected a parse error");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("parse error") != std::string::npos);
  }
}

TEST_CASE("verify subcommand passes on the default battery") {
  ExperimentConfig cfg = tiny_config();
  std::ostringstream out;
  CHECK(cmd_verify(cfg, out) == exit_ok);
  CHECK(out.str().find(" 0 violations") != std::string::npos);
}

TEST_CASE("plan and check-condition emit their summaries") {
  const auto dir = temp_dir("plan");
  auto cfg = tiny_config();
  std::ostringstream out;
  CHECK(cmd_plan(cfg, dir, out) == exit_ok);
  CHECK(fs::exists(dir / "plan.json"));
  const auto plan = nlohmann::json::parse(slurp(dir / "plan.json"));
  CHECK(plan["plan"].size() == 2 * cfg.theta0_list.size());

  CHECK(cmd_check_condition(cfg, dir, out) == exit_ok);
  const auto cond = nlohmann::json::parse(slurp(dir / "condition.json"));
  for (const auto& row : cond["conditions"]) {
    CHECK(row["condition_configured"].get<double>() >= 0.0);
    CHECK(row["condition_full"].get<double>() >= 0.0);
  }
}

TEST_CASE("a zero optimal input with strong prior information plans lazy") {
  // theta0 = -1 puts the optimum at the origin, so the information slope at
  // zero excitation vanishes and the condition is exactly zero; with enough
  // prior information the quadratic excitation gain cannot pay for itself
  // either and the plan stays lazy.
  const auto dir = temp_dir("plan0");
  auto cfg = tiny_config();
  cfg.theta0_list = {-1.0};
  cfg.fig_trajectory_index = 0;
  cfg.oracle_design = true;
  cfg.i0_override = 100.0;
  std::ostringstream out;
  REQUIRE(cmd_plan(cfg, dir, out) == exit_ok);
  const auto plan = nlohmann::json::parse(slurp(dir / "plan.json"));
  for (const auto& row : plan["plan"]) {
    CHECK(row["condition_lhs"].get<double>() == 0.0);
    CHECK(row["kind"] == "lazy");
  }
}

TEST_CASE("commands map invalid configs to the config exit code") {
  auto cfg = tiny_config();
  cfg.sigma2 = -1.0;
  std::ostringstream out;
  CHECK(cmd_plan(cfg, "", out) == exit_config_error);
  CHECK(cmd_reproduce(cfg, temp_dir("bad"), 1, out) == exit_config_error);
}

TEST_CASE("simulate writes the trajectory of one strategy") {
  const auto dir = temp_dir("sim");
  auto cfg = tiny_config();
  cfg.theta0_list = {0.4};
  cfg.fig_trajectory_index = 0;
  std::ostringstream out;
  REQUIRE(cmd_simulate(cfg, Strategy::ImmediateBinary, {.x = 2.0}, dir, 1, out) == exit_ok);
  const auto csv = slurp(dir / "sim_immediate_binary.csv");
  CHECK(csv.rfind("t,mean_cumulative_regret,stderr\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + static_cast<long>(cfg.horizon));
  CHECK(out.str().find("regret") != std::string::npos);

  // Decaying with a positive exponent is rejected with the config code.
  CHECK(cmd_simulate(cfg, Strategy::DecayingGaussian, {.c = 1.0, .p = 0.5}, dir, 1, out) ==
        exit_config_error);
}

TEST_CASE("sweep emits one matrix per system and strategy") {
  const auto dir = temp_dir("sweep");
  const auto cfg = tiny_config();
  std::ostringstream out;
  REQUIRE(cmd_sweep(cfg, dir, 1, out) == exit_ok);
  // 2 systems x 4 strategies.
  std::size_t files = 0;
  for (const auto& entry : fs::directory_iterator(dir)) {
    ++files;
    const auto csv = slurp(entry.path());
    CHECK(csv.rfind("x,c,p,regret,std_error,upper_bound\n", 0) == 0);
  }
  CHECK(files == 8);
  const auto decaying = slurp(dir / "sweep_theta0_decaying_gaussian.csv");
  CHECK(std::count(decaying.begin(), decaying.end(), '\n') ==
        1 + static_cast<long>(cfg.constants_grid.count * cfg.exponent_grid.count));
}

TEST_CASE("reproduce emits deterministic files and a faithful manifest") {
  const auto cfg = tiny_config();
  const auto dir1 = temp_dir("rep1");
  const auto dir2 = temp_dir("rep2");
  std::ostringstream out;
  REQUIRE(cmd_reproduce(cfg, dir1, 1, out) == exit_ok);
  REQUIRE(cmd_reproduce(cfg, dir2, 3, out) == exit_ok);

  const auto manifest = nlohmann::json::parse(slurp(dir1 / "manifest.json"));
  CHECK(manifest["config_hash"] == config_hash(cfg));
  for (const auto& entry : manifest["outputs"]) {
    const auto name = entry["path"].get<std::string>();
    const auto digest = entry["sha256"].get<std::string>();
    CHECK(sha256_file(dir1 / name) == digest);
    // Byte identity across runs with different worker counts.
    CHECK(slurp(dir1 / name) == slurp(dir2 / name));
  }
  CHECK(fs::exists(dir1 / "table1.csv"));
  CHECK(fs::exists(dir1 / "fig2_data.csv"));
  CHECK(fs::exists(dir1 / "summary.json"));

  // Table rows: systems x strategies x designs, plus the header.
  const auto table = slurp(dir1 / "table1.csv");
  const auto rows = std::count(table.begin(), table.end(), '\n');
  CHECK(rows == 1 + 2 * 4 * 2);
}

TEST_CASE("budget guard trips before any work") {
  auto cfg = tiny_config();
  cfg.max_replicate_runs = 10;
  std::ostringstream out;
  CHECK(cmd_reproduce(cfg, temp_dir("budget"), 1, out) == exit_budget_exceeded);
}
