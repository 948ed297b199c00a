#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "exsched/mc.hpp"

using namespace exsched;

namespace {

ExperimentConfig small_config() {
  ExperimentConfig c;
  c.theta0_list = {0.4};
  c.fig_trajectory_index = 0;
  c.horizon = 20;
  c.n_mc = 64;
  c.constants_grid = {.count = 7, .lo = 1e-2, .hi = 10.0};
  c.exponent_grid = {.count = 3, .lo = -20.0, .hi = -0.5};
  c.master_seed = 11;
  return c;
}

} // namespace

TEST_CASE("grid specifications") {
  GridSpec g{.count = 301, .lo = 1e-3, .hi = 1e2};
  const auto pts = g.points();
  CHECK(pts.size() == 301);
  CHECK(pts.front() == doctest::Approx(1e-3));
  CHECK(pts.back() == doctest::Approx(1e2));
  // Log-regular: constant ratio between neighbors.
  const double ratio = pts[1] / pts[0];
  CHECK(pts[200] / pts[199] == doctest::Approx(ratio));

  ExponentGridSpec e; // defaults: 21 points between -20 and -0.1
  const auto ps = e.points();
  CHECK(ps.size() == 21);
  CHECK(ps.front() == doctest::Approx(-0.1));
  CHECK(ps.back() == doctest::Approx(-20.0));
  // The 13th point of the default grid is the fast-decay exponent the
  // sweep typically selects.
  CHECK(ps[12] == doctest::Approx(-2.4024).epsilon(1e-4));
}

TEST_CASE("config validation messages carry the field") {
  ExperimentConfig c = small_config();
  c.sigma2 = -1.0;
  CHECK_THROWS_WITH_AS(c.validate(), "config.sigma2: must be positive", std::invalid_argument);
  c = small_config();
  c.horizon = 1;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = small_config();
  c.exponent_grid.hi = 0.5;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = small_config();
  c.n_mc = 0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
}

TEST_CASE("noise-free replicates follow the certainty-equivalence closed form") {
  const auto m = quadratic_example(0.4, 1.0);
  std::vector<double> e(21, 0.0), alpha(20, 0.0);
  ReplicateNoise noise{e.data(), alpha.data()};

  // Lazy: the first estimate is exact, so regret is identically zero.
  const auto lazy = run_replicate(m, lazy_schedule(20), noise);
  for (double r : lazy.regrets) CHECK(r == doctest::Approx(0.0));

  // Immediate with unit base at t=1: regret exactly 1 there, none after.
  alpha[0] = 1.0;
  const auto imm = run_replicate(m, immediate_schedule(20, 1.0, InfoFamily::gaussian), noise);
  CHECK(imm.regrets[0] == doctest::Approx(1.0));
  for (std::size_t t = 1; t < imm.regrets.size(); ++t)
    CHECK(imm.regrets[t] == doctest::Approx(0.0));
}

TEST_CASE("identical variance sequences give identical replicates") {
  const auto m = quadratic_example(0.4, 1.0);
  const auto cfg = small_config();
  const auto bank = build_noise_bank(cfg.master_seed, cfg.n_mc, cfg.horizon);
  const auto ctx = make_design_context(m, cfg, bank);

  // The same numbers through two different construction paths.
  const auto direct = immediate_schedule(cfg.horizon, 0.7, InfoFamily::gaussian);
  auto copied = explicit_schedule(direct.variances, InfoFamily::gaussian);
  const auto r1 = run_schedule(m, direct, cfg, bank, ctx);
  const auto r2 = run_schedule(m, copied, cfg, bank, ctx);
  CHECK(r1.empirical == r2.empirical);

  // Lazy equals immediate at zero variance, bit for bit.
  const auto rl = run_strategy(m, Strategy::Lazy, {}, cfg, bank, ctx);
  const auto r0 = run_strategy(m, Strategy::ImmediateGaussian, {.x = 0.0}, cfg, bank, ctx);
  CHECK(rl.empirical == r0.empirical);
  CHECK(rl.std_error == r0.std_error);

  // A decaying schedule with a very fast decay mimics the immediate one.
  const auto rd = run_strategy(m, Strategy::DecayingGaussian, {.c = 0.7, .p = -20.0},
                               cfg, bank, ctx);
  CHECK(rd.empirical == doctest::Approx(r1.empirical).epsilon(0.02));
}

TEST_CASE("replicate results are independent of the worker count") {
  const auto m = quadratic_example(-0.5, 1.0);
  auto cfg = small_config();
  cfg.n_mc = 37; // odd size exercises uneven chunking
  const auto bank = build_noise_bank(cfg.master_seed, cfg.n_mc, cfg.horizon);
  const auto ctx = make_design_context(m, cfg, bank);
  const auto r1 = run_strategy(m, Strategy::ImmediateBinary, {.x = 1.3}, cfg, bank, ctx, 1, true);
  const auto r3 = run_strategy(m, Strategy::ImmediateBinary, {.x = 1.3}, cfg, bank, ctx, 3, true);
  const auto r8 = run_strategy(m, Strategy::ImmediateBinary, {.x = 1.3}, cfg, bank, ctx, 8, true);
  CHECK(r1.empirical == r3.empirical);
  CHECK(r1.empirical == r8.empirical);
  CHECK(r1.trajectory == r3.trajectory);
  CHECK(r1.trajectory == r8.trajectory);
}

TEST_CASE("tuning validation") {
  const auto m = quadratic_example(0.4, 1.0);
  const auto cfg = small_config();
  const auto bank = build_noise_bank(cfg.master_seed, cfg.n_mc, cfg.horizon);
  const auto ctx = make_design_context(m, cfg, bank);
  CHECK_THROWS_AS(run_strategy(m, Strategy::ImmediateGaussian, {.x = -1.0}, cfg, bank, ctx),
                  std::invalid_argument);
  CHECK_THROWS_AS(run_strategy(m, Strategy::DecayingGaussian, {.c = 1.0, .p = 0.5},
                               cfg, bank, ctx),
                  std::invalid_argument);
}

TEST_CASE("design context conventions") {
  const auto m = quadratic_example(0.4, 1.0);
  auto cfg = small_config();
  const auto bank = build_noise_bank(cfg.master_seed, cfg.n_mc, cfg.horizon);

  cfg.oracle_design = true;
  const auto oracle = make_design_context(m, cfg, bank);
  CHECK(oracle.u0_star_design == doctest::Approx(-1.4));
  CHECK(oracle.i0 == doctest::Approx(1.0));
  // Exploration-only accounting zeroes the no-excitation gain.
  CHECK(oracle.gaussian.eval(0.0) == doctest::Approx(0.0));

  cfg.oracle_design = false;
  const auto est = make_design_context(m, cfg, bank);
  // The bank-averaged initialization estimate sits near the truth.
  CHECK(est.u0_star_design == doctest::Approx(-1.4).epsilon(0.3));

  cfg.design_info = DesignInfo::full;
  const auto full = make_design_context(m, cfg, bank);
  CHECK(full.gaussian.eval(0.0) > 0.0);

  cfg.i0_override = 7.0;
  CHECK(make_design_context(m, cfg, bank).i0 == doctest::Approx(7.0));
}

TEST_CASE("grid search covers the tuning grids and breaks ties low") {
  const auto m = quadratic_example(0.4, 1.0);
  const auto cfg = small_config();
  const auto bank = build_noise_bank(cfg.master_seed, cfg.n_mc, cfg.horizon);
  const auto ctx = make_design_context(m, cfg, bank);

  const auto lazy = grid_search(m, Strategy::Lazy, cfg, bank, ctx);
  CHECK(lazy.points.size() == 1);
  CHECK(lazy.best_a == 0);
  CHECK(lazy.best_b == 0);

  const auto ig = grid_search(m, Strategy::ImmediateGaussian, cfg, bank, ctx);
  CHECK(ig.points.size() == 7);
  CHECK(ig.best_b < ig.points.size());

  const auto dg = grid_search(m, Strategy::DecayingGaussian, cfg, bank, ctx);
  CHECK(dg.points.size() == 7 * 3);

  // A single-point grid returns that point under both designs.
  auto cfg1 = cfg;
  cfg1.constants_grid = {.count = 1, .lo = 0.5, .hi = 0.5};
  const auto one = grid_search(m, Strategy::ImmediateBinary, cfg1, bank, ctx);
  CHECK(one.points.size() == 1);
  CHECK(one.best_a == 0);
  CHECK(one.best_b == 0);
}

TEST_CASE("bound and empirical regret agree on lazy versus tuned immediate") {
  const auto m = quadratic_example(0.4, 1.0);
  auto cfg = small_config();
  cfg.n_mc = 256;
  const auto bank = build_noise_bank(cfg.master_seed, cfg.n_mc, cfg.horizon);
  const auto ctx = make_design_context(m, cfg, bank);
  const auto lazy = run_strategy(m, Strategy::Lazy, {}, cfg, bank, ctx);
  const auto sol = optimize_schedule(ctx.binary, ctx.i0, cfg.horizon, cfg.constants_grid.hi);
  REQUIRE(sol.kind == ScheduleKind::immediate);
  const auto tuned = run_strategy(m, Strategy::ImmediateBinary, {.x = sol.x1}, cfg, bank, ctx);
  CHECK(tuned.upper_bound < lazy.upper_bound);
  CHECK(tuned.empirical < lazy.empirical);
}

TEST_CASE("reports carry consistent design-time quantities") {
  const auto m = quadratic_example(0.4, 1.0);
  auto cfg = small_config();
  cfg.oracle_design = true;
  const auto bank = build_noise_bank(cfg.master_seed, cfg.n_mc, cfg.horizon);
  const auto ctx = make_design_context(m, cfg, bank);
  const auto rep = run_strategy(m, Strategy::ImmediateGaussian, {.x = 1.0}, cfg, bank, ctx);
  // The approximation uses the full accounting, so it stays below the
  // exploration-only bound as well.
  CHECK(rep.approx <= rep.upper_bound);
  CHECK(rep.empirical > 0.0);
  CHECK(rep.std_error > 0.0);
}
