#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "exsched/infofn.hpp"
#include "exsched/rng.hpp"

using namespace exsched;

TEST_CASE("gaussian information function closed form") {
  CHECK(gaussian_info(-1.4).eval(0.0) == doctest::Approx(3.8416));
  CHECK(gaussian_info(0.0).eval(1.0) == doctest::Approx(3.0));
  CHECK(gaussian_info(-1.0).eval(1.0) == doctest::Approx(10.0));
  CHECK(gaussian_info(-1.0).deriv(1.0) == doctest::Approx(12.0));
  CHECK(gaussian_info(-1.0).deriv(0.0) == doctest::Approx(6.0));
  // Noise variance scales the whole function.
  CHECK(gaussian_info(-1.0, 4.0).eval(1.0) == doctest::Approx(2.5));
}

TEST_CASE("binary information function closed form") {
  CHECK(binary_info(-1.0).eval(1.0) == doctest::Approx(8.0));
  CHECK(binary_info(0.0).eval(2.0) == doctest::Approx(4.0));
  CHECK(binary_info(-1.7).eval(0.0) == doctest::Approx(gaussian_info(-1.7).eval(0.0)));
}

TEST_CASE("both families satisfy the monotone-convex requirements") {
  for (double u0 : {-2.0, -1.4, -0.3, 0.0, 1.0}) {
    CHECK(satisfies_info_assumptions(gaussian_info(u0)));
    CHECK(satisfies_info_assumptions(binary_info(u0)));
    CHECK(satisfies_info_assumptions(exploration_only(gaussian_info(u0))));
  }
}

TEST_CASE("binary never exceeds gaussian at equal variance, equal only at zero") {
  for (double u0 : {-2.0, -1.0, 0.0}) {
    const auto g = gaussian_info(u0);
    const auto b = binary_info(u0);
    CHECK(b.eval(0.0) == doctest::Approx(g.eval(0.0)));
    for (double x : {1e-4, 0.1, 1.0, 10.0, 100.0}) {
      CHECK(b.eval(x) < g.eval(x));
    }
  }
}

TEST_CASE("custom functions are screened") {
  // Affine is fine.
  const auto ok = custom_info([](double x) { return 1.0 + 0.5 * x; },
                              [](double) { return 0.5; });
  CHECK(ok.eval(2.0) == doctest::Approx(2.0));
  // Concave must be rejected.
  CHECK_THROWS_AS(custom_info([](double x) { return std::sqrt(x); },
                              [](double x) { return x > 0 ? 0.5 / std::sqrt(x) : 1e300; }),
                  std::invalid_argument);
  // Decreasing must be rejected.
  CHECK_THROWS_AS(custom_info([](double x) { return 1.0 / (1.0 + x); },
                              [](double x) { return -1.0 / ((1.0 + x) * (1.0 + x)); }),
                  std::invalid_argument);
}

TEST_CASE("two-argument incremental information") {
  CHECK(full_incremental_info(InfoFamily::gaussian, -1.0, 0.0, 0.0) == doctest::Approx(1.0));
  // Term by term: 3 + (6+6) + 3 + 6 + 1; cross-checked against the sampling
  // oracle below (fourth moment of N(-1, 2) is 1 + 12 + 12).
  CHECK(full_incremental_info(InfoFamily::gaussian, -1.0, 1.0, 1.0) == doctest::Approx(25.0));
  CHECK(full_incremental_info(InfoFamily::binary, -1.0, 1.0, 1.0) == doctest::Approx(23.0));
  const auto [ag, mg] = moment_expansion_check(InfoFamily::gaussian, -1.0, 1.0, 1.0, 1000000);
  CHECK(ag == doctest::Approx(25.0));
  CHECK(std::abs(mg - ag) / ag < 0.01);
  const auto [ab, mb] = moment_expansion_check(InfoFamily::binary, -1.0, 1.0, 1.0, 1000000);
  CHECK(ab == doctest::Approx(23.0));
  CHECK(std::abs(mb - ab) / ab < 0.01);
  CHECK_THROWS_AS(full_incremental_info(InfoFamily::gaussian, -1.0, -0.1, 0.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(full_incremental_info(InfoFamily::gaussian, -1.0, 0.1, -1e-9),
                  std::invalid_argument);
  // Monotone in the error-variance argument.
  for (int k = 0; k < 100; ++k) {
    const double u0 = -2.0 * uniform01(counter_hash(11, 3, k, 0));
    const double x = 3.0 * uniform01(counter_hash(11, 3, k, 1));
    const double a = 2.0 * uniform01(counter_hash(11, 3, k, 2));
    CHECK(full_incremental_info(InfoFamily::gaussian, u0, x, a) >=
          full_incremental_info(InfoFamily::gaussian, u0, x, 0.0));
    CHECK(full_incremental_info(InfoFamily::binary, u0, x, a) >=
          full_incremental_info(InfoFamily::binary, u0, x, 0.0));
  }
}

TEST_CASE("exploration-only accounting subtracts the zero-excitation gain") {
  const auto g = gaussian_info(-1.4);
  const auto ge = exploration_only(g);
  CHECK(ge.eval(0.0) == doctest::Approx(0.0));
  CHECK(ge.eval(2.0) == doctest::Approx(g.eval(2.0) - g.eval(0.0)));
  CHECK(ge.deriv(0.5) == doctest::Approx(g.deriv(0.5)));
}

TEST_CASE("moment expansion against sampling") {
  // Deterministic corner: both sides are exactly (u0*)^4.
  const auto [a0, m0] = moment_expansion_check(InfoFamily::gaussian, -1.3, 0.0, 0.0, 10000);
  CHECK(a0 == doctest::Approx(std::pow(1.3, 4)));
  CHECK(m0 == doctest::Approx(a0));

  // Binary fourth moment at u0* = 0, x = 1 is exactly 1 for every sample.
  const auto [a1, m1] = moment_expansion_check(InfoFamily::binary, 0.0, 1.0, 0.0, 10000);
  CHECK(a1 == doctest::Approx(1.0));
  CHECK(m1 == doctest::Approx(1.0));

  const auto [a2, m2] = moment_expansion_check(InfoFamily::gaussian, -1.0, 1.0, 0.0, 1000000);
  CHECK(a2 == doctest::Approx(10.0));
  CHECK(std::abs(m2 - a2) / a2 < 0.01);

  const auto [a3, m3] = moment_expansion_check(InfoFamily::binary, -0.7, 0.8, 0.5, 1000000);
  CHECK(std::abs(m3 - a3) / a3 < 0.01);

  CHECK_THROWS_AS(moment_expansion_check(InfoFamily::gaussian, 0.0, 1.0, 0.0, 100),
                  std::invalid_argument);
}
