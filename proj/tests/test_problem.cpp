#include <catch2/catch_amalgamated.hpp>

#include "ogaprox/problem.hpp"
#include "ogaprox/problems.hpp"

using namespace ogaprox;

TEST_CASE("f_value on the built-in problems") {
  SaddleProblem bl = bilinear_scalar();
  CHECK(f_value(bl, {2.0}, {3.0}).value() == 6.0);

  SaddleProblem sc = strongly_convex_strongly_concave(1.0, 1.0);
  CHECK(f_value(sc, {0.0}, {0.0}).value() == 0.0);
  CHECK(f_value(sc, {1.0}, {1.0}).value() == 1.0);

  SaddleProblem csc = convex_strongly_concave(1.0);
  CHECK(f_value(csc, {1.0}, {2.0}).value() == Catch::Approx(0.0).margin(1e-15));
}

TEST_CASE("f_value rejects indeterminate forms") {
  SaddleProblem p = bilinear_scalar();
  p.phi_value = [](const Vec&, const Vec&) { return ExtendedReal::pos_inf(); };
  p.g_value = [](const Vec&) { return ExtendedReal::pos_inf(); };
  CHECK_THROWS_AS(f_value(p, {1.0}, {1.0}), IndeterminateValue);
}

TEST_CASE("extended-real arithmetic never yields NaN silently") {
  CHECK_THROWS_AS(ExtendedReal(std::nan("")), IndeterminateValue);
  CHECK((ExtendedReal::pos_inf() - ExtendedReal(5.0)).value() ==
        std::numeric_limits<double>::infinity());
  CHECK_THROWS_AS(ExtendedReal::pos_inf() - ExtendedReal::pos_inf(), IndeterminateValue);
}

TEST_CASE("lipschitz check passes with the exact constants") {
  for (const auto* label : {"bilinear", "csc", "scsc"}) {
    auto report = check_lipschitz(catalog_entry(label).problem, 300, 10.0, 7);
    INFO(label);
    CHECK(report.pass);
    CHECK(report.max_violation <= 0.0);
  }
}

TEST_CASE("lipschitz check flags an understated constant") {
  SaddleProblem p = bilinear_scalar();
  p.L_yx = 0.5;
  auto report = check_lipschitz(p, 300, 10.0, 7);
  CHECK_FALSE(report.pass);
  CHECK(report.max_violation > 0.0);
}

TEST_CASE("saddle inequality holds on probes for every catalog entry") {
  for (const auto& entry : catalog()) {
    const auto& p = entry.problem;
    const auto& [xs, ys] = *p.saddle;
    SampleRng rng(42);
    for (int i = 0; i < 100; ++i) {
      Vec x = rng.uniform_vec(p.dim_x, -10.0, 10.0);
      Vec y = rng.uniform_vec(p.dim_y, -10.0, 10.0);
      double tol = 1e-10 * (1.0 + std::abs(*p.f_star));
      INFO(entry.label);
      CHECK(f_value(p, xs, y).value() <= *p.f_star + tol);
      CHECK(f_value(p, x, ys).value() >= *p.f_star - tol);
    }
  }
}

TEST_CASE("bilinear coupling constant is the largest singular value") {
  CHECK(bilinear({{1.0}}).L_yx == Catch::Approx(1.0));
  CHECK(bilinear({{0.0, 1.0}, {1.0, 0.0}}).L_yx == Catch::Approx(1.0));
  CHECK(bilinear({{3.0}}).L_yx == Catch::Approx(3.0));
}

TEST_CASE("counterexample setup validates epsilon") {
  CHECK_NOTHROW(counterexample_setup(0.1));
  CHECK_NOTHROW(counterexample_setup(0.3));
  CHECK_THROWS_AS(counterexample_setup(0.31), EpsilonOutOfRange);
  CHECK_THROWS_AS(counterexample_setup(0.0), EpsilonOutOfRange);
}
