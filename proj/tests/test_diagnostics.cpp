#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "ogaprox/diagnostics.hpp"
#include "ogaprox/problems.hpp"
#include "ogaprox/rng.hpp"

using namespace ogaprox;

TEST_CASE("minimax gap examples") {
  SaddleProblem bl = bilinear_scalar();
  CHECK(minimax_gap(bl, {0.3}, {-7.0}) == 0.0);  // f(x,0) == f(0,y) == 0
  CHECK(minimax_gap(bl, {0.0}, {0.0}) == 0.0);

  SaddleProblem sc = strongly_convex_strongly_concave(1.0, 1.0);
  CHECK(minimax_gap(sc, {1.0}, {1.0}) == Catch::Approx(1.0).margin(1e-15));
  CHECK(minimax_gap(sc, {0.0}, {0.0}) == 0.0);
}

TEST_CASE("value error examples") {
  SaddleProblem csc = convex_strongly_concave(1.0);
  CHECK(value_error(csc, {0.0}, {1.0}) == Catch::Approx(-0.5).margin(1e-15));
  CHECK(value_error(csc, {0.0}, {0.0}) == 0.0);

  SaddleProblem no_star = bilinear_scalar();
  no_star.f_star.reset();
  CHECK_THROWS_AS(value_error(no_star, {0.0}, {0.0}), MissingSaddle);
}

TEST_CASE("certificate a_0 at the origin probe") {
  SaddleProblem p = bilinear_scalar();
  Trace t = run(p, ConstantUnit{0.2, 0.2, 2.0}, {1.0}, {1.0}, 3);
  CertContext ctx(p, t);
  // ||0-1||^2/(2*0.2) twice, optimistic and memory terms vanish at k=0
  CHECK(ctx.a(0, {0.0}, {0.0}) == Catch::Approx(5.0).margin(1e-14));
  CHECK(norm(ctx.q(0)) == 0.0);
}

TEST_CASE("optimistic-term bound at k=1 matches the hand computation") {
  SaddleProblem p = bilinear_scalar();
  Trace t = run(p, ConstantUnit{0.2, 0.2, 2.0}, {1.0}, {1.0}, 3);
  CertContext ctx(p, t);
  // q_1 = x^1 - x^0 = -0.24; probe y = 0
  Vec q1 = ctx.q(1);
  CHECK(q1[0] == Catch::Approx(-0.24).margin(1e-14));
  double lhs = std::abs(dot(q1, sub(ctx.y(1), Vec{0.0})));
  CHECK(lhs == Catch::Approx(0.288).margin(1e-14));
  CHECK(ctx.alpha(1) == Catch::Approx(0.4).margin(1e-15));
  double slack = qk_bound_slack(ctx, 1, {0.0});
  CHECK(slack == Catch::Approx(0.36 - 0.288).margin(1e-12));
}

TEST_CASE("descent, telescoping, and curvature-floor slacks are nonnegative") {
  SaddleProblem p = bilinear_scalar();
  Trace t = run(p, ConstantUnit{0.2, 0.2, 2.0}, {1.0}, {1.0}, 60);
  CertContext ctx(p, t);
  SampleRng rng(11);
  for (int probe = 0; probe < 5; ++probe) {
    Vec px = rng.uniform_vec(1, -3.0, 3.0);
    Vec py = rng.uniform_vec(1, -3.0, 3.0);
    for (long j = 0; j + 1 < static_cast<long>(t.rows.size()); ++j) {
      CHECK(descent_slack(ctx, j, px, py) >= -1e-10);
      CHECK(telescoping_slack(ctx, j, px, py) >= -1e-10);
      CHECK(qk_bound_slack(ctx, j, py) >= -1e-12);
      CHECK(ck_lower_slack(ctx, j, t.delta) >= -1e-12);
    }
  }
}

TEST_CASE("constant-regime sandwich at k=1 matches the hand values") {
  Sandwich s = bound_convex_concave(1, 0.2, 0.2, {1.0}, {1.0}, {0.0}, {0.0},
                                    {0.76}, {1.2});
  CHECK(s.upper == Catch::Approx(2.6).margin(1e-13));
  CHECK(s.lower == Catch::Approx(-2.644).margin(1e-13));
  CHECK(s.lower <= 0.912);
  CHECK(0.912 <= s.upper);
}

TEST_CASE("accelerated sandwich shrinks as k^-2 and the linear one as theta^k") {
  Vec x0{1.0}, y0{1.0}, star{0.0}, hat{0.5};
  Sandwich a = bound_convex_strongly_concave(10, 1.0, 0.5, 0.5, x0, y0, star, star, hat, hat);
  Sandwich b = bound_convex_strongly_concave(20, 1.0, 0.5, 0.5, x0, y0, star, star, hat, hat);
  CHECK(a.upper / b.upper == Catch::Approx(4.0).margin(1e-12));
  CHECK(a.lower / b.lower == Catch::Approx(4.0).margin(1e-12));

  Sandwich l1 = bound_linear(10, 0.6, 2.0 / 3.0, 2.0 / 3.0, x0, y0, star, star, hat, hat);
  Sandwich l2 = bound_linear(11, 0.6, 2.0 / 3.0, 2.0 / 3.0, x0, y0, star, star, hat, hat);
  CHECK(l2.upper / l1.upper == Catch::Approx(0.6).margin(1e-12));
}

TEST_CASE("rate fitting recovers synthetic laws") {
  std::vector<long> ks;
  std::vector<double> pow_errs, geo_errs;
  for (long k = 1; k <= 200; ++k) {
    ks.push_back(k);
    pow_errs.push_back(5.0 / static_cast<double>(k));
    geo_errs.push_back(3.0 * std::pow(0.6, static_cast<double>(k)));
  }
  RateFit pf = fit_rate(ks, pow_errs, 1, 200, RateModel::Power);
  CHECK(pf.value == Catch::Approx(-1.0).margin(1e-6));
  CHECK(pf.residual <= 1e-10);
  RateFit gf = fit_rate(ks, geo_errs, 1, 200, RateModel::Geometric);
  CHECK(gf.value == Catch::Approx(0.6).margin(1e-6));

  CHECK_THROWS_AS(fit_rate(ks, pow_errs, 1, 5, RateModel::Power), InsufficientData);
}

TEST_CASE("accumulated gap bound holds and is exact against its endpoints") {
  SaddleProblem p = bilinear_scalar();
  Trace t = run(p, ConstantUnit{0.2, 0.2, 2.0}, {1.0}, {1.0}, 100);
  // probe at the start point: the right-hand side vanishes
  double at_start = prop_inequality_check(p, t, {1.0}, {1.0}, 100);
  CHECK(at_start >= -1e-10);
  // saddle probe: slack stays nonnegative at every k
  for (long k = 1; k <= 100; ++k) {
    CHECK(prop_inequality_check(p, t, {0.0}, {0.0}, k) >= -1e-10);
  }
}

TEST_CASE("ergodic inequalities are equalities on the scalar bilinear problem") {
  SaddleProblem p = bilinear_scalar();
  Trace t = run(p, ConstantUnit{0.2, 0.2, 2.0}, {1.0}, {1.0}, 200);
  for (long k : {1L, 2L, 10L, 50L, 200L}) {
    ErgodicSlacks s = ergodic_inequalities(p, t, k);
    CHECK(std::abs(s.slack_x) <= 1e-12 * s.scale_x);
    CHECK(std::abs(s.slack_y) <= 1e-12 * s.scale_y);
  }
}

TEST_CASE("ergodic inequalities hold with strong concavity present") {
  SaddleProblem p = convex_strongly_concave(1.0);
  Trace t = run(p, Accelerated{0.5, 0.5, 2.0}, {1.0}, {1.0}, 300);
  for (long k = 1; k <= 300; ++k) {
    ErgodicSlacks s = ergodic_inequalities(p, t, k);
    CHECK(s.slack_x >= -1e-8 * s.scale_x);
    CHECK(s.slack_y >= -1e-8 * s.scale_y);
  }
}

TEST_CASE("annotate_trace fills bounds and certificate slacks") {
  SaddleProblem p = bilinear_scalar();
  Trace t = run_with_diagnostics(p, ConstantUnit{0.2, 0.2, 2.0}, {1.0}, {1.0}, 200);
  for (const auto& row : t.rows) {
    REQUIRE(std::isfinite(row.lower_bound));
    REQUIRE(std::isfinite(row.upper_bound));
    double tol = check_tol(row.lower_bound, row.upper_bound);
    CHECK(row.lower_bound - tol <= row.value_error);
    CHECK(row.value_error <= row.upper_bound + tol);
    CHECK(row.cert_slack >= -1e-10);
  }
  CHECK(t.rows[0].upper_bound == Catch::Approx(2.6).margin(1e-13));
  CHECK(t.rows[0].lower_bound == Catch::Approx(-2.644).margin(1e-13));
}

TEST_CASE("accelerated annotation starts at k=2") {
  SaddleProblem p = convex_strongly_concave(1.0);
  Trace t = run_with_diagnostics(p, Accelerated{0.5, 0.5, 2.0}, {1.0}, {1.0}, 50);
  CHECK(std::isnan(t.rows[0].upper_bound));
  for (std::size_t i = 1; i < t.rows.size(); ++i) {
    REQUIRE(std::isfinite(t.rows[i].upper_bound));
    double tol = check_tol(t.rows[i].lower_bound, t.rows[i].upper_bound);
    CHECK(t.rows[i].lower_bound - tol <= t.rows[i].value_error);
    CHECK(t.rows[i].value_error <= t.rows[i].upper_bound + tol);
  }
}
