#include <catch2/catch_amalgamated.hpp>

#include "ogaprox/prox.hpp"
#include "ogaprox/rng.hpp"

using namespace ogaprox;

TEST_CASE("prox_zero is the identity") {
  CHECK(prox_zero(0.2, {1.5}) == Vec{1.5});
  CHECK(prox_zero(5.0, {0.0, 0.0}) == Vec{0.0, 0.0});
  CHECK(prox_zero(1e-9, {-3.0}) == Vec{-3.0});
}

TEST_CASE("prox_quadratic closed form") {
  CHECK(prox_quadratic(1.0)(1.0, {2.0}) == Vec{1.0});
  CHECK(prox_quadratic(0.0)(7.0, {3.0}) == Vec{3.0});
  CHECK(prox_quadratic(2.0)(0.5, {4.0}) == Vec{2.0});
}

TEST_CASE("prox_quadratic satisfies its first-order condition on samples") {
  SampleRng rng(11);
  for (int i = 0; i < 100; ++i) {
    double nu = rng.uniform(0.1, 5.0);
    double sigma = rng.uniform(0.01, 10.0);
    Vec z = rng.uniform_vec(3, -10.0, 10.0);
    Vec out = prox_quadratic(nu)(sigma, z);
    // (z - out)/sigma = nu * out
    for (std::size_t c = 0; c < z.size(); ++c) {
      CHECK(std::abs((z[c] - out[c]) / sigma - nu * out[c]) <= 1e-12 * (1.0 + std::abs(out[c])));
    }
  }
}

TEST_CASE("prox_bilinear_coupling closed form") {
  auto scalar = prox_bilinear_coupling({{1.0}}, 0.0);
  CHECK(scalar(0.2, {1.2}, {1.0})[0] == Catch::Approx(0.76).margin(1e-16));
  CHECK(scalar(0.7, {0.0}, {2.5})[0] == 2.5);

  auto strong = prox_bilinear_coupling({{1.0}}, 1.0);
  CHECK(strong(2.0 / 3.0, {0.0}, {1.0})[0] == Catch::Approx(0.6).margin(1e-15));
}

TEST_CASE("prox_bilinear_coupling satisfies its first-order condition") {
  // mu out + A^T y + (out - anchor)/tau = 0
  SampleRng rng(13);
  std::vector<Vec> a_rows = {{1.0, -2.0}, {0.5, 3.0}};
  for (int i = 0; i < 100; ++i) {
    double mu = rng.uniform(0.0, 4.0);
    double tau = rng.uniform(0.01, 10.0);
    Vec y = rng.uniform_vec(2, -10.0, 10.0);
    Vec anchor = rng.uniform_vec(2, -10.0, 10.0);
    Vec out = prox_bilinear_coupling(a_rows, mu)(tau, y, anchor);
    for (std::size_t c = 0; c < 2; ++c) {
      double aty = a_rows[0][c] * y[0] + a_rows[1][c] * y[1];
      double residual = mu * out[c] + aty + (out[c] - anchor[c]) / tau;
      CHECK(std::abs(residual) <= 1e-10 * (1.0 + std::abs(aty)));
    }
  }
}

TEST_CASE("prox_bilinear_coupling rejects dimension mismatches") {
  auto pm = prox_bilinear_coupling({{1.0, 0.0}}, 0.0);
  CHECK_THROWS_AS(pm(1.0, {1.0, 2.0}, {1.0, 1.0}), DimensionMismatch);
}

TEST_CASE("firm nonexpansiveness on sampled pairs") {
  SampleRng rng(17);
  auto pq = prox_quadratic(1.5);
  for (int i = 0; i < 100; ++i) {
    double sigma = rng.uniform(0.1, 5.0);
    Vec z1 = rng.uniform_vec(2, -10.0, 10.0);
    Vec z2 = rng.uniform_vec(2, -10.0, 10.0);
    Vec p1 = pq(sigma, z1);
    Vec p2 = pq(sigma, z2);
    CHECK(sqdist(p1, p2) <= dot(sub(p1, p2), sub(z1, z2)) + 1e-10);
  }
}

TEST_CASE("prox_quadratic contracts toward the origin with factor 1/(1+sigma nu)") {
  SampleRng rng(19);
  for (int i = 0; i < 50; ++i) {
    double nu = rng.uniform(0.5, 3.0);
    double sigma = rng.uniform(0.1, 5.0);
    Vec z = rng.uniform_vec(2, -10.0, 10.0);
    Vec out = prox_quadratic(nu)(sigma, z);
    CHECK(norm(out) == Catch::Approx(norm(z) / (1.0 + sigma * nu)).epsilon(1e-12));
  }
}
