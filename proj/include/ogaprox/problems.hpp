#pragma once

#include <string>
#include <vector>

#include "ogaprox/problem.hpp"
#include "ogaprox/prox.hpp"
#include "ogaprox/schedule.hpp"

namespace ogaprox {

/// Phi(x,y) = <Ax, y>, g == 0. A is row-major n2 x n1. Saddle (0,0), f* = 0.
/// L_yx is the largest singular value of A.
inline SaddleProblem bilinear(std::vector<Vec> a_rows) {
  if (a_rows.empty() || a_rows[0].empty()) throw DimensionMismatch("empty coupling matrix");
  std::size_t n2 = a_rows.size();
  std::size_t n1 = a_rows[0].size();
  for (const auto& r : a_rows) {
    if (r.size() != n1) throw DimensionMismatch("ragged coupling matrix");
  }

  // largest singular value via power iteration on A^T A (exact enough for the
  // small matrices the catalog uses; 1x1 is just |a|)
  double smax = 0.0;
  {
    Vec v(n1, 1.0 / std::sqrt(static_cast<double>(n1)));
    for (int it = 0; it < 200; ++it) {
      Vec av(n2, 0.0);
      for (std::size_t r = 0; r < n2; ++r) av[r] = dot(a_rows[r], v);
      Vec atav(n1, 0.0);
      for (std::size_t r = 0; r < n2; ++r) {
        for (std::size_t c = 0; c < n1; ++c) atav[c] += a_rows[r][c] * av[r];
      }
      double nn = norm(atav);
      if (nn == 0.0) break;
      v = scaled(atav, 1.0 / nn);
      smax = std::sqrt(nn);
    }
  }

  SaddleProblem p;
  p.dim_x = n1;
  p.dim_y = n2;
  auto rows = a_rows;
  p.phi_value = [rows](const Vec& x, const Vec& y) -> ExtendedReal {
    double v = 0.0;
    for (std::size_t r = 0; r < rows.size(); ++r) v += dot(rows[r], x) * y[r];
    return v;
  };
  p.grad_y_phi = [rows](const Vec& x, const Vec& y) {
    (void)y;
    Vec g(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) g[r] = dot(rows[r], x);
    return g;
  };
  auto coupling = prox_bilinear_coupling(a_rows, 0.0);
  p.prox_coupling = [coupling](double tau, const Vec& y, const Vec& anchor) {
    return coupling(tau, y, anchor);
  };
  p.g_value = [](const Vec&) -> ExtendedReal { return 0.0; };
  p.prox_g = prox_zero;
  p.L_yx = smax;
  p.L_yy = 0.0;
  p.mu = 0.0;
  p.nu = 0.0;
  p.saddle = std::make_pair(Vec(n1, 0.0), Vec(n2, 0.0));
  p.f_star = 0.0;
  return p;
}

inline SaddleProblem bilinear_scalar() { return bilinear({{1.0}}); }

/// Phi(x,y) = x y (scalar), g(y) = (nu/2) y^2. Saddle (0,0), f* = 0.
inline SaddleProblem convex_strongly_concave(double nu) {
  if (!(nu > 0.0)) throw ConstraintViolated("csc problem needs nu > 0");
  SaddleProblem p = bilinear_scalar();
  p.nu = nu;
  p.g_value = [nu](const Vec& y) -> ExtendedReal { return 0.5 * nu * sqnorm(y); };
  auto pg = prox_quadratic(nu);
  p.prox_g = [pg](double sigma, const Vec& anchor) { return pg(sigma, anchor); };
  return p;
}

/// Phi(x,y) = (mu/2) x^2 + x y (scalar), g(y) = (nu/2) y^2. Saddle (0,0), f* = 0.
inline SaddleProblem strongly_convex_strongly_concave(double mu, double nu) {
  if (!(mu > 0.0 && nu > 0.0)) throw ConstraintViolated("scsc problem needs mu, nu > 0");
  SaddleProblem p = convex_strongly_concave(nu);
  p.mu = mu;
  p.phi_value = [mu](const Vec& x, const Vec& y) -> ExtendedReal {
    return 0.5 * mu * sqnorm(x) + dot(x, y);
  };
  auto coupling = prox_bilinear_coupling({{1.0}}, mu);
  p.prox_coupling = [coupling](double tau, const Vec& y, const Vec& anchor) {
    return coupling(tau, y, anchor);
  };
  return p;
}

/// The counterexample configuration: scalar bilinear problem, adversarial
/// schedule, start (1,1), equal ergodic weights.
struct CounterexampleSetup {
  SaddleProblem problem;
  RegimeSpec regime;
  Vec x0, y0;
};

inline CounterexampleSetup counterexample_setup(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < adversarial_epsilon_cap())) {
    throw EpsilonOutOfRange("epsilon must lie in (0, 3/pi^2)");
  }
  return CounterexampleSetup{bilinear_scalar(), Adversarial{epsilon}, {1.0}, {1.0}};
}

struct ProblemCatalogEntry {
  std::string label;
  SaddleProblem problem;
  RegimeSpec default_regime;
  Vec default_x0, default_y0;
  std::string notes;
};

/// The built-in instances the CLI exposes as --problem values.
inline std::vector<ProblemCatalogEntry> catalog() {
  std::vector<ProblemCatalogEntry> entries;
  {
    SaddleProblem p = bilinear_scalar();
    double c_alpha = default_c_alpha(p.L_yx);
    entries.push_back({"bilinear", p, ConstantUnit{0.2, 0.2, c_alpha}, {1.0}, {1.0},
                       "scalar bilinear coupling, zero regularizer"});
  }
  {
    SaddleProblem p = convex_strongly_concave(1.0);
    entries.push_back({"csc", p, Accelerated{0.5, 0.5, 2.0}, {1.0}, {1.0},
                       "bilinear coupling with quadratic dual regularizer"});
  }
  {
    SaddleProblem p = strongly_convex_strongly_concave(1.0, 1.0);
    entries.push_back({"scsc", p, LinearRate{0.6, 1.0}, {1.0}, {1.0},
                       "strongly convex primal, quadratic dual regularizer"});
  }
  {
    auto setup = counterexample_setup(0.1);
    entries.push_back({"counterexample", setup.problem, setup.regime, setup.x0, setup.y0,
                       "bilinear problem with the adversarial step-size schedule"});
  }
  return entries;
}

inline const ProblemCatalogEntry& catalog_entry(const std::string& label) {
  static const std::vector<ProblemCatalogEntry> entries = catalog();
  for (const auto& e : entries) {
    if (e.label == label) return e;
  }
  throw ConstraintViolated("unknown problem label: " + label);
}

}  // namespace ogaprox
