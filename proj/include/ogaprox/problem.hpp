#pragma once

#include <functional>
#include <optional>
#include <utility>

#include "ogaprox/extended_real.hpp"
#include "ogaprox/rng.hpp"
#include "ogaprox/vec.hpp"

namespace ogaprox {

/// Saddle-point problem f(x,y) = Phi(x,y) - g(y) given through value, gradient,
/// and exact prox oracles, plus the regularity constants the schedules need.
///
/// prox_coupling(tau, y, anchor) must return the exact minimizer of
///   Phi(., y) + (1/(2 tau)) ||. - anchor||^2,
/// and prox_g(sigma, anchor) the exact minimizer of
///   sigma g(.) + (1/2) ||. - anchor||^2.
struct SaddleProblem {
  std::function<ExtendedReal(const Vec&, const Vec&)> phi_value;
  std::function<Vec(const Vec&, const Vec&)> grad_y_phi;
  std::function<Vec(double, const Vec&, const Vec&)> prox_coupling;
  std::function<ExtendedReal(const Vec&)> g_value;
  std::function<Vec(double, const Vec&)> prox_g;

  double L_yx = 0.0;  ///< cross-Lipschitz constant of grad_y_phi in x
  double L_yy = 0.0;  ///< Lipschitz constant of grad_y_phi in y
  double mu = 0.0;    ///< strong-convexity modulus of Phi(., y)
  double nu = 0.0;    ///< strong-convexity modulus of g

  std::optional<std::pair<Vec, Vec>> saddle;  ///< known (x*, y*), if any
  std::optional<double> f_star;               ///< f(x*, y*), if known

  std::size_t dim_x = 1;
  std::size_t dim_y = 1;
};

/// f(x,y) = Phi(x,y) - g(y).
inline ExtendedReal f_value(const SaddleProblem& p, const Vec& x, const Vec& y) {
  return p.phi_value(x, y) - p.g_value(y);
}

struct LipschitzReport {
  double max_violation = 0.0;  ///< max over pairs of ||dgrad|| - (L_yx ||dx|| + L_yy ||dy||)
  double scale = 0.0;          ///< largest gradient norm seen
  bool pass = true;
};

/// Samples pairs inside [-box_radius, box_radius]^n and checks the Lipschitz
/// condition on grad_y_phi against the stated constants.
inline LipschitzReport check_lipschitz(const SaddleProblem& p, int sample_count,
                                       double box_radius, std::uint64_t rng_seed) {
  SampleRng rng(rng_seed);
  LipschitzReport report;
  report.max_violation = -std::numeric_limits<double>::infinity();
  for (int s = 0; s < sample_count; ++s) {
    Vec x = rng.uniform_vec(p.dim_x, -box_radius, box_radius);
    Vec x2 = rng.uniform_vec(p.dim_x, -box_radius, box_radius);
    Vec y = rng.uniform_vec(p.dim_y, -box_radius, box_radius);
    Vec y2 = rng.uniform_vec(p.dim_y, -box_radius, box_radius);
    Vec g1 = p.grad_y_phi(x, y);
    Vec g2 = p.grad_y_phi(x2, y2);
    report.scale = std::max({report.scale, norm(g1), norm(g2)});
    double lhs = dist(g1, g2);
    double rhs = p.L_yx * dist(x, x2) + p.L_yy * dist(y, y2);
    report.max_violation = std::max(report.max_violation, lhs - rhs);
  }
  report.pass = report.max_violation <= 1e-9 * (1.0 + report.scale);
  return report;
}

}  // namespace ogaprox
