#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "ogaprox/engine.hpp"

namespace ogaprox {

/// Relative-plus-absolute slack tolerance for inequality checks.
inline double check_tol(double lhs, double rhs, double eps = 1e-8) {
  return eps * (1.0 + std::abs(lhs) + std::abs(rhs));
}

/// f(xhat, y*) - f(x*, yhat); nonnegative at a saddle point.
inline double minimax_gap(const SaddleProblem& p, const Vec& xhat, const Vec& yhat) {
  if (!p.saddle) throw MissingSaddle("minimax_gap needs a known saddle point");
  const auto& [xs, ys] = *p.saddle;
  return f_value(p, xhat, ys).value() - f_value(p, xs, yhat).value();
}

/// f(xhat, yhat) - f(x*, y*).
inline double value_error(const SaddleProblem& p, const Vec& xhat, const Vec& yhat) {
  if (!p.f_star) throw MissingSaddle("value_error needs a known saddle value");
  return f_value(p, xhat, yhat).value() - *p.f_star;
}

/// The certificate quantities a_k(x,y), b_{k+1}(x,y), c_k evaluated at a probe.
struct Certificate {
  double a_k = 0.0;
  double b_k1 = 0.0;
  double c_k = 0.0;
  std::pair<Vec, Vec> probe;
};

/// Replays a completed trace for certificate evaluation; gradients are
/// recomputed lazily and memoized (the engine itself never re-evaluates).
class CertContext {
 public:
  CertContext(const SaddleProblem& p, const Trace& t) : p_(p), t_(t) {
    if (t.xs.empty()) throw ConstraintViolated("certificate checks need trace history");
    grads_.resize(t.xs.size());
  }

  long max_index() const { return static_cast<long>(t_.xs.size()) - 1; }

  const Vec& x(long j) const { return t_.xs[static_cast<std::size_t>(std::max(j, 0L))]; }
  const Vec& y(long j) const { return t_.ys[static_cast<std::size_t>(std::max(j, 0L))]; }

  const Vec& grad(long j) const {
    auto idx = static_cast<std::size_t>(std::max(j, 0L));
    if (grads_[idx].empty()) grads_[idx] = p_.grad_y_phi(x(j), y(j));
    return grads_[idx];
  }

  /// q_j = grad(x^j, y^j) - grad(x^{j-1}, y^{j-1}); q_0 = 0.
  Vec q(long j) const {
    if (j <= 0) return Vec(p_.dim_y, 0.0);
    return sub(grad(j), grad(j - 1));
  }

  double sigma(long j) const { return t_.sigmas[static_cast<std::size_t>(j)]; }
  double tau(long j) const { return t_.taus[static_cast<std::size_t>(j)]; }
  double theta(long j) const { return t_.thetas[static_cast<std::size_t>(j)]; }
  double t(long j) const { return t_.ts[static_cast<std::size_t>(j)]; }
  double alpha(long j) const { return t_.alphas[static_cast<std::size_t>(j)]; }

  double a(long j, const Vec& px, const Vec& py) const {
    double v = sqdist(px, x(j)) / (2.0 * tau(j)) + sqdist(py, y(j)) / (2.0 * sigma(j)) +
               theta(j) * dot(q(j), sub(y(j), py));
    if (p_.L_yx > 0.0) v += theta(j) * p_.L_yx / (2.0 * alpha(j)) * sqdist(x(j), x(j - 1));
    v += theta(j) * p_.L_yy / 2.0 * sqdist(y(j), y(j - 1));
    return v;
  }

  double b(long j, const Vec& px, const Vec& py) const {
    double v = sqdist(px, x(j + 1)) / (2.0 * tau(j)) +
               0.5 * (1.0 / sigma(j) + p_.nu) * sqdist(py, y(j + 1)) +
               dot(q(j + 1), sub(y(j + 1), py));
    if (p_.L_yx > 0.0) v += p_.L_yx / (2.0 * alpha(j + 1)) * sqdist(x(j + 1), x(j));
    v += p_.L_yy / 2.0 * sqdist(y(j + 1), y(j));
    return v;
  }

  double c(long j) const {
    double cx = 1.0 / tau(j);
    if (p_.L_yx > 0.0) cx -= p_.L_yx / alpha(j + 1);
    double cy = 1.0 / sigma(j) - p_.L_yy - theta(j) * (p_.L_yx * alpha(j) + p_.L_yy);
    return 0.5 * cx * sqdist(x(j + 1), x(j)) + 0.5 * cy * sqdist(y(j + 1), y(j));
  }

  const SaddleProblem& problem() const { return p_; }
  const Trace& trace() const { return t_; }

 private:
  const SaddleProblem& p_;
  const Trace& t_;
  mutable std::vector<Vec> grads_;
};

inline Certificate certificate(const CertContext& ctx, long j, const Vec& px, const Vec& py) {
  return Certificate{ctx.a(j, px, py), ctx.b(j, px, py), ctx.c(j), {px, py}};
}

/// rhs - lhs of the optimistic-term bound
/// |<q_k, y^k - y>| <= (L_yx/2)(alpha_k ||y - y^k||^2 + ||x^k - x^{k-1}||^2 / alpha_k)
///                     + (L_yy/2)(||y - y^k||^2 + ||y^k - y^{k-1}||^2).
inline double qk_bound_slack(const CertContext& ctx, long j, const Vec& py) {
  const auto& p = ctx.problem();
  double lhs = std::abs(dot(ctx.q(j), sub(ctx.y(j), py)));
  double rhs = p.L_yy / 2.0 * (sqdist(py, ctx.y(j)) + sqdist(ctx.y(j), ctx.y(j - 1)));
  if (p.L_yx > 0.0) {
    rhs += p.L_yx / 2.0 *
           (ctx.alpha(j) * sqdist(py, ctx.y(j)) + sqdist(ctx.x(j), ctx.x(j - 1)) / ctx.alpha(j));
  }
  return rhs - lhs;
}

/// Slack of the descent inequality
/// f(x^{k+1}, y) - f(x, y^{k+1}) <= a_k(x,y) - b_{k+1}(x,y) - c_k.
inline double descent_slack(const CertContext& ctx, long j, const Vec& px, const Vec& py) {
  const auto& p = ctx.problem();
  double lhs = f_value(p, ctx.x(j + 1), py).value() - f_value(p, px, ctx.y(j + 1)).value();
  return ctx.a(j, px, py) - ctx.b(j, px, py) - ctx.c(j) - lhs;
}

/// Slack of the telescoping inequality t_k b_{k+1}(x,y) >= t_{k+1} a_{k+1}(x,y).
inline double telescoping_slack(const CertContext& ctx, long j, const Vec& px, const Vec& py) {
  return ctx.t(j) * ctx.b(j, px, py) - ctx.t(j + 1) * ctx.a(j + 1, px, py);
}

/// Slack of c_k >= delta ((1/(2 tau_k))||dx||^2 + (1/(2 sigma_k))||dy||^2).
inline double ck_lower_slack(const CertContext& ctx, long j, double delta) {
  double floor = delta * (sqdist(ctx.x(j + 1), ctx.x(j)) / (2.0 * ctx.tau(j)) +
                          sqdist(ctx.y(j + 1), ctx.y(j)) / (2.0 * ctx.sigma(j)));
  return ctx.c(j) - floor;
}

/// Slacks of the two ergodic inequalities linking the averaged iterates to the
/// saddle value. Both are nonnegative under convexity/concavity.
struct ErgodicSlacks {
  double slack_x = 0.0;
  double slack_y = 0.0;
  double scale_x = 1.0;  ///< 1 + |lhs| + |rhs| of the x inequality
  double scale_y = 1.0;
};

inline ErgodicSlacks ergodic_inequalities(const SaddleProblem& p, const Trace& trace, long k) {
  if (!p.saddle || !p.f_star) throw MissingSaddle("ergodic inequalities need the saddle");
  if (k < 1 || static_cast<std::size_t>(k) >= trace.xs.size()) {
    throw ConstraintViolated("k out of trace range");
  }
  const auto& [xs, ys] = *p.saddle;
  const auto& row = trace.rows[static_cast<std::size_t>(k - 1)];
  const Vec& xhat = row.xhat;
  const Vec& yhat = row.yhat;

  long double sum_t = 0.0L, sum_x = 0.0L, sum_y = 0.0L;
  for (long j = 0; j < k; ++j) {
    long double tj = trace.ts[static_cast<std::size_t>(j)];
    const Vec& xj1 = trace.xs[static_cast<std::size_t>(j + 1)];
    const Vec& yj1 = trace.ys[static_cast<std::size_t>(j + 1)];
    sum_t += tj;
    sum_x += tj * static_cast<long double>(f_value(p, xj1, yhat).value() -
                                           f_value(p, xs, yj1).value());
    sum_y += tj * static_cast<long double>(f_value(p, xj1, ys).value() -
                                           f_value(p, xhat, yj1).value());
  }
  double fhat = f_value(p, xhat, yhat).value();
  ErgodicSlacks s;
  double rhs_x = static_cast<double>(sum_x / sum_t);
  double rhs_y = static_cast<double>(sum_y / sum_t);
  s.slack_x = rhs_x - (fhat - *p.f_star);
  s.slack_y = rhs_y - (*p.f_star - fhat);
  s.scale_x = 1.0 + std::abs(rhs_x) + std::abs(fhat - *p.f_star);
  s.scale_y = 1.0 + std::abs(rhs_y) + std::abs(*p.f_star - fhat);
  return s;
}

/// rhs - lhs of the accumulated gap bound
/// sum_{i<k} t_i (f(x^{i+1}, y) - f(x, y^{i+1}))
///   <= (t_0/(2 tau_0)) ||x - x^0||^2 + (t_0/(2 sigma_0)) ||y - y^0||^2.
inline double prop_inequality_check(const SaddleProblem& p, const Trace& trace,
                                    const Vec& px, const Vec& py, long k) {
  if (k < 1 || static_cast<std::size_t>(k) >= trace.xs.size()) {
    throw ConstraintViolated("k out of trace range");
  }
  long double lhs = 0.0L;
  for (long j = 0; j < k; ++j) {
    long double tj = trace.ts[static_cast<std::size_t>(j)];
    lhs += tj * static_cast<long double>(
                    f_value(p, trace.xs[static_cast<std::size_t>(j + 1)], py).value() -
                    f_value(p, px, trace.ys[static_cast<std::size_t>(j + 1)]).value());
  }
  double t0 = trace.ts[0];
  double rhs = t0 / (2.0 * trace.taus[0]) * sqdist(px, trace.xs[0]) +
               t0 / (2.0 * trace.sigmas[0]) * sqdist(py, trace.ys[0]);
  return rhs - static_cast<double>(lhs);
}

/// A theorem sandwich at iteration k. `printed_lower` is the lower bound with
/// the sign printed in the statements; `lower` uses the conservative form the
/// proofs support (plus inside the bracket).
struct Sandwich {
  double lower = 0.0;
  double upper = 0.0;
  double printed_lower = 0.0;
};

inline Sandwich bound_convex_concave(long k, double tau, double sigma, const Vec& x0,
                                     const Vec& y0, const Vec& xstar, const Vec& ystar,
                                     const Vec& xhat, const Vec& yhat) {
  double inv_k = 1.0 / static_cast<double>(k);
  Sandwich s;
  s.upper = inv_k * (sqdist(xstar, x0) / (2.0 * tau) + sqdist(yhat, y0) / (2.0 * sigma));
  s.lower = -inv_k * (sqdist(xhat, x0) / (2.0 * tau) + sqdist(ystar, y0) / (2.0 * sigma));
  s.printed_lower = s.lower;
  return s;
}

inline Sandwich bound_convex_strongly_concave(long k, double nu, double tau0, double sigma0,
                                              const Vec& x0, const Vec& y0, const Vec& xstar,
                                              const Vec& ystar, const Vec& xhat,
                                              const Vec& yhat) {
  double c = 6.0 / (nu * sigma0 * static_cast<double>(k) * static_cast<double>(k));
  Sandwich s;
  s.upper = c * (sqdist(xstar, x0) / tau0 + sqdist(yhat, y0) / sigma0);
  s.lower = -c * (sqdist(xhat, x0) / tau0 + sqdist(ystar, y0) / sigma0);
  s.printed_lower = -c * (sqdist(xhat, x0) / tau0 - sqdist(ystar, y0) / sigma0);
  return s;
}

inline Sandwich bound_linear(long k, double theta, double tau, double sigma, const Vec& x0,
                             const Vec& y0, const Vec& xstar, const Vec& ystar,
                             const Vec& xhat, const Vec& yhat) {
  double c = std::pow(theta, static_cast<double>(k - 1));
  Sandwich s;
  s.upper = c * (sqdist(xstar, x0) / (2.0 * tau) + sqdist(yhat, y0) / (2.0 * sigma));
  s.lower = -c * (sqdist(xhat, x0) / (2.0 * tau) + sqdist(ystar, y0) / (2.0 * sigma));
  s.printed_lower = -c * (sqdist(xhat, x0) / (2.0 * tau) - sqdist(ystar, y0) / (2.0 * sigma));
  return s;
}

enum class RateModel { Power, Geometric };

struct RateFit {
  RateModel model = RateModel::Power;
  double value = 0.0;     ///< power: log-log slope; geometric: per-step ratio
  double residual = 0.0;  ///< RMS residual of the fit in log space
  long points = 0;
};

/// Least-squares rate fit of |err| against k on [k_lo, k_hi].
/// Power model: slope of log|err| vs log k. Geometric: exp(slope of log|err| vs k).
inline RateFit fit_rate(const std::vector<long>& ks, const std::vector<double>& errs,
                        long k_lo, long k_hi, RateModel model) {
  std::vector<double> us, vs;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    if (ks[i] < k_lo || ks[i] > k_hi) continue;
    double e = std::abs(errs[i]);
    if (!(e > 1e-300) || !std::isfinite(e)) continue;
    us.push_back(model == RateModel::Power ? std::log(static_cast<double>(ks[i]))
                                           : static_cast<double>(ks[i]));
    vs.push_back(std::log(e));
  }
  if (us.size() < 10) throw InsufficientData("rate fit needs at least 10 usable points");
  double n = static_cast<double>(us.size());
  double su = 0, sv = 0, suu = 0, suv = 0;
  for (std::size_t i = 0; i < us.size(); ++i) {
    su += us[i];
    sv += vs[i];
    suu += us[i] * us[i];
    suv += us[i] * vs[i];
  }
  double slope = (n * suv - su * sv) / (n * suu - su * su);
  double intercept = (sv - slope * su) / n;
  double ss = 0;
  for (std::size_t i = 0; i < us.size(); ++i) {
    double r = vs[i] - (slope * us[i] + intercept);
    ss += r * r;
  }
  RateFit fit;
  fit.model = model;
  fit.value = model == RateModel::Power ? slope : std::exp(slope);
  fit.residual = std::sqrt(ss / n);
  fit.points = static_cast<long>(us.size());
  return fit;
}

/// Default fit window: drop the first 10% of iterations as transient.
inline RateFit fit_rate_trace(const Trace& trace, RateModel model,
                              double (*column)(const TraceRow&)) {
  std::vector<long> ks;
  std::vector<double> errs;
  for (const auto& row : trace.rows) {
    ks.push_back(row.k);
    errs.push_back(column(row));
  }
  long k_max = trace.rows.empty() ? 0 : trace.rows.back().k;
  long k_lo = std::max(1L, k_max / 10);
  return fit_rate(ks, errs, k_lo, k_max, model);
}

/// Fills each row's sandwich bounds and certificate slack (probe = saddle).
/// Requires the trace to have been run with history.
inline void annotate_trace(const SaddleProblem& p, Trace& trace) {
  if (trace.xs.empty() || !p.saddle) return;
  const auto& [xstar, ystar] = *p.saddle;
  const Vec& x0 = trace.xs[0];
  const Vec& y0 = trace.ys[0];

  const bool is_constant = std::holds_alternative<ConstantUnit>(trace.regime);
  const bool is_accel = std::holds_alternative<Accelerated>(trace.regime);
  const bool is_linear = std::holds_alternative<LinearRate>(trace.regime);

  CertContext ctx(p, trace);
  for (auto& row : trace.rows) {
    long k = row.k;
    if (is_constant) {
      auto s = bound_convex_concave(k, trace.taus[0], trace.sigmas[0], x0, y0, xstar, ystar,
                                    row.xhat, row.yhat);
      row.lower_bound = s.lower;
      row.upper_bound = s.upper;
    } else if (is_accel && k >= 2) {
      auto s = bound_convex_strongly_concave(k, p.nu, trace.taus[0], trace.sigmas[0], x0, y0,
                                             xstar, ystar, row.xhat, row.yhat);
      row.lower_bound = s.lower;
      row.upper_bound = s.upper;
    } else if (is_linear) {
      const auto& lr = std::get<LinearRate>(trace.regime);
      auto s = bound_linear(k, lr.theta, trace.taus[0], trace.sigmas[0], x0, y0, xstar, ystar,
                            row.xhat, row.yhat);
      row.lower_bound = s.lower;
      row.upper_bound = s.upper;
    }
    if (is_constant || is_accel) {
      long j = k - 1;
      double slack = std::min(qk_bound_slack(ctx, j, ystar),
                              descent_slack(ctx, j, xstar, ystar));
      slack = std::min(slack, ck_lower_slack(ctx, j, trace.delta));
      row.cert_slack = slack;
    }
  }
}

/// Convenience driver: run, then annotate bounds and certificate slacks.
inline Trace run_with_diagnostics(const SaddleProblem& p, const RegimeSpec& regime,
                                  const Vec& x0, const Vec& y0, long max_iters,
                                  const RunOptions& opts = {}) {
  Trace trace = run(p, regime, x0, y0, max_iters, opts);
  annotate_trace(p, trace);
  return trace;
}

}  // namespace ogaprox
