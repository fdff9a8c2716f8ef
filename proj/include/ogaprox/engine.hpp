#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "ogaprox/problem.hpp"
#include "ogaprox/schedule.hpp"

namespace ogaprox {

/// The algorithm's moving window: (x^{k-1}, x^k, y^{k-1}, y^k) plus the cached
/// gradient at (x^{k-1}, y^{k-1}). At k = 0 the previous pair equals the
/// current one, so q_0 = 0.
struct IterateState {
  Vec x_prev, x_cur, y_prev, y_cur;
  Vec grad_prev;  ///< grad_y Phi(x^{k-1}, y^{k-1})
  long k = 0;
};

inline IterateState make_initial_state(const SaddleProblem& p, Vec x0, Vec y0) {
  if (!all_finite(x0) || !all_finite(y0)) throw NonFiniteIterate("non-finite start point");
  IterateState s;
  s.grad_prev = p.grad_y_phi(x0, y0);
  s.x_prev = x0;
  s.x_cur = std::move(x0);
  s.y_prev = y0;
  s.y_cur = std::move(y0);
  s.k = 0;
  return s;
}

namespace detail {

inline IterateState step_common(const SaddleProblem& p, const IterateState& s,
                                double sigma, double theta, const Vec& grad_cur,
                                const Vec& y_next, double tau) {
  Vec x_next = tau == 0.0 ? s.x_cur : p.prox_coupling(tau, y_next, s.x_cur);
  if (!all_finite(y_next) || !all_finite(x_next)) {
    throw NonFiniteIterate("non-finite iterate at k=" + std::to_string(s.k));
  }
  (void)sigma;
  (void)theta;
  IterateState n;
  n.x_prev = s.x_cur;
  n.x_cur = std::move(x_next);
  n.y_prev = s.y_cur;
  n.y_cur = y_next;
  n.grad_prev = grad_cur;
  n.k = s.k + 1;
  return n;
}

inline Vec ascent_anchor(const IterateState& s, double sigma, double theta,
                         const Vec& grad_cur) {
  Vec anchor(s.y_cur.size());
  for (std::size_t i = 0; i < anchor.size(); ++i) {
    anchor[i] = s.y_cur[i] + sigma * ((1.0 + theta) * grad_cur[i] - theta * s.grad_prev[i]);
  }
  return anchor;
}

}  // namespace detail

/// One OGAProx step:
///   y^{k+1} = Prox_{sigma_k g}(y^k + sigma_k [(1+theta_k) grad(x^k,y^k) - theta_k grad(x^{k-1},y^{k-1})])
///   x^{k+1} = Prox of Phi(., y^{k+1}) + (1/(2 tau_k))||. - x^k||^2
/// Exactly one gradient evaluation; the other term comes from the cache.
inline IterateState ogaprox_step(const SaddleProblem& p, const IterateState& s,
                                 const ScheduleState& params) {
  Vec grad_cur = p.grad_y_phi(s.x_cur, s.y_cur);
  Vec y_next = p.prox_g(params.sigma, detail::ascent_anchor(s, params.sigma, params.theta, grad_cur));
  return detail::step_common(p, s, params.sigma, params.theta, grad_cur, y_next, params.tau);
}

/// The two-phase counterexample step: y^{k+1} is computed first with
/// sigma_k = theta_k = eps, then tau_k is chosen from y^{k+1}.
inline IterateState ogaprox_step_adversarial(const SaddleProblem& p, const IterateState& s,
                                             double epsilon, double* tau_used = nullptr) {
  if (p.dim_y != 1) throw OracleDomainError("adversarial step requires a scalar dual");
  Vec grad_cur = p.grad_y_phi(s.x_cur, s.y_cur);
  Vec y_next = p.prox_g(epsilon, detail::ascent_anchor(s, epsilon, epsilon, grad_cur));
  double tau = adversarial_tau(epsilon, s.k, y_next[0]);
  if (tau_used != nullptr) *tau_used = tau;
  return detail::step_common(p, s, epsilon, epsilon, grad_cur, y_next, tau);
}

/// Streaming weighted averages x_hat, y_hat. The weight sum is kept as a
/// scale-managed pair (mantissa, power-of-two shift) so geometrically growing
/// weights t_k = theta^{-k} never overflow; rescaling multiplies by exact
/// powers of two and does not perturb the mean.
class ErgodicAccumulator {
 public:
  /// Feed (t_k, x^{k+1}, y^{k+1}) with the raw weight.
  void add(double t, const Vec& x, const Vec& y) { push(std::ldexp(t, -shift_), x, y); }

  /// Feed with the ratio t_k / t_{k-1} instead of the raw weight.
  void add_ratio(double ratio, const Vec& x, const Vec& y) {
    if (count_ == 0) throw ConstraintViolated("add_ratio before the first raw weight");
    push(last_t_ * ratio, x, y);
  }

  const Vec& mean_x() const { return mx_; }
  const Vec& mean_y() const { return my_; }
  long count() const { return count_; }

  /// Sum of weights; +inf if it exceeds the double range.
  double weight_sum() const { return std::ldexp(sum_, shift_); }
  /// log2 of the weight sum, usable even past the double range.
  double log2_weight_sum() const { return std::log2(sum_) + static_cast<double>(shift_); }

 private:
  void push(double t_scaled, const Vec& x, const Vec& y) {
    if (!(t_scaled > 0.0) || !std::isfinite(t_scaled)) {
      throw ConstraintViolated("ergodic weight must be positive and finite");
    }
    if (count_ == 0) {
      mx_ = x;
      my_ = y;
      sum_ = t_scaled;
    } else {
      sum_ += t_scaled;
      double w = t_scaled / sum_;
      for (std::size_t i = 0; i < mx_.size(); ++i) mx_[i] += w * (x[i] - mx_[i]);
      for (std::size_t i = 0; i < my_.size(); ++i) my_[i] += w * (y[i] - my_[i]);
    }
    last_t_ = t_scaled;
    ++count_;
    // keep the scaled quantities comfortably inside the double range
    while (sum_ > 0x1.0p512) {
      sum_ = std::ldexp(sum_, -512);
      last_t_ = std::ldexp(last_t_, -512);
      shift_ += 512;
    }
  }

  Vec mx_, my_;
  double sum_ = 0.0;
  double last_t_ = 0.0;
  int shift_ = 0;
  long count_ = 0;
};

/// One diagnostic record per iteration, indexed from k = 1.
struct TraceRow {
  long k = 0;
  double tau = 0.0, sigma = 0.0, theta = 0.0, t = 0.0;
  double x_norm = 0.0, y_norm = 0.0;
  Vec xhat, yhat;
  double xhat_norm = 0.0, yhat_norm = 0.0;
  double f_ergodic = std::numeric_limits<double>::quiet_NaN();
  double gap_ergodic = std::numeric_limits<double>::quiet_NaN();
  double value_error = std::numeric_limits<double>::quiet_NaN();
  double lower_bound = std::numeric_limits<double>::quiet_NaN();
  double upper_bound = std::numeric_limits<double>::quiet_NaN();
  double cert_slack = std::numeric_limits<double>::quiet_NaN();
};

/// Full run record: rows plus the iterate/schedule history the diagnostics
/// replay. Parameter arrays carry one extra entry (index max_iters) so
/// telescoping checks can reach a_{k+1} at the last step.
struct Trace {
  std::string problem_label;
  RegimeSpec regime{ConstantUnit{1.0, 1.0, 1.0}};
  double delta = std::numeric_limits<double>::quiet_NaN();

  std::vector<TraceRow> rows;

  std::vector<Vec> xs, ys;  ///< iterates 0..K
  std::vector<double> sigmas, taus, thetas, ts, alphas;  ///< per-k parameters, 0..K

  std::string error;        ///< nonempty if the run aborted
  std::string stop_reason;  ///< "max_iters", "observer", or the error tag
};

/// Observer: sees each completed row and state; returning false stops the run.
using Observer = std::function<bool(const TraceRow&, const IterateState&)>;

struct RunOptions {
  bool keep_history = true;
  std::vector<Observer> observers;
};

/// Drives steps 0..max_iters-1, maintaining the ergodic averages and one
/// trace row per iteration. Bounds and certificate slacks are filled in by
/// diagnostics (annotate_trace); they need the completed history.
inline Trace run(const SaddleProblem& p, const RegimeSpec& regime, const Vec& x0,
                 const Vec& y0, long max_iters, const RunOptions& opts = {}) {
  if (max_iters < 1) throw ConstraintViolated("max_iters must be >= 1");
  Schedule sched(regime, p);
  Trace trace;
  trace.regime = sched.spec();
  trace.delta = sched.delta();
  trace.rows.reserve(static_cast<std::size_t>(max_iters));

  IterateState state = make_initial_state(p, x0, y0);
  ScheduleState params = sched.initial();
  ErgodicAccumulator acc;

  if (opts.keep_history) {
    trace.xs.push_back(state.x_cur);
    trace.ys.push_back(state.y_cur);
  }

  const bool has_saddle = p.saddle.has_value();
  trace.stop_reason = "max_iters";
  for (long k = 0; k < max_iters; ++k) {
    double tau_used = params.tau;
    try {
      state = sched.adversarial()
                  ? ogaprox_step_adversarial(p, state, params.sigma, &tau_used)
                  : ogaprox_step(p, state, params);
    } catch (const std::exception& e) {
      trace.error = e.what();
      trace.stop_reason = "error";
      break;
    }

    if (k == 0) {
      acc.add(params.t, state.x_cur, state.y_cur);
    } else {
      acc.add_ratio(params.t_ratio, state.x_cur, state.y_cur);
    }

    TraceRow row;
    row.k = k + 1;
    row.tau = tau_used;
    row.sigma = params.sigma;
    row.theta = params.theta;
    row.t = params.t;
    row.x_norm = norm(state.x_cur);
    row.y_norm = norm(state.y_cur);
    row.xhat = acc.mean_x();
    row.yhat = acc.mean_y();
    row.xhat_norm = norm(row.xhat);
    row.yhat_norm = norm(row.yhat);
    row.f_ergodic = f_value(p, row.xhat, row.yhat).value();
    if (has_saddle) {
      const auto& [xs, ys] = *p.saddle;
      row.gap_ergodic = f_value(p, row.xhat, ys).value() - f_value(p, xs, row.yhat).value();
      if (p.f_star) row.value_error = row.f_ergodic - *p.f_star;
    }

    if (opts.keep_history) {
      trace.xs.push_back(state.x_cur);
      trace.ys.push_back(state.y_cur);
      trace.sigmas.push_back(params.sigma);
      trace.taus.push_back(tau_used);
      trace.thetas.push_back(params.theta);
      trace.ts.push_back(params.t);
      trace.alphas.push_back(params.alpha);
    }

    trace.rows.push_back(std::move(row));

    bool keep_going = true;
    for (const auto& obs : opts.observers) {
      if (!obs(trace.rows.back(), state)) keep_going = false;
    }
    if (!keep_going) {
      trace.stop_reason = "observer";
      break;
    }
    params = sched.advance(params);
  }

  if (opts.keep_history && trace.error.empty()) {
    // one extra parameter entry so a_{k+1} is reachable at the last step
    trace.sigmas.push_back(params.sigma);
    trace.taus.push_back(params.tau);
    trace.thetas.push_back(params.theta);
    trace.ts.push_back(params.t);
    trace.alphas.push_back(params.alpha);
  }
  return trace;
}

}  // namespace ogaprox
