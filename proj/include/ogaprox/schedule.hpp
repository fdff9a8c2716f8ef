#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <variant>

#include "ogaprox/errors.hpp"
#include "ogaprox/problem.hpp"

namespace ogaprox {

inline constexpr double kWeightSaturation = 1e300;
inline constexpr double kAdversarialZeroGuard = 1e-300;

/// Per-iteration step-size parameters. `t` saturates to +inf past
/// kWeightSaturation in the linear regime; `t_ratio` (= t_k / t_{k-1}) stays
/// exact and is what the ergodic accumulator consumes.
struct ScheduleState {
  long k = 0;
  double sigma = 0.0;
  double tau = 0.0;
  double theta = 1.0;
  double t = 1.0;
  double t_ratio = 1.0;
  double alpha = 0.0;
  double delta = std::numeric_limits<double>::quiet_NaN();
};

struct ConstantUnit {
  double tau;
  double sigma;
  double c_alpha;
};

struct Accelerated {
  double tau0;
  double sigma0;
  double c_alpha;
};

struct LinearRate {
  double theta;
  double alpha;
};

struct Adversarial {
  double epsilon;
};

using RegimeSpec = std::variant<ConstantUnit, Accelerated, LinearRate, Adversarial>;

inline const char* regime_name(const RegimeSpec& r) {
  if (std::holds_alternative<ConstantUnit>(r)) return "constant";
  if (std::holds_alternative<Accelerated>(r)) return "accelerated";
  if (std::holds_alternative<LinearRate>(r)) return "linear";
  return "adversarial";
}

inline double default_c_alpha(double L_yx) { return L_yx > 0.0 ? 2.0 * L_yx : 1.0; }

/// Default constant-regime steps: sigma = tau = 0.9 / sqrt(c_alpha L_yx + 2 L_yy)
/// when the denominator is positive, else 1.
inline double default_constant_step(double c_alpha, double L_yx, double L_yy) {
  double d = c_alpha * L_yx + 2.0 * L_yy;
  return d > 0.0 ? 0.9 / std::sqrt(d) : 1.0;
}

/// delta := min{1 - L_yx/c_alpha, 1 - (c_alpha L_yx tau0 + 2 L_yy) sigma0}.
inline double validate_constant_unit(double tau, double sigma, double c_alpha,
                                     double L_yx, double L_yy) {
  if (tau <= 0.0 || sigma <= 0.0) throw ConstraintViolated("step sizes must be positive");
  if (!(c_alpha > L_yx)) throw ConstraintViolated("c_alpha must exceed L_yx");
  double coupling = (c_alpha * L_yx * tau + 2.0 * L_yy) * sigma;
  if (coupling >= 1.0) {
    throw ConstraintViolated("(c_alpha L_yx tau + 2 L_yy) sigma must be < 1");
  }
  return std::min(1.0 - L_yx / c_alpha, 1.0 - coupling);
}

/// sigma0 cap for the accelerated regime: (9 + 3 sqrt(13)) / (2 nu).
inline double accelerated_sigma0_cap(double nu) {
  return (9.0 + 3.0 * std::sqrt(13.0)) / (2.0 * nu);
}

inline double validate_accelerated(double tau0, double sigma0, double c_alpha,
                                   double L_yx, double L_yy, double nu) {
  if (!(nu > 0.0)) throw ConstraintViolated("accelerated regime needs nu > 0");
  if (sigma0 <= 0.0 || sigma0 > accelerated_sigma0_cap(nu)) {
    throw ConstraintViolated("sigma0 must lie in (0, (9+3*sqrt(13))/(2 nu)]");
  }
  return validate_constant_unit(tau0, sigma0, c_alpha, L_yx, L_yy);
}

/// One step of the accelerated recursion:
/// theta' = 1/sqrt(1 + nu sigma), tau' = tau/theta', sigma' = theta' sigma,
/// t' = t/theta', alpha' = c_alpha tau.
inline ScheduleState advance_accelerated(const ScheduleState& s, double nu, double c_alpha) {
  ScheduleState n = s;
  double theta_next = 1.0 / std::sqrt(1.0 + nu * s.sigma);
  n.k = s.k + 1;
  n.theta = theta_next;
  n.tau = s.tau / theta_next;
  n.sigma = theta_next * s.sigma;
  n.t = s.t / theta_next;
  n.t_ratio = 1.0 / theta_next;
  n.alpha = c_alpha * s.tau;
  if (!std::isfinite(n.t)) throw NonFiniteIterate("accelerated weight t_k overflow");
  return n;
}

/// theta_tilde := max{L_yx/(alpha mu + L_yx), (alpha L_yx + 2 L_yy)/(nu + alpha L_yx + 2 L_yy)}.
inline double theta_tilde(double alpha, double mu, double nu, double L_yx, double L_yy) {
  double a = L_yx > 0.0 ? L_yx / (alpha * mu + L_yx) : 0.0;
  double num = alpha * L_yx + 2.0 * L_yy;
  double b = num > 0.0 ? num / (nu + num) : 0.0;
  return std::max(a, b);
}

/// sigma = (1-theta)/(nu theta), tau = (1-theta)/(mu theta); both satisfy
/// 1 + nu sigma = 1/theta and 1 + mu tau = 1/theta by construction.
inline std::pair<double, double> linear_rate_params(double theta, double mu, double nu) {
  if (!(theta > 0.0 && theta < 1.0)) throw ConstraintViolated("theta must lie in (0,1)");
  if (!(mu > 0.0 && nu > 0.0)) throw ConstraintViolated("linear regime needs mu, nu > 0");
  double sigma = (1.0 - theta) / (nu * theta);
  double tau = (1.0 - theta) / (mu * theta);
  return {sigma, tau};
}

/// Adversarial tau_k = eps / (y_next (k+1)^2) when y_next is nonzero, else 0.
inline double adversarial_tau(double epsilon, long k, double y_next) {
  if (std::abs(y_next) <= kAdversarialZeroGuard) return 0.0;
  double kk = static_cast<double>(k + 1);
  return epsilon / (y_next * kk * kk);
}

inline double adversarial_epsilon_cap() { return 3.0 / (M_PI * M_PI); }

/// Validated schedule generator for one regime, bound to a problem's constants.
class Schedule {
 public:
  Schedule(RegimeSpec spec, const SaddleProblem& p) : spec_(std::move(spec)) {
    nu_ = p.nu;
    mu_ = p.mu;
    if (const auto* c = std::get_if<ConstantUnit>(&spec_)) {
      c_alpha_ = c->c_alpha;
      delta_ = validate_constant_unit(c->tau, c->sigma, c->c_alpha, p.L_yx, p.L_yy);
    } else if (const auto* a = std::get_if<Accelerated>(&spec_)) {
      c_alpha_ = a->c_alpha;
      delta_ = validate_accelerated(a->tau0, a->sigma0, a->c_alpha, p.L_yx, p.L_yy, p.nu);
    } else if (const auto* l = std::get_if<LinearRate>(&spec_)) {
      if (!(l->alpha > 0.0)) throw ConstraintViolated("alpha must be positive");
      double tilde = theta_tilde(l->alpha, p.mu, p.nu, p.L_yx, p.L_yy);
      if (!(l->theta > tilde && l->theta < 1.0)) {
        throw ConstraintViolated("theta must lie in (theta_tilde, 1)");
      }
    } else {
      const auto& adv = std::get<Adversarial>(spec_);
      if (!(adv.epsilon > 0.0 && adv.epsilon < adversarial_epsilon_cap())) {
        throw EpsilonOutOfRange("epsilon must lie in (0, 3/pi^2)");
      }
    }
  }

  const RegimeSpec& spec() const { return spec_; }
  bool adversarial() const { return std::holds_alternative<Adversarial>(spec_); }
  double delta() const { return delta_; }

  ScheduleState initial() const {
    ScheduleState s;
    s.delta = delta_;
    if (const auto* c = std::get_if<ConstantUnit>(&spec_)) {
      s.sigma = c->sigma;
      s.tau = c->tau;
      s.theta = 1.0;
      s.alpha = c->c_alpha * c->tau;
    } else if (const auto* a = std::get_if<Accelerated>(&spec_)) {
      s.sigma = a->sigma0;
      s.tau = a->tau0;
      s.theta = 1.0;
      s.alpha = a->c_alpha * a->tau0;
    } else if (const auto* l = std::get_if<LinearRate>(&spec_)) {
      auto [sigma, tau] = linear_rate_params(l->theta, mu_, nu_);
      s.sigma = sigma;
      s.tau = tau;
      s.theta = l->theta;
      s.t_ratio = 1.0;
      s.alpha = l->alpha;
    } else {
      const auto& adv = std::get<Adversarial>(spec_);
      s.sigma = adv.epsilon;
      s.theta = adv.epsilon;
      s.tau = std::numeric_limits<double>::quiet_NaN();  // chosen per step from y^{k+1}
      s.alpha = std::numeric_limits<double>::quiet_NaN();
    }
    return s;
  }

  ScheduleState advance(const ScheduleState& s) const {
    if (std::holds_alternative<Accelerated>(spec_)) {
      return advance_accelerated(s, nu_, c_alpha_);
    }
    ScheduleState n = s;
    n.k = s.k + 1;
    if (const auto* l = std::get_if<LinearRate>(&spec_)) {
      n.t_ratio = 1.0 / l->theta;
      n.t = s.t > kWeightSaturation ? std::numeric_limits<double>::infinity()
                                    : s.t / l->theta;
    } else {
      n.t = 1.0;
      n.t_ratio = 1.0;
    }
    return n;
  }

  /// alpha_{k+1} = c_alpha tau_k in the constant/accelerated regimes, the
  /// fixed alpha in the linear regime.
  double alpha_next(const ScheduleState& s) const {
    if (std::holds_alternative<LinearRate>(spec_)) return s.alpha;
    if (std::holds_alternative<Adversarial>(spec_)) {
      return std::numeric_limits<double>::quiet_NaN();
    }
    return c_alpha_ * s.tau;
  }

 private:
  RegimeSpec spec_;
  double nu_ = 0.0;
  double mu_ = 0.0;
  double c_alpha_ = 0.0;
  double delta_ = std::numeric_limits<double>::quiet_NaN();
};

}  // namespace ogaprox
