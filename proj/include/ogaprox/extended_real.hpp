#pragma once

#include <cmath>
#include <limits>

#include "ogaprox/errors.hpp"

namespace ogaprox {

/// A real number extended with +inf / -inf. NaN is rejected at construction
/// and indeterminate forms (inf - inf) raise instead of propagating silently.
class ExtendedReal {
 public:
  ExtendedReal(double v) : v_(v) {  // NOLINT: implicit by design of the codomain
    if (std::isnan(v)) throw IndeterminateValue("ExtendedReal from NaN");
  }

  static ExtendedReal pos_inf() { return ExtendedReal(std::numeric_limits<double>::infinity()); }
  static ExtendedReal neg_inf() { return ExtendedReal(-std::numeric_limits<double>::infinity()); }

  bool finite() const { return std::isfinite(v_); }
  double value() const { return v_; }

  friend ExtendedReal operator+(ExtendedReal a, ExtendedReal b) {
    if (std::isinf(a.v_) && std::isinf(b.v_) && a.v_ != b.v_) {
      throw IndeterminateValue("inf + (-inf)");
    }
    return ExtendedReal(a.v_ + b.v_);
  }

  friend ExtendedReal operator-(ExtendedReal a, ExtendedReal b) {
    if (std::isinf(a.v_) && std::isinf(b.v_) && a.v_ == b.v_) {
      throw IndeterminateValue("inf - inf");
    }
    return ExtendedReal(a.v_ - b.v_);
  }

  friend bool operator==(ExtendedReal a, ExtendedReal b) { return a.v_ == b.v_; }
  friend bool operator<(ExtendedReal a, ExtendedReal b) { return a.v_ < b.v_; }
  friend bool operator<=(ExtendedReal a, ExtendedReal b) { return a.v_ <= b.v_; }

 private:
  double v_;
};

}  // namespace ogaprox
