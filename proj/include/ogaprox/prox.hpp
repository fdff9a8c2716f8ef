#pragma once

#include <functional>
#include <string>
#include <vector>

#include "ogaprox/vec.hpp"

namespace ogaprox {

/// A proximity operator together with a label, pluggable into SaddleProblem.
struct ProxMap {
  std::function<Vec(double, const Vec&)> evaluator;
  std::string description;

  Vec operator()(double step, const Vec& anchor) const { return evaluator(step, anchor); }
};

/// Prox of the zero function: the identity map.
inline Vec prox_zero(double /*step*/, const Vec& anchor) { return anchor; }

/// Prox of g = (modulus/2) ||.||^2, i.e. anchor / (1 + step * modulus).
inline ProxMap prox_quadratic(double modulus) {
  return ProxMap{
      [modulus](double step, const Vec& anchor) {
        return scaled(anchor, 1.0 / (1.0 + step * modulus));
      },
      "prox of (nu/2)||.||^2, nu=" + std::to_string(modulus)};
}

/// Exact minimizer of (mu/2)||x||^2 + <A x, y> + (1/(2 tau)) ||x - anchor||^2,
/// namely (anchor - tau A^T y) / (1 + tau mu). A is row-major n2 x n1.
class BilinearCouplingProx {
 public:
  BilinearCouplingProx(std::vector<Vec> a_rows, double mu)
      : a_rows_(std::move(a_rows)), mu_(mu) {}

  Vec operator()(double tau, const Vec& y, const Vec& anchor) const {
    if (y.size() != a_rows_.size()) {
      throw DimensionMismatch("BilinearCouplingProx: dual dimension");
    }
    Vec aty(anchor.size(), 0.0);
    for (std::size_t r = 0; r < a_rows_.size(); ++r) {
      require_same_dim(a_rows_[r], anchor, "BilinearCouplingProx: primal dimension");
      for (std::size_t c = 0; c < anchor.size(); ++c) aty[c] += a_rows_[r][c] * y[r];
    }
    Vec out(anchor.size());
    double denom = 1.0 + tau * mu_;
    for (std::size_t c = 0; c < anchor.size(); ++c) out[c] = (anchor[c] - tau * aty[c]) / denom;
    return out;
  }

 private:
  std::vector<Vec> a_rows_;
  double mu_;
};

inline BilinearCouplingProx prox_bilinear_coupling(std::vector<Vec> a_rows, double mu) {
  return BilinearCouplingProx(std::move(a_rows), mu);
}

}  // namespace ogaprox
