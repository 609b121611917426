#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "envelope/errors.hpp"

namespace envelope {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

namespace detail {

// Golub-Welsch: nodes are eigenvalues of the Jacobi matrix of the
// orthogonal-polynomial recurrence, weights mu0 * (first component)^2.
inline QuadratureRule golub_welsch(const Eigen::VectorXd& diag,
                                   const Eigen::VectorXd& subdiag, double mu0) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, subdiag, Eigen::ComputeEigenvectors);
  if (es.info() != Eigen::Success)
    throw NonConvergenceError("quadrature: tridiagonal eigensolver failed");
  const int n = static_cast<int>(diag.size());
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    rule.nodes[i] = es.eigenvalues()(i);
    const double v0 = es.eigenvectors()(0, i);
    rule.weights[i] = mu0 * v0 * v0;
  }
  return rule;
}

}  // namespace detail

namespace detail {

inline double laguerre_poly(int n, double a, double x) {
  if (n == 0) return 1.0;
  double lm1 = 1.0, l = 1.0 + a - x;
  for (int k = 1; k < n; ++k) {
    const double lp1 = ((2.0 * k + a + 1.0 - x) * l - (k + a) * lm1) / (k + 1.0);
    lm1 = l;
    l = lp1;
  }
  return l;
}

}  // namespace detail

/// Generalized Gauss-Laguerre: integrates x^alpha e^{-x} f(x) on [0, inf),
/// exactly for polynomials of degree <= 2n-1.  alpha > -1.
/// Golub-Welsch nodes polished by Newton steps; weights from the classical
/// closed form, which keeps the rule accurate to the last digit.
inline QuadratureRule gauss_laguerre(int n, double alpha) {
  if (n < 1) throw DomainError("gauss_laguerre: n >= 1");
  if (!(alpha > -1.0)) throw DomainError("gauss_laguerre: alpha > -1");
  Eigen::VectorXd d(n), s(n - 1 > 0 ? n - 1 : 0);
  for (int i = 0; i < n; ++i) d(i) = 2.0 * i + alpha + 1.0;
  for (int i = 1; i < n; ++i) s(i - 1) = std::sqrt(i * (i + alpha));
  QuadratureRule rule = detail::golub_welsch(d, s, std::exp(std::lgamma(alpha + 1.0)));

  const double logc = std::lgamma(n + alpha + 1.0) - std::lgamma(n + 1.0) -
                      2.0 * std::log(n + 1.0);
  for (int i = 0; i < n; ++i) {
    double x = rule.nodes[i];
    for (int it = 0; it < 3; ++it) {
      const double f = detail::laguerre_poly(n, alpha, x);
      const double df = n == 0 ? -1.0 : -detail::laguerre_poly(n - 1, alpha + 1.0, x);
      if (df == 0.0) break;
      const double step = f / df;
      x -= step;
      if (std::abs(step) < 1e-16 * std::max(1.0, std::abs(x))) break;
    }
    rule.nodes[i] = x;
    const double lnp1 = detail::laguerre_poly(n + 1, alpha, x);
    rule.weights[i] = std::exp(logc + std::log(x)) / (lnp1 * lnp1);
  }
  return rule;
}

/// Gauss-Jacobi on [0, 1]: integrates (1-s)^a s^b f(s).
inline QuadratureRule gauss_jacobi01(int n, double a, double b) {
  if (n < 1) throw DomainError("gauss_jacobi01: n >= 1");
  if (!(a > -1.0) || !(b > -1.0)) throw DomainError("gauss_jacobi01: a, b > -1");
  Eigen::VectorXd d(n), s(n - 1 > 0 ? n - 1 : 0);
  const double apb = a + b;
  d(0) = (b - a) / (apb + 2.0);
  for (int k = 1; k < n; ++k) {
    const double den = (2.0 * k + apb) * (2.0 * k + apb + 2.0);
    d(k) = (b * b - a * a) / den;
  }
  for (int k = 1; k < n; ++k) {
    const double num = 4.0 * k * (k + a) * (k + b) * (k + apb);
    const double den = (2.0 * k + apb) * (2.0 * k + apb) * (2.0 * k + apb + 1.0) *
                       (2.0 * k + apb - 1.0);
    s(k - 1) = std::sqrt(num / den);
  }
  const double mu0 = std::exp((apb + 1.0) * std::log(2.0) + std::lgamma(a + 1.0) +
                              std::lgamma(b + 1.0) - std::lgamma(apb + 2.0));
  QuadratureRule rule = detail::golub_welsch(d, s, mu0);
  // Map [-1, 1] with weight (1-x)^a (1+x)^b onto [0, 1].
  const double scale = std::exp(-(apb + 1.0) * std::log(2.0));
  for (int i = 0; i < n; ++i) {
    rule.nodes[i] = 0.5 * (1.0 + rule.nodes[i]);
    rule.weights[i] *= scale;
  }
  return rule;
}

/// Gauss-Hermite: integrates e^{-x^2} f(x) on the real line.
inline QuadratureRule gauss_hermite(int n) {
  if (n < 1) throw DomainError("gauss_hermite: n >= 1");
  Eigen::VectorXd d = Eigen::VectorXd::Zero(n), s(n - 1 > 0 ? n - 1 : 0);
  for (int i = 1; i < n; ++i) s(i - 1) = std::sqrt(0.5 * i);
  return detail::golub_welsch(d, s, std::sqrt(M_PI));
}

}  // namespace envelope
