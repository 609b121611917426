#pragma once

#include <cmath>
#include <optional>

#include "envelope/combinatorics.hpp"
#include "envelope/errors.hpp"
#include "envelope/lambert.hpp"

namespace envelope {

/// Closed-form solution of the auxiliary-field system for one level.
struct ClosedForm {
  double E;
  double rho0;
};

/// Power-law kinetic T = F p^alpha with V = a sgn(b) r^b for a K-body
/// hyperradius force: the system solves in closed form.
inline ClosedForm powerlaw_solution(double F, double alpha, double a, double b,
                                    int N, int K, double Q_eff) {
  if (!(F > 0.0) || !(alpha > 0.0) || !(a > 0.0))
    throw DomainError("powerlaw_solution: F, alpha, a > 0 required");
  if (!(b > -alpha)) throw DomainError("powerlaw_solution: b > -alpha required");
  if (K < 2 || K > N) throw DomainError("powerlaw_solution: 2 <= K <= N required");
  if (!(Q_eff > 0.0)) throw DomainError("powerlaw_solution: Q_eff > 0 required");

  const double cnk = static_cast<double>(binomial(N, K));
  const double cn2 = static_cast<double>(binomial(N, 2));
  const double ck2 = static_cast<double>(binomial(K, 2));
  const double sgn = b >= 0 ? 1.0 : -1.0;

  ClosedForm out{};
  out.rho0 = std::pow(alpha * N * F * std::pow(Q_eff, alpha) /
                          (a * std::abs(b) * cnk * std::pow(cn2, 0.5 * alpha) *
                           std::pow(ck2, 0.5 * b)),
                      1.0 / (b + alpha));
  out.E = sgn * (b + alpha) *
          std::pow(std::pow(N * F / std::abs(b), b) * std::pow(a * cnk / alpha, alpha) *
                       std::pow(ck2 / cn2, 0.5 * alpha * b) *
                       std::pow(Q_eff, alpha * b),
                   1.0 / (b + alpha));
  return out;
}

/// Exponential well V = -a exp(-b r^gamma) with T = F p^alpha.  The level
/// exists only while the Lambert argument stays above -1/e; `delta` is
/// reported either way so callers can see how far past the edge they are.
struct ExponentialSolution {
  double delta;
  std::optional<ClosedForm> level;
};

inline ExponentialSolution exponential_solution(double F, double alpha, double a,
                                                double b, double gamma, int N, int K,
                                                double Q_eff) {
  if (!(F > 0.0) || !(alpha > 0.0) || !(a > 0.0) || !(b > 0.0) || !(gamma > 0.0))
    throw DomainError("exponential_solution: positive parameters required");
  if (K < 2 || K > N) throw DomainError("exponential_solution: 2 <= K <= N required");
  if (!(Q_eff > 0.0)) throw DomainError("exponential_solution: Q_eff > 0 required");

  const double cnk = static_cast<double>(binomial(N, K));
  const double cn2 = static_cast<double>(binomial(N, 2));
  const double ck2 = static_cast<double>(binomial(K, 2));

  const double inner = alpha * std::pow(b, alpha / gamma) * F / (a * gamma) *
                       (N / cnk) * std::pow(ck2 / cn2, 0.5 * alpha) *
                       std::pow(Q_eff, alpha);
  ExponentialSolution out{};
  out.delta = -gamma / (alpha + gamma) * std::pow(inner, gamma / (alpha + gamma));
  if (out.delta < -1.0 / M_E) return out;  // no bound state at this Q

  const double w = lambert_w0(out.delta);
  ClosedForm cf{};
  cf.rho0 = std::pow(-(alpha + gamma) / (gamma * b) * w, 1.0 / gamma) / std::sqrt(ck2);
  cf.E = -a * cnk * std::exp((alpha + gamma) / gamma * w) *
         ((alpha + gamma) / alpha * w + 1.0);
  out.level = cf;
  return out;
}

}  // namespace envelope
