#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "envelope/combinatorics.hpp"
#include "envelope/errors.hpp"
#include "envelope/system.hpp"

namespace envelope {

enum class BoundCharacter { UpperBound, LowerBound, Unknown };

/// One solved level of the auxiliary-field system.  rho0 is the RMS
/// interparticle distance, p0 the per-particle RMS momentum in the CM frame.
struct EtSolution {
  double E = 0.0;
  double rho0 = 0.0;
  double p0 = 0.0;
  double phi = 2.0;                                     // quantum-number count used
  BoundCharacter character = BoundCharacter::Unknown;
  bool multiple_roots = false;                          // diagnostics
};

/// Modified global quantum number with tunable phi; phi = 2 recovers the
/// plain count sum(2 n_i + l_i + D/2).
inline double effective_Q(const StateSpec& state, int D, double phi) {
  if (!(phi > 0.0)) throw DomainError("effective_Q: phi > 0 required");
  const int ncoord = static_cast<int>(state.nl.size());
  return phi * state.n_sum() + state.l_sum() + 0.5 * (D + phi - 2.0) * ncoord;
}

namespace detail {

// Scalar balance equation in u = ln(rho): kinetic side minus the summed
// potential sides, with p0 eliminated through the uncertainty-style relation.
struct EtScalar {
  const SystemSpec& sys;
  double Q;
  double cn2;

  double p0(double rho) const { return Q / (std::sqrt(cn2) * rho); }

  double g(double u) const {
    const double rho = std::exp(u);
    const double p = p0(rho);
    double lhs = sys.N * p * kinetic_deriv(sys.kinetic, p);
    for (const auto& term : sys.terms) {
      const double cnk = static_cast<double>(binomial(sys.N, term.K));
      const double sck2 = std::sqrt(static_cast<double>(binomial(term.K, 2)));
      lhs -= cnk * sck2 * rho * potential_deriv(term.potential, sck2 * rho);
    }
    return lhs;
  }

  // d g / d u (u = ln rho), for the Newton polish.
  double dg(double u) const {
    const double rho = std::exp(u);
    const double p = p0(rho);
    const double t1 = kinetic_deriv(sys.kinetic, p);
    const double t2 = kinetic_deriv2(sys.kinetic, p);
    double d = -sys.N * p * (t1 + p * t2);  // dp/du = -p
    for (const auto& term : sys.terms) {
      const double cnk = static_cast<double>(binomial(sys.N, term.K));
      const double sck2 = std::sqrt(static_cast<double>(binomial(term.K, 2)));
      const double r = sck2 * rho;
      d -= cnk * (sck2 * rho * potential_deriv(term.potential, r) +
                  sck2 * rho * r * potential_deriv2(term.potential, r));
    }
    return d;
  }

  double energy(double rho) const {
    const double p = p0(rho);
    double e = sys.N * kinetic_value(sys.kinetic, p);
    for (const auto& term : sys.terms) {
      const double cnk = static_cast<double>(binomial(sys.N, term.K));
      const double sck2 = std::sqrt(static_cast<double>(binomial(term.K, 2)));
      e += cnk * potential_value(term.potential, sck2 * rho);
    }
    return e;
  }
};

inline double refine_root(const EtScalar& eq, double lo, double hi) {
  double glo = eq.g(lo);
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double gm = eq.g(mid);
    if (gm == 0.0) return mid;
    if ((gm > 0) == (glo > 0)) {
      lo = mid;
      glo = gm;
    } else {
      hi = mid;
    }
    if (hi - lo < 1e-13 * (1.0 + std::abs(lo))) break;
  }
  // Newton polish; fall back to the bisection midpoint if it wanders.
  double u = 0.5 * (lo + hi);
  for (int it = 0; it < 4; ++it) {
    const double d = eq.dg(u);
    if (d == 0.0) break;
    const double step = eq.g(u) / d;
    if (!std::isfinite(step) || std::abs(step) > (hi - lo) + 1e-12) break;
    u -= step;
  }
  if (u < lo || u > hi) u = 0.5 * (lo + hi);
  return u;
}

}  // namespace detail

/// Solves the three-equation system at effective count Q_eff.  Returns the
/// lowest-energy root; flags when the scalar equation had several.
inline EtSolution solve_et(const SystemSpec& system, double Q_eff) {
  if (!(Q_eff > 0.0)) throw DomainError("solve_et: Q_eff > 0 required");
  const double cn2 = static_cast<double>(binomial(system.N, 2));
  detail::EtScalar eq{system, Q_eff, cn2};

  // Expanding bracket scan in u = ln(rho); the log variable copes with the
  // scale spread between shallow Coulomb and tight Gaussian levels.
  constexpr int kGrid = 601;
  std::vector<double> roots;
  for (double range = 30.0; roots.empty() && range <= 480.0; range *= 2.0) {
    double uprev = -range;
    double gprev = eq.g(uprev);
    for (int i = 1; i < kGrid; ++i) {
      const double u = -range + 2.0 * range * i / (kGrid - 1);
      const double gu = eq.g(u);
      // Overflowed evaluations still carry a usable sign.  A strict sign
      // crossing is required: underflow plateaus (+-0) are not roots.
      if ((gprev > 0 && gu < 0) || (gprev < 0 && gu > 0))
        roots.push_back(detail::refine_root(eq, uprev, u));
      uprev = u;
      gprev = gu;
    }
  }
  if (roots.empty())
    throw NoBoundStateError("solve_et: no root in bracket (no bound state at this Q)");

  EtSolution best{};
  bool first = true;
  for (double u : roots) {
    const double rho = std::exp(u);
    const double e = eq.energy(rho);
    if (first || e < best.E) {
      best.E = e;
      best.rho0 = rho;
      best.p0 = eq.p0(rho);
    }
    first = false;
  }
  best.multiple_roots = roots.size() > 1;

  const double resid = eq.g(std::log(best.rho0));
  const double scale = system.N * best.p0 * std::abs(kinetic_deriv(system.kinetic, best.p0));
  if (!(std::abs(resid) <= 1e-9 * std::max(scale, 1e-300)))
    throw NonConvergenceError("solve_et: residual tolerance not met");
  return best;
}

/// Orbital-oscillation prediction of phi: solve at the orbital count Q0,
/// then read the radial stiffness around that configuration.
inline double dos_phi(const SystemSpec& system, const StateSpec& state) {
  const QuantumNumbers qn = quantum_numbers(state, system.D);
  if (!(qn.Q0 > 0.0)) throw DomainError("dos_phi: Q0 > 0 required");

  const EtSolution orbital = solve_et(system, qn.Q0);
  const double rho = orbital.rho0;
  const double p = orbital.p0;
  const double t1 = kinetic_deriv(system.kinetic, p);
  const double t2 = kinetic_deriv2(system.kinetic, p);

  double k = 2.0 * system.N * p * t1 / (rho * rho) +
             system.N * p * p * t2 / (rho * rho);
  for (const auto& term : system.terms) {
    const double cnk = static_cast<double>(binomial(system.N, term.K));
    const double ck2 = static_cast<double>(binomial(term.K, 2));
    k += ck2 * cnk * potential_deriv2(term.potential, std::sqrt(ck2) * rho);
  }
  if (!(k > 0.0))
    throw NegativeStiffnessError("dos_phi: non-positive radial stiffness");

  const double cn2 = static_cast<double>(binomial(system.N, 2));
  return std::sqrt(k / (system.N * cn2 * p * p * p * t1)) * qn.Q0;
}

/// Finds phi such that the level energy matches a known accurate one.
/// Monotone bracketed search in phi within (0.05, 10).
inline double calibrate_phi(const SystemSpec& system, const StateSpec& state,
                            double E_target) {
  const auto energy_at = [&](double phi) -> std::optional<double> {
    try {
      return solve_et(system, effective_Q(state, system.D, phi)).E;
    } catch (const NoBoundStateError&) {
      return std::nullopt;  // treat as "above any bound level"
    }
  };

  double lo = 0.05, hi = 10.0;
  auto f = [&](double phi) -> std::optional<double> {
    const auto e = energy_at(phi);
    if (!e) return std::nullopt;
    return *e - E_target;
  };
  auto flo = f(lo), fhi = f(hi);
  // A vanished level at large phi counts as overshooting the target.
  const double vlo = flo ? *flo : 1.0;
  const double vhi = fhi ? *fhi : 1.0;
  if ((vlo > 0) == (vhi > 0))
    throw NoRootError("calibrate_phi: target energy not bracketed in phi");

  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const auto fm = f(mid);
    const double vm = fm ? *fm : 1.0;
    if ((vm > 0) == (vlo > 0)) lo = mid;
    else hi = mid;
    if (hi - lo < 1e-13) break;
  }
  const double phi = 0.5 * (lo + hi);
  const auto e = energy_at(phi);
  if (!e || !(std::abs(*e - E_target) <= 1e-8 * std::max(1.0, std::abs(E_target))))
    throw NoRootError("calibrate_phi: could not match target energy");
  return phi;
}

namespace detail {

enum class Convexity { Concave, Convex, Linear, Indefinite };

// Convexity of f(x) = law(sqrt(x)); the sign of f'' decides the bound
// direction.  Built-ins classify analytically, custom laws by sampling.
inline Convexity classify_sqrt_composition(double d2_min, double d2_max, double scale) {
  const double tol = 1e-8 * std::max(scale, 1e-300);
  if (d2_max <= tol && d2_min >= -tol) return Convexity::Linear;
  if (d2_max <= tol) return Convexity::Concave;
  if (d2_min >= -tol) return Convexity::Convex;
  return Convexity::Indefinite;
}

inline Convexity kinetic_convexity(const KineticLaw& law) {
  if (const auto* pk = std::get_if<PowerLawKinetic>(&law)) {
    if (pk->alpha == 2.0) return Convexity::Linear;
    return pk->alpha < 2.0 ? Convexity::Concave : Convexity::Convex;
  }
  const auto& c = std::get<CustomKinetic>(law);
  double lo = 0.0, hi = 0.0, scale = 0.0;
  bool started = false;
  for (int i = 0; i < 64; ++i) {
    const double x = std::pow(10.0, -3.0 + 6.0 * i / 63.0);
    const double r = std::sqrt(x);
    // d2/dx2 [T(sqrt(x))] = (T''(r) - T'(r)/r) / (4 x)
    const double d2 = (c.deriv2(r) - c.deriv(r) / r) / (4.0 * x);
    if (!std::isfinite(d2)) continue;
    if (!started) { lo = hi = d2; started = true; }
    lo = std::min(lo, d2);
    hi = std::max(hi, d2);
    scale = std::max(scale, std::abs(c.deriv2(r)) + std::abs(c.deriv(r) / r));
  }
  if (!started) return Convexity::Indefinite;
  return classify_sqrt_composition(lo, hi, scale);
}

inline Convexity potential_convexity(const PotentialLaw& law) {
  if (const auto* pv = std::get_if<PowerLawPotential>(&law)) {
    if (pv->b == 2.0) return Convexity::Linear;
    return pv->b < 2.0 ? Convexity::Concave : Convexity::Convex;
  }
  if (const auto* ew = std::get_if<ExponentialWell>(&law)) {
    if (ew->gamma == 2.0) return Convexity::Concave;
    if (ew->gamma < 2.0) return Convexity::Concave;
    return Convexity::Indefinite;  // gamma > 2 changes sign across x
  }
  const auto& c = std::get<CustomPotential>(law);
  double lo = 0.0, hi = 0.0, scale = 0.0;
  bool started = false;
  for (int i = 0; i < 64; ++i) {
    const double x = std::pow(10.0, -3.0 + 6.0 * i / 63.0);
    const double r = std::sqrt(x);
    const double d2 = (c.deriv2(r) - c.deriv(r) / r) / (4.0 * x);
    if (!std::isfinite(d2)) continue;
    if (!started) { lo = hi = d2; started = true; }
    lo = std::min(lo, d2);
    hi = std::max(hi, d2);
    scale = std::max(scale, std::abs(c.deriv2(r)) + std::abs(c.deriv(r) / r));
  }
  if (!started) return Convexity::Indefinite;
  return classify_sqrt_composition(lo, hi, scale);
}

}  // namespace detail

/// Bound direction of the plain (phi = 2) energy: upper bound when every
/// law is a concave function of the squared variable, lower bound when all
/// are convex.  A vanishing curvature defers to the other laws.
inline BoundCharacter variational_character(const SystemSpec& system) {
  using detail::Convexity;
  std::vector<Convexity> classes;
  classes.push_back(detail::kinetic_convexity(system.kinetic));
  for (const auto& term : system.terms)
    classes.push_back(detail::potential_convexity(term.potential));

  bool any_concave = false, any_convex = false;
  for (auto c : classes) {
    if (c == Convexity::Indefinite) return BoundCharacter::Unknown;
    any_concave |= c == Convexity::Concave;
    any_convex |= c == Convexity::Convex;
  }
  if (any_concave && any_convex) return BoundCharacter::Unknown;
  if (any_convex) return BoundCharacter::LowerBound;
  return BoundCharacter::UpperBound;  // all concave or all linear (exact)
}

/// How to pick the quantum-number count for one level.
struct PhiMode {
  enum class Kind { Fixed, Dos, Calibrate } kind = Kind::Fixed;
  double value = 2.0;     // Fixed: phi itself; Calibrate: target energy
};

struct SolvedState {
  EtSolution solution;
  double phi;
  double Q_eff;
};

/// Full per-level pipeline: resolve phi, solve, attach the bound character
/// (guaranteed only at phi = 2).
inline SolvedState solve_state(const SystemSpec& system, const StateSpec& state,
                               const PhiMode& mode) {
  double phi = 2.0;
  switch (mode.kind) {
    case PhiMode::Kind::Fixed: phi = mode.value; break;
    case PhiMode::Kind::Dos: phi = dos_phi(system, state); break;
    case PhiMode::Kind::Calibrate: phi = calibrate_phi(system, state, mode.value); break;
  }
  SolvedState out{};
  out.phi = phi;
  out.Q_eff = effective_Q(state, system.D, phi);
  out.solution = solve_et(system, out.Q_eff);
  out.solution.phi = phi;
  out.solution.character = phi == 2.0 ? variational_character(system)
                                      : BoundCharacter::Unknown;
  return out;
}

}  // namespace envelope
