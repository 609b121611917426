#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "envelope/errors.hpp"
#include "envelope/ho_basis.hpp"
#include "envelope/ho_radial.hpp"
#include "envelope/solver.hpp"
#include "envelope/system.hpp"

namespace envelope {

/// Orbital content l1 + l2 shared by every component of the state, when
/// there is one.  States mixing different orbital contents cannot be
/// assigned a single modified count, so their observables are defined
/// only at phi = 2.
inline std::optional<int> uniform_orbital_content(const SymmetrizedState& state) {
  std::optional<int> content;
  for (std::size_t i = 0; i < state.states.size(); ++i) {
    if (std::abs(state.coeff[i]) < 1e-9) continue;
    const int lsum = state.states[i].l1 + state.states[i].l2;
    if (!content) content = lsum;
    else if (*content != lsum) return std::nullopt;
  }
  return content;
}

/// <r^k> on a symmetrized eigenstate: the coefficient-weighted sum of
/// first-coordinate moments.  By symmetry the interparticle distance
/// reduces to the first internal coordinate, so no cross integrals appear.
inline double observable_rk(const SymmetrizedState& state, double k) {
  if (!(state.lambda1 > 0.0))
    throw DomainError("observable_rk: state has no scale attached");
  double total = 0.0;
  for (std::size_t i = 0; i < state.states.size(); ++i) {
    const double c = state.coeff[i];
    if (c == 0.0) continue;
    total += c * c * radial_moment(state.states[i].n1, state.states[i].l1, k,
                                   state.lambda1);
  }
  return total;
}

/// Size-only approximation <f(r)> ~ f(rho0), here f = r^k.
inline double observable_approx(double rho0, double k) {
  if (!(rho0 > 0.0)) throw DomainError("observable_approx: rho0 > 0 required");
  return std::pow(rho0, k);
}

/// Scale ratio between the closed-form eigenstate and a reference scale z.
inline double compute_nu(double Q_eff, double rho0, double z) {
  if (!(Q_eff > 0.0) || !(rho0 > 0.0) || !(z > 0.0))
    throw DomainError("compute_nu: positive arguments required");
  return std::sqrt(0.5 * Q_eff) / (rho0 * z);
}

/// Builds the symmetrized eigenstate of a solved level: geometric
/// coefficients from the band symmetrizer, scale from the level's
/// (Q_eff, rho0).  `index` selects among degenerate symmetric states.
/// Away from phi = 2 the state must have uniform orbital content.
inline SymmetrizedState et_eigenstate(const SystemSpec& system, const StateSpec& state,
                                      const SolvedState& solved, int index = 0) {
  if (system.N != 3 || system.D != 3)
    throw UnsupportedSystemError("et_eigenstate: eigenstate machinery is N = 3, D = 3");
  const QuantumNumbers qn = quantum_numbers(state, system.D);
  auto candidates = symmetrize(qn.Qstar, state.L, state.sigma);
  if (index < 0 || index >= static_cast<int>(candidates.size()))
    throw DomainError("et_eigenstate: no symmetrized state at this index");
  SymmetrizedState out = candidates[index];
  if (solved.phi != 2.0 && !uniform_orbital_content(out))
    throw MixedQ0Error(
        "et_eigenstate: state mixes orbital contents; observables need phi = 2");
  out.lambda1 = scale_parameters(system.N, solved.Q_eff, solved.solution.rho0)[0];
  return out;
}

/// One moment, both routes, with the per-component breakdown.
struct ObservableReport {
  double k = 0.0;
  double exact = 0.0;
  double approx = 0.0;
  struct Component {
    CoupledBasisState state;
    double weight;   // c_s^2
    double moment;   // <r^k> of the component
  };
  std::vector<Component> components;
};

inline ObservableReport observable_report(const SymmetrizedState& state, double k,
                                          double rho0) {
  ObservableReport rep;
  rep.k = k;
  rep.exact = observable_rk(state, k);
  rep.approx = observable_approx(rho0, k);
  for (std::size_t i = 0; i < state.states.size(); ++i) {
    const double c = state.coeff[i];
    if (std::abs(c) < 1e-12) continue;
    rep.components.push_back(
        {state.states[i], c * c,
         radial_moment(state.states[i].n1, state.states[i].l1, k, state.lambda1)});
  }
  return rep;
}

}  // namespace envelope
