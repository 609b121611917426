#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "envelope/combinatorics.hpp"
#include "envelope/errors.hpp"
#include "envelope/laws.hpp"

namespace envelope {

/// One K-body force: potential of the K-subset hyperradius
/// r_{i1..iK} = sqrt(sum of pairwise squared distances in the subset).
struct InteractionTerm {
  int K;
  PotentialLaw potential;
};

/// N identical particles in D dimensions with kinetic law T(p) and one or
/// more K-body hyperradius forces.  Immutable after construction.
struct SystemSpec {
  int N;
  int D;
  KineticLaw kinetic;
  std::vector<InteractionTerm> terms;

  SystemSpec(int n, int d, KineticLaw kin, std::vector<InteractionTerm> t)
      : N(n), D(d), kinetic(std::move(kin)), terms(std::move(t)) {
    if (N < 2) throw DomainError("system: N >= 2 required");
    if (D < 1) throw DomainError("system: D >= 1 required");
    if (terms.empty()) throw DomainError("system: at least one interaction term");
    validate(kinetic);
    for (const auto& term : terms) {
      if (term.K < 2 || term.K > N)
        throw DomainError("system: each K must lie in [2, N]");
      validate(term.potential);
      if (const auto* pk = std::get_if<PowerLawKinetic>(&kinetic)) {
        if (const auto* pv = std::get_if<PowerLawPotential>(&term.potential)) {
          if (!(pv->b > -pk->alpha))
            throw DomainError("system: power-law potential needs b > -alpha");
        }
      }
    }
  }
};

/// Internal quantum numbers {(n_i, l_i)} for the N-1 internal coordinates,
/// permutation symmetry sigma (+1 symmetric, -1 antisymmetric) and total L.
/// L is meaningful for the N = 3 eigenstate machinery.
struct StateSpec {
  std::vector<std::pair<int, int>> nl;  // (n_i, l_i), length N-1
  int sigma = +1;
  int L = 0;

  StateSpec(std::vector<std::pair<int, int>> qn, int sig = +1, int total_l = 0)
      : nl(std::move(qn)), sigma(sig), L(total_l) {
    if (nl.empty()) throw DomainError("state: needs at least one coordinate");
    for (auto [n, l] : nl)
      if (n < 0 || l < 0) throw DomainError("state: n_i, l_i >= 0 required");
    if (sigma != 1 && sigma != -1) throw DomainError("state: sigma must be +-1");
    if (L < 0) throw DomainError("state: L >= 0 required");
  }

  int n_sum() const {
    int s = 0;
    for (auto [n, l] : nl) s += n;
    return s;
  }
  int l_sum() const {
    int s = 0;
    for (auto [n, l] : nl) s += l;
    return s;
  }
};

struct QuantumNumbers {
  double Q;     // sum of (2 n_i + l_i + D/2)
  double Q0;    // orbital part, sum of (l_i + (D-2)/2)
  int Qstar;    // excitation band, Q - D(N-1)/2 = sum of (2 n_i + l_i)
  int parity;   // (-1)^{sum l_i} = (-1)^{Qstar}
};

inline QuantumNumbers quantum_numbers(const StateSpec& state, int D) {
  QuantumNumbers q{};
  const int ncoord = static_cast<int>(state.nl.size());
  q.Qstar = 2 * state.n_sum() + state.l_sum();
  q.Q = q.Qstar + 0.5 * D * ncoord;
  q.Q0 = state.l_sum() + 0.5 * (D - 2) * ncoord;
  q.parity = state.l_sum() % 2 == 0 ? +1 : -1;
  return q;
}

/// Squared K-subset hyperradius of a configuration: sum over pairs within
/// the subset of |r_i - r_j|^2.  Indices are zero-based and strictly
/// increasing.  Used by geometry self-tests only.
inline double hyperradius_squared(const std::vector<std::vector<double>>& positions,
                                  const std::vector<int>& subset) {
  for (std::size_t i = 1; i < subset.size(); ++i)
    if (subset[i] <= subset[i - 1])
      throw DomainError("hyperradius: subset must be strictly increasing");
  double total = 0.0;
  for (std::size_t i = 0; i < subset.size(); ++i) {
    for (std::size_t j = i + 1; j < subset.size(); ++j) {
      const auto& a = positions.at(subset[i]);
      const auto& b = positions.at(subset[j]);
      if (a.size() != b.size()) throw DomainError("hyperradius: dimension mismatch");
      for (std::size_t d = 0; d < a.size(); ++d) {
        const double diff = a[d] - b[d];
        total += diff * diff;
      }
    }
  }
  return total;
}

// Benchmark three-body systems: nonrelativistic kinematics with a single
// K = 3 hyperradius force.

inline SystemSpec linear_three_body() {
  return SystemSpec(3, 3, nonrelativistic_kinetic(),
                    {{3, PowerLawPotential{0.5, 1.0}}});
}

inline SystemSpec coulomb_three_body() {
  return SystemSpec(3, 3, nonrelativistic_kinetic(),
                    {{3, PowerLawPotential{3.0, -1.0}}});
}

inline SystemSpec gaussian_three_body(double a = 200.0, double b = 1.0) {
  return SystemSpec(3, 3, nonrelativistic_kinetic(),
                    {{3, ExponentialWell{a, b, 2.0}}});
}

}  // namespace envelope
