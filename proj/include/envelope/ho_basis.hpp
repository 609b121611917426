#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "envelope/angular.hpp"
#include "envelope/errors.hpp"
#include "envelope/ho_radial.hpp"

namespace envelope {

/// Two-coordinate oscillator product state coupled to total L; magnetic
/// quantum numbers suppressed.
struct CoupledBasisState {
  int n1, l1, n2, l2;
  int L;

  CoupledBasisState(int a, int b, int c, int d, int total_l)
      : n1(a), l1(b), n2(c), l2(d), L(total_l) {
    if (n1 < 0 || l1 < 0 || n2 < 0 || l2 < 0 || L < 0)
      throw DomainError("coupled state: nonnegative quantum numbers required");
    if (std::abs(l1 - l2) > L || L > l1 + l2)
      throw DomainError("coupled state: (l1, l2, L) violates the triangle rule");
  }

  int band() const { return 2 * (n1 + n2) + l1 + l2; }

  bool operator==(const CoupledBasisState& o) const {
    return n1 == o.n1 && l1 == o.l1 && n2 == o.n2 && l2 == o.l2 && L == o.L;
  }
};

/// All coupled states of one excitation band with total angular momentum L,
/// in lexicographic (n1, l1, n2, l2) order.
inline std::vector<CoupledBasisState> enumerate_band(int Qstar, int L) {
  if (Qstar < 0 || L < 0) throw DomainError("enumerate_band: Qstar, L >= 0");
  std::vector<CoupledBasisState> out;
  for (int n1 = 0; 2 * n1 <= Qstar; ++n1) {
    for (int l1 = 0; 2 * n1 + l1 <= Qstar; ++l1) {
      for (int n2 = 0; 2 * (n1 + n2) + l1 <= Qstar; ++n2) {
        const int l2 = Qstar - 2 * (n1 + n2) - l1;
        if (l2 < 0) continue;
        if (std::abs(l1 - l2) > L || L > l1 + l2) continue;
        out.emplace_back(n1, l1, n2, l2, L);
      }
    }
  }
  return out;
}

namespace detail {

// exp(A) by scaling and squaring with a plain Taylor series; our inputs are
// antisymmetric band generators of moderate norm.
inline Eigen::MatrixXd expm(const Eigen::MatrixXd& a) {
  const double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
  int squarings = 0;
  double scale = 1.0;
  while (norm * scale > 0.25) {
    scale *= 0.5;
    ++squarings;
  }
  const Eigen::MatrixXd b = a * scale;
  Eigen::MatrixXd term = Eigen::MatrixXd::Identity(a.rows(), a.cols());
  Eigen::MatrixXd sum = term;
  for (int k = 1; k <= 20; ++k) {
    term = (term * b) / static_cast<double>(k);
    sum += term;
  }
  for (int i = 0; i < squarings; ++i) sum = sum * sum;
  return sum;
}

// Angular factor of the scalar product u1.u2 between coupled states,
// evaluated at M = 0 (the element is M-independent).
inline double dot_angular_factor(int l1p, int l2p, int l1, int l2, int L) {
  double total = 0.0;
  for (int mu = -1; mu <= 1; ++mu) {
    for (int m1 = -l1; m1 <= l1; ++m1) {
      const int m2 = -m1;
      if (std::abs(m2) > l2) continue;
      const int m1p = m1 + mu;
      const int m2p = m2 - mu;
      if (std::abs(m1p) > l1p || std::abs(m2p) > l2p) continue;
      const double c_in = clebsch_gordan(l1, m1, l2, m2, L, 0);
      if (c_in == 0.0) continue;
      const double c_out = clebsch_gordan(l1p, m1p, l2p, m2p, L, 0);
      if (c_out == 0.0) continue;
      const double sign = (mu % 2 == 0) ? 1.0 : -1.0;
      total += sign * c_out * c_in * racah_c_element(l1p, m1p, 1, mu, l1, m1) *
               racah_c_element(l2p, m2p, 1, -mu, l2, m2);
    }
  }
  return total;
}

// Quantum-transfer generator of the two-coordinate mixing within one band:
// G = K+ - K+^T where K+ moves one quantum from coordinate 2 to 1.
// K+ elements are read off the scalar product u1.u2.
inline Eigen::MatrixXd band_mixing_generator(const std::vector<CoupledBasisState>& band) {
  const int dim = static_cast<int>(band.size());
  Eigen::MatrixXd kplus = Eigen::MatrixXd::Zero(dim, dim);
  for (int f = 0; f < dim; ++f) {
    const auto& sf = band[f];
    for (int i = 0; i < dim; ++i) {
      const auto& si = band[i];
      if (2 * sf.n1 + sf.l1 != 2 * si.n1 + si.l1 + 1) continue;
      if (std::abs(sf.l1 - si.l1) != 1 || std::abs(sf.l2 - si.l2) != 1) continue;
      const double r1 = radial_u_element(sf.n1, sf.l1, si.n1, si.l1);
      if (r1 == 0.0) continue;
      const double r2 = radial_u_element(sf.n2, sf.l2, si.n2, si.l2);
      if (r2 == 0.0) continue;
      const double ang = dot_angular_factor(sf.l1, sf.l2, si.l1, si.l2, sf.L);
      kplus(f, i) = 2.0 * r1 * r2 * ang;
    }
  }
  return kplus - kplus.transpose().eval();
}

}  // namespace detail

/// Matrix of the two-coordinate rotation by beta on one (Qstar, L) band:
/// B[t][s] = <t| R(beta) |s> where R maps the pair of coordinate vectors
/// through (cos b, sin b; -sin b, cos b).  Orthogonal by construction;
/// the identity at beta = 0.
inline Eigen::MatrixXd rotation_bracket_matrix(const std::vector<CoupledBasisState>& band,
                                               double beta) {
  return detail::expm(-beta * detail::band_mixing_generator(band));
}

/// Single rotation bracket between two coupled states sharing a band and L.
inline double moshinsky_bracket(const CoupledBasisState& out,
                                const CoupledBasisState& in, int L, double beta) {
  if (out.L != L || in.L != L)
    throw DomainError("moshinsky_bracket: states must carry the requested L");
  if (out.band() != in.band())
    throw DomainError("moshinsky_bracket: energy conservation violated");
  const auto band = enumerate_band(in.band(), L);
  const auto find = [&band](const CoupledBasisState& s) {
    for (std::size_t i = 0; i < band.size(); ++i)
      if (band[i] == s) return static_cast<int>(i);
    throw DomainError("moshinsky_bracket: state not in band");
  };
  const Eigen::MatrixXd b = rotation_bracket_matrix(band, beta);
  return b(find(out), find(in));
}

/// Permutation matrices for the two transpositions that move particle 3,
/// acting on one band.  Each is the rotation at one of the two kinematic
/// angles composed with the second-coordinate parity.
struct BandPermutations {
  Eigen::MatrixXd p13;
  Eigen::MatrixXd p23;
};

inline BandPermutations band_permutations(const std::vector<CoupledBasisState>& band) {
  const int dim = static_cast<int>(band.size());
  const Eigen::MatrixXd g = detail::band_mixing_generator(band);
  const Eigen::MatrixXd b13 = detail::expm(-(M_PI / 3.0) * g);
  const Eigen::MatrixXd b53 = detail::expm(-(5.0 * M_PI / 3.0) * g);
  BandPermutations out;
  out.p13 = b13;
  out.p23 = b53;
  for (int t = 0; t < dim; ++t) {
    const double parity = band[t].l2 % 2 == 0 ? 1.0 : -1.0;
    out.p13.row(t) *= parity;
    out.p23.row(t) *= parity;
  }
  return out;
}

/// Orthonormal permutation-adapted combination within one band: the list of
/// band members with their coefficients.  lambda1 is the physical scale,
/// attached once the state is tied to a solved level.
struct SymmetrizedState {
  int Qstar = 0;
  int L = 0;
  int sigma = +1;
  std::vector<CoupledBasisState> states;
  std::vector<double> coeff;
  double lambda1 = 0.0;

  double coefficient(const CoupledBasisState& s) const {
    for (std::size_t i = 0; i < states.size(); ++i)
      if (states[i] == s) return coeff[i];
    return 0.0;
  }
};

/// Basis of the sigma-symmetric subspace of band (Qstar, L): applies the
/// three-body symmetrizer to every band member, orthonormalizes the images,
/// and returns them ordered by the generating member with the fewest radial
/// quanta.  Forbidden configurations come back empty.
inline std::vector<SymmetrizedState> symmetrize(int Qstar, int L, int sigma) {
  if (sigma != 1 && sigma != -1) throw DomainError("symmetrize: sigma must be +-1");
  const auto band = enumerate_band(Qstar, L);
  const int dim = static_cast<int>(band.size());
  std::vector<SymmetrizedState> out;
  if (dim == 0) return out;

  const auto perms = band_permutations(band);
  Eigen::MatrixXd s_op = sigma * Eigen::MatrixXd::Identity(dim, dim) + perms.p13 + perms.p23;
  for (int c = 0; c < dim; ++c) {
    const double pref = sigma + (band[c].l1 % 2 == 0 ? 1.0 : -1.0);
    s_op.col(c) *= pref / 6.0;  // projector normalization
  }

  // Column order: fewest radial quanta first, then lexicographic.
  std::vector<int> order(dim);
  for (int i = 0; i < dim; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&band](int a, int b) {
    return band[a].n1 + band[a].n2 < band[b].n1 + band[b].n2;
  });

  std::vector<Eigen::VectorXd> basis;
  for (int idx : order) {
    Eigen::VectorXd v = s_op.col(idx);
    for (const auto& b : basis) v -= b.dot(v) * b;
    if (v.norm() < 1e-7) continue;
    v.normalize();
    for (const auto& b : basis) v -= b.dot(v) * b;  // second pass
    v.normalize();
    // Canonical overall sign: largest-magnitude coefficient positive.
    int imax = 0;
    for (int i = 1; i < dim; ++i)
      if (std::abs(v(i)) > std::abs(v(imax))) imax = i;
    if (v(imax) < 0.0) v = -v;
    basis.push_back(v);
  }

  for (const auto& v : basis) {
    SymmetrizedState st;
    st.Qstar = Qstar;
    st.L = L;
    st.sigma = sigma;
    st.states = band;
    st.coeff.assign(v.data(), v.data() + dim);
    out.push_back(std::move(st));
  }
  return out;
}

/// Oscillator scale parameters of the internal coordinates for a level with
/// count Q and size rho0: lambda_i = sqrt(i/(i+1) * 2Q/(N-1)) / rho0.
inline std::vector<double> scale_parameters(int N, double Q, double rho0) {
  if (N < 2) throw DomainError("scale_parameters: N >= 2");
  if (!(Q > 0.0) || !(rho0 > 0.0))
    throw DomainError("scale_parameters: Q, rho0 > 0 required");
  std::vector<double> lambdas;
  for (int i = 1; i <= N - 1; ++i)
    lambdas.push_back(std::sqrt(static_cast<double>(i) / (i + 1.0) * 2.0 * Q / (N - 1.0)) /
                      rho0);
  return lambdas;
}

}  // namespace envelope
