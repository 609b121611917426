#pragma once

// Test-only brute-force machinery: coupled two-coordinate oscillator
// wavefunctions evaluated pointwise, and rotation overlaps computed by
// tensor Gauss-Hermite quadrature over all six Cartesian coordinates.
// Deliberately independent of the band-generator construction it checks.

#include <array>
#include <cmath>
#include <complex>
#include <vector>

#include "envelope/angular.hpp"
#include "envelope/ho_basis.hpp"
#include "envelope/ho_radial.hpp"
#include "envelope/quadrature.hpp"

namespace envelope::testing {

using Vec3 = std::array<double, 3>;

inline std::complex<double> spherical_harmonic(int l, int m, const Vec3& v) {
  const double r = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
  if (r == 0.0) return l == 0 ? std::complex<double>(std::sqrt(1.0 / (4.0 * M_PI))) : 0.0;
  const double theta = std::acos(std::clamp(v[2] / r, -1.0, 1.0));
  const double phi = std::atan2(v[1], v[0]);
  const int am = std::abs(m);
  const double leg = std::sph_legendre(l, am, theta);
  std::complex<double> y = leg * std::exp(std::complex<double>(0.0, am * phi));
  if (m < 0) y = (am % 2 == 0 ? 1.0 : -1.0) * std::conj(y);
  return y;
}

/// psi_{n l m}(v) for the unit-scale 3-D oscillator.
inline std::complex<double> oscillator_wavefunction(int n, int l, int m, const Vec3& v) {
  const double r = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
  return radial_wavefunction(n, l, r) * spherical_harmonic(l, m, v);
}

/// Coupled state [phi_{n1 l1}(u1) phi_{n2 l2}(u2)]^{L M} at a 6-D point.
inline std::complex<double> coupled_wavefunction(const CoupledBasisState& s, int M,
                                                 const Vec3& u1, const Vec3& u2) {
  std::complex<double> total = 0.0;
  for (int m1 = -s.l1; m1 <= s.l1; ++m1) {
    const int m2 = M - m1;
    if (std::abs(m2) > s.l2) continue;
    const double cg = clebsch_gordan(s.l1, m1, s.l2, m2, s.L, M);
    if (cg == 0.0) continue;
    total += cg * oscillator_wavefunction(s.n1, s.l1, m1, u1) *
             oscillator_wavefunction(s.n2, s.l2, m2, u2);
  }
  return total;
}

/// <out| R(beta) |in> by 6-D quadrature: R sends (u1, u2) to
/// (c u1 + s u2, -s u1 + c u2) inside the ket.
inline double bracket_by_quadrature(const CoupledBasisState& out,
                                    const CoupledBasisState& in, double beta,
                                    int points_per_axis) {
  const auto gh = gauss_hermite(points_per_axis);
  const double c = std::cos(beta), s = std::sin(beta);
  const int n = points_per_axis;

  std::complex<double> total = 0.0;
  std::array<int, 6> idx{};
  const int M = 0;
  for (idx[0] = 0; idx[0] < n; ++idx[0])
    for (idx[1] = 0; idx[1] < n; ++idx[1])
      for (idx[2] = 0; idx[2] < n; ++idx[2])
        for (idx[3] = 0; idx[3] < n; ++idx[3])
          for (idx[4] = 0; idx[4] < n; ++idx[4])
            for (idx[5] = 0; idx[5] < n; ++idx[5]) {
              Vec3 u1{gh.nodes[idx[0]], gh.nodes[idx[1]], gh.nodes[idx[2]]};
              Vec3 u2{gh.nodes[idx[3]], gh.nodes[idx[4]], gh.nodes[idx[5]]};
              double w = 1.0, rsq = 0.0;
              for (int k = 0; k < 6; ++k) w *= gh.weights[idx[k]];
              for (int k = 0; k < 3; ++k) rsq += u1[k] * u1[k] + u2[k] * u2[k];
              Vec3 v1, v2;
              for (int k = 0; k < 3; ++k) {
                v1[k] = c * u1[k] + s * u2[k];
                v2[k] = -s * u1[k] + c * u2[k];
              }
              // Cancel the e^{-r^2} from the two Gaussians against the
              // Gauss-Hermite weight; the rest is polynomial.
              total += w * std::exp(rsq) * std::conj(coupled_wavefunction(out, M, u1, u2)) *
                       coupled_wavefunction(in, M, v1, v2);
            }
  return total.real();
}

}  // namespace envelope::testing
