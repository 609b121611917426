#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "envelope/errors.hpp"

namespace envelope {
namespace detail {

// ln(n!) table, grown on demand.  Magic-static init keeps it thread-safe.
inline double log_factorial(int n) {
  static const std::vector<double> table = [] {
    std::vector<double> t(512);
    t[0] = 0.0;
    for (std::size_t i = 1; i < t.size(); ++i) t[i] = t[i - 1] + std::log(double(i));
    return t;
  }();
  return table.at(static_cast<std::size_t>(n));
}

inline bool triangle(int a, int b, int c) {
  return std::abs(a - b) <= c && c <= a + b;
}

}  // namespace detail

/// Clebsch-Gordan coefficient <j1 m1 j2 m2 | J M> for integer angular
/// momenta, Condon-Shortley phases.  Racah's closed sum in log space.
inline double clebsch_gordan(int j1, int m1, int j2, int m2, int J, int M) {
  using detail::log_factorial;
  if (m1 + m2 != M) return 0.0;
  if (std::abs(m1) > j1 || std::abs(m2) > j2 || std::abs(M) > J) return 0.0;
  if (j1 < 0 || j2 < 0 || J < 0 || !detail::triangle(j1, j2, J)) return 0.0;

  const double pref =
      0.5 * (std::log(2.0 * J + 1.0) + log_factorial(j1 + j2 - J) +
             log_factorial(j1 - j2 + J) + log_factorial(-j1 + j2 + J) -
             log_factorial(j1 + j2 + J + 1) + log_factorial(j1 + m1) +
             log_factorial(j1 - m1) + log_factorial(j2 + m2) + log_factorial(j2 - m2) +
             log_factorial(J + M) + log_factorial(J - M));

  const int kmin = std::max({0, j2 - J - m1, j1 - J + m2});
  const int kmax = std::min({j1 + j2 - J, j1 - m1, j2 + m2});
  double sum = 0.0;
  for (int k = kmin; k <= kmax; ++k) {
    const double lg = log_factorial(k) + log_factorial(j1 + j2 - J - k) +
                      log_factorial(j1 - m1 - k) + log_factorial(j2 + m2 - k) +
                      log_factorial(J - j2 + m1 + k) + log_factorial(J - j1 - m2 + k);
    const double term = std::exp(pref - lg);
    sum += (k % 2 == 0) ? term : -term;
  }
  return sum;
}

/// Wigner 3j symbol for integer angular momenta.
inline double wigner_3j(int j1, int j2, int j3, int m1, int m2, int m3) {
  if (m1 + m2 + m3 != 0) return 0.0;
  const double cg = clebsch_gordan(j1, m1, j2, m2, j3, -m3);
  const int phase = (j1 - j2 - m3) % 2 == 0 ? 1 : -1;
  return phase * cg / std::sqrt(2.0 * j3 + 1.0);
}

/// Matrix element <l' m'|C^k_q|l m> of the Racah-normalized spherical
/// harmonic C^k_q = sqrt(4 pi / (2k+1)) Y_kq.
inline double racah_c_element(int lp, int mp, int k, int q, int l, int m) {
  if (mp != m + q) return 0.0;
  return std::sqrt((2.0 * l + 1.0) / (2.0 * lp + 1.0)) *
         clebsch_gordan(l, 0, k, 0, lp, 0) * clebsch_gordan(l, m, k, q, lp, mp);
}

}  // namespace envelope
