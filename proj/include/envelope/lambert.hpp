#pragma once

#include <cmath>
#include <limits>

#include "envelope/errors.hpp"

namespace envelope {

/// Principal branch W0 of the Lambert function: w e^w = x, w >= -1,
/// defined for x >= -1/e.  Halley iteration from a piecewise initial
/// guess; full double precision in at most a handful of steps.
inline double lambert_w0(double x) {
  const double inv_e = 1.0 / M_E;
  if (std::isnan(x)) throw DomainError("lambert_w0: NaN argument");
  if (x < -inv_e) {
    if (x > -inv_e - 1e-14 * inv_e) x = -inv_e;  // absorb roundoff at the branch point
    else throw DomainError("lambert_w0: argument below -1/e");
  }
  if (x == 0.0) return 0.0;
  if (x == -inv_e) return -1.0;

  double w;
  if (x < -0.2) {
    // Series around the branch point in p = sqrt(2(ex+1)).
    const double p = std::sqrt(2.0 * (M_E * x + 1.0));
    w = -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p;
  } else if (x < 3.0) {
    // Crude rational seed; Halley cleans it up.
    w = x * (1.0 - x * (1.0 - 1.5 * x) / (1.0 + x + x * x));
    if (x > 0.5) w = std::log1p(x) * (1.0 - std::log1p(std::log1p(x)) / (2.0 + std::log1p(x)));
  } else {
    const double l1 = std::log(x);
    const double l2 = std::log(l1);
    w = l1 - l2 + l2 / l1;
  }

  for (int i = 0; i < 12; ++i) {
    const double ew = std::exp(w);
    const double f = w * ew - x;
    if (std::abs(f) <= 1e-16 * std::max(1.0, std::abs(x))) break;
    const double denom = ew * (w + 1.0) - (w + 2.0) * f / (2.0 * w + 2.0);
    const double step = f / denom;
    w -= step;
    if (w < -1.0) w = -1.0 + 0.25 * (std::abs(step));  // keep on the W0 branch
    if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(w))) break;
  }
  return w;
}

}  // namespace envelope
