#pragma once

#include <cmath>
#include <functional>
#include <variant>

#include "envelope/errors.hpp"

namespace envelope {

/// T(p) = F p^alpha.  Nonrelativistic kinematics is F = 1/2, alpha = 2.
struct PowerLawKinetic {
  double F;
  double alpha;
};

/// User-supplied kinetic law; first and second derivatives are mandatory
/// (no silent numerical differentiation anywhere in the solve path).
struct CustomKinetic {
  std::function<double(double)> value;
  std::function<double(double)> deriv;
  std::function<double(double)> deriv2;
};

using KineticLaw = std::variant<PowerLawKinetic, CustomKinetic>;

/// V(r) = a sgn(b) r^b with a > 0.  b > 0 confines, b < 0 attracts.
struct PowerLawPotential {
  double a;
  double b;
};

/// V(r) = -a exp(-b r^gamma), all parameters positive.
/// gamma = 2 is the Gaussian well.
struct ExponentialWell {
  double a;
  double b;
  double gamma;
};

struct CustomPotential {
  std::function<double(double)> value;
  std::function<double(double)> deriv;
  std::function<double(double)> deriv2;
};

using PotentialLaw = std::variant<PowerLawPotential, ExponentialWell, CustomPotential>;

inline KineticLaw nonrelativistic_kinetic() { return PowerLawKinetic{0.5, 2.0}; }

inline double kinetic_value(const KineticLaw& law, double p) {
  return std::visit(
      [p](const auto& l) -> double {
        using L = std::decay_t<decltype(l)>;
        if constexpr (std::is_same_v<L, PowerLawKinetic>)
          return l.F * std::pow(p, l.alpha);
        else
          return l.value(p);
      },
      law);
}

inline double kinetic_deriv(const KineticLaw& law, double p) {
  return std::visit(
      [p](const auto& l) -> double {
        using L = std::decay_t<decltype(l)>;
        if constexpr (std::is_same_v<L, PowerLawKinetic>)
          return l.F * l.alpha * std::pow(p, l.alpha - 1.0);
        else
          return l.deriv(p);
      },
      law);
}

inline double kinetic_deriv2(const KineticLaw& law, double p) {
  return std::visit(
      [p](const auto& l) -> double {
        using L = std::decay_t<decltype(l)>;
        if constexpr (std::is_same_v<L, PowerLawKinetic>)
          return l.F * l.alpha * (l.alpha - 1.0) * std::pow(p, l.alpha - 2.0);
        else
          return l.deriv2(p);
      },
      law);
}

inline double potential_value(const PotentialLaw& law, double r) {
  return std::visit(
      [r](const auto& l) -> double {
        using L = std::decay_t<decltype(l)>;
        if constexpr (std::is_same_v<L, PowerLawPotential>) {
          const double sgn = l.b >= 0 ? 1.0 : -1.0;
          return l.a * sgn * std::pow(r, l.b);
        } else if constexpr (std::is_same_v<L, ExponentialWell>) {
          return -l.a * std::exp(-l.b * std::pow(r, l.gamma));
        } else {
          return l.value(r);
        }
      },
      law);
}

inline double potential_deriv(const PotentialLaw& law, double r) {
  return std::visit(
      [r](const auto& l) -> double {
        using L = std::decay_t<decltype(l)>;
        if constexpr (std::is_same_v<L, PowerLawPotential>) {
          // sgn(b)*b = |b|, so V' > 0 for both signs of b.
          return l.a * std::abs(l.b) * std::pow(r, l.b - 1.0);
        } else if constexpr (std::is_same_v<L, ExponentialWell>) {
          const double e = std::exp(-l.b * std::pow(r, l.gamma));
          return l.a * l.b * l.gamma * std::pow(r, l.gamma - 1.0) * e;
        } else {
          return l.deriv(r);
        }
      },
      law);
}

inline double potential_deriv2(const PotentialLaw& law, double r) {
  return std::visit(
      [r](const auto& l) -> double {
        using L = std::decay_t<decltype(l)>;
        if constexpr (std::is_same_v<L, PowerLawPotential>) {
          return l.a * std::abs(l.b) * (l.b - 1.0) * std::pow(r, l.b - 2.0);
        } else if constexpr (std::is_same_v<L, ExponentialWell>) {
          const double rg = std::pow(r, l.gamma);
          const double e = std::exp(-l.b * rg);
          const double g = l.gamma;
          return l.a * l.b * g * e * std::pow(r, g - 2.0) *
                 ((g - 1.0) - l.b * g * rg);
        } else {
          return l.deriv2(r);
        }
      },
      law);
}

namespace detail {

// Derivatives of a custom law must agree with central finite differences
// on a fixed logarithmic grid.  Catches mismatched value/deriv bundles at
// construction instead of deep inside a solve.
template <typename Value, typename Deriv>
void check_derivative(const Value& f, const Deriv& df, const char* what) {
  for (int i = 0; i < 16; ++i) {
    const double x = std::pow(10.0, -2.0 + 4.0 * i / 15.0);
    const double h = 1e-6 * x;
    const double fd = (f(x + h) - f(x - h)) / (2.0 * h);
    const double an = df(x);
    const double scale = std::max({std::abs(an), std::abs(fd), 1e-12});
    if (std::abs(an - fd) > 2e-5 * scale)
      throw DomainError(std::string(what) +
                        ": analytic derivative disagrees with finite differences");
  }
}

}  // namespace detail

/// Validates parameter ranges and, for custom laws, derivative consistency.
inline void validate(const KineticLaw& law) {
  std::visit(
      [](const auto& l) {
        using L = std::decay_t<decltype(l)>;
        if constexpr (std::is_same_v<L, PowerLawKinetic>) {
          if (!(l.F > 0.0) || !(l.alpha > 0.0))
            throw DomainError("kinetic law: F > 0 and alpha > 0 required");
        } else {
          if (!l.value || !l.deriv || !l.deriv2)
            throw DomainError("custom kinetic law: all three callables required");
          detail::check_derivative(l.value, l.deriv, "kinetic T'");
          detail::check_derivative(l.deriv, l.deriv2, "kinetic T''");
        }
      },
      law);
}

inline void validate(const PotentialLaw& law) {
  std::visit(
      [](const auto& l) {
        using L = std::decay_t<decltype(l)>;
        if constexpr (std::is_same_v<L, PowerLawPotential>) {
          if (!(l.a > 0.0)) throw DomainError("power-law potential: a > 0 required");
          if (l.b == 0.0) throw DomainError("power-law potential: b must be nonzero");
        } else if constexpr (std::is_same_v<L, ExponentialWell>) {
          if (!(l.a > 0.0) || !(l.b > 0.0) || !(l.gamma > 0.0))
            throw DomainError("exponential well: a, b, gamma > 0 required");
        } else {
          if (!l.value || !l.deriv || !l.deriv2)
            throw DomainError("custom potential: all three callables required");
          detail::check_derivative(l.value, l.deriv, "potential V'");
          detail::check_derivative(l.deriv, l.deriv2, "potential V''");
        }
      },
      law);
}

}  // namespace envelope
