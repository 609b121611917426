#pragma once

#include <array>
#include <cstdint>

#include "envelope/errors.hpp"

namespace envelope {

inline constexpr int kBinomialMax = 64;

namespace detail {

// Pascal triangle up to 64; C(64,32) still fits in 64 bits.
inline const auto& pascal_table() {
  static const auto table = [] {
    std::array<std::array<std::uint64_t, kBinomialMax + 1>, kBinomialMax + 1> t{};
    for (int a = 0; a <= kBinomialMax; ++a) {
      t[a][0] = 1;
      for (int b = 1; b <= a; ++b)
        t[a][b] = t[a - 1][b - 1] + (b <= a - 1 ? t[a - 1][b] : 0);
    }
    return t;
  }();
  return table;
}

}  // namespace detail

/// Exact binomial coefficient C_a^b for 0 <= b <= a <= 64.
inline std::int64_t binomial(int a, int b) {
  if (b < 0 || a < b || a > kBinomialMax)
    throw DomainError("binomial: need 0 <= b <= a <= 64");
  return static_cast<std::int64_t>(detail::pascal_table()[a][b]);
}

}  // namespace envelope
