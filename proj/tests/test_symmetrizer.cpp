#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "envelope/ho_basis.hpp"

using namespace envelope;

namespace {

// Compare a computed state against expected (state, coefficient) pairs,
// up to one global sign.
void check_state(const SymmetrizedState& st,
                 const std::vector<std::pair<CoupledBasisState, double>>& expected) {
  double sign = 0.0;
  for (const auto& [cs, c] : expected) {
    const double got = st.coefficient(cs);
    if (sign == 0.0 && std::abs(c) > 1e-12) sign = got * c > 0 ? 1.0 : -1.0;
    CHECK(got == Catch::Approx(sign * c).margin(1e-10));
  }
  // no components outside the expected list
  double expected_norm = 0.0;
  for (const auto& [cs, c] : expected) expected_norm += c * c;
  double norm = 0.0;
  for (double c : st.coeff) norm += c * c;
  CHECK(norm == Catch::Approx(1.0).epsilon(1e-12));
  CHECK(expected_norm == Catch::Approx(1.0).epsilon(1e-9));
}

}  // namespace

TEST_CASE("symmetric ground band") {
  auto states = symmetrize(0, 0, +1);
  REQUIRE(states.size() == 1);
  check_state(states[0], {{CoupledBasisState(0, 0, 0, 0, 0), 1.0}});
}

TEST_CASE("forbidden symmetric configurations are empty") {
  CHECK(symmetrize(1, 1, +1).empty());
  CHECK(symmetrize(2, 1, +1).empty());
  CHECK(symmetrize(3, 0, +1).empty());
  CHECK(symmetrize(3, 2, +1).empty());
}

TEST_CASE("symmetric band 2 states") {
  {
    auto states = symmetrize(2, 0, +1);
    REQUIRE(states.size() == 1);
    const double r = 1.0 / std::sqrt(2.0);
    check_state(states[0], {{CoupledBasisState(1, 0, 0, 0, 0), r},
                            {CoupledBasisState(0, 0, 1, 0, 0), r}});
  }
  {
    auto states = symmetrize(2, 2, +1);
    REQUIRE(states.size() == 1);
    const double r = 1.0 / std::sqrt(2.0);
    check_state(states[0], {{CoupledBasisState(0, 2, 0, 0, 2), r},
                            {CoupledBasisState(0, 0, 0, 2, 2), r}});
  }
}

TEST_CASE("symmetric band 3 states") {
  {
    auto states = symmetrize(3, 1, +1);
    REQUIRE(states.size() == 1);
    check_state(states[0], {{CoupledBasisState(0, 0, 1, 1, 1), -0.5},
                            {CoupledBasisState(0, 2, 0, 1, 1), 1.0 / std::sqrt(3.0)},
                            {CoupledBasisState(1, 0, 0, 1, 1), std::sqrt(5.0 / 12.0)}});
  }
  {
    auto states = symmetrize(3, 3, +1);
    REQUIRE(states.size() == 1);
    check_state(states[0], {{CoupledBasisState(0, 0, 0, 3, 3), 0.5},
                            {CoupledBasisState(0, 2, 0, 1, 3), -std::sqrt(3.0) / 2.0}});
  }
}

TEST_CASE("states with the wrong first-coordinate parity are annihilated") {
  // sigma + (-1)^{l1} = 0 kills the generator column outright.
  for (auto [qs, L] : {std::pair{3, 1}, {4, 2}, {5, 1}}) {
    for (int sigma : {+1, -1}) {
      for (const auto& st : symmetrize(qs, L, sigma)) {
        for (std::size_t i = 0; i < st.states.size(); ++i) {
          const int l1 = st.states[i].l1;
          if ((sigma == +1 && l1 % 2 == 1) || (sigma == -1 && l1 % 2 == 0))
            CHECK(std::abs(st.coeff[i]) < 1e-10);
        }
      }
    }
  }
}

TEST_CASE("symmetrized states are orthonormal and projector-stable") {
  for (int qs = 0; qs <= 6; ++qs) {
    for (int L = 0; L <= qs; ++L) {
      for (int sigma : {+1, -1}) {
        const auto states = symmetrize(qs, L, sigma);
        if (states.empty()) continue;
        const auto band = enumerate_band(qs, L);
        const auto perms = band_permutations(band);
        const int d = static_cast<int>(band.size());

        for (std::size_t a = 0; a < states.size(); ++a) {
          Eigen::VectorXd va = Eigen::Map<const Eigen::VectorXd>(states[a].coeff.data(), d);
          for (std::size_t b = 0; b < states.size(); ++b) {
            Eigen::VectorXd vb = Eigen::Map<const Eigen::VectorXd>(states[b].coeff.data(), d);
            CHECK(va.dot(vb) == Catch::Approx(a == b ? 1.0 : 0.0).margin(1e-12));
          }
          // Each transposition fixes a symmetric vector and flips an
          // antisymmetric one, so sigma*v + P13 v + P23 v = 3 sigma v.
          Eigen::VectorXd image = sigma * va + perms.p13 * va + perms.p23 * va;
          CHECK((image - 3.0 * sigma * va).cwiseAbs().maxCoeff() < 1e-10);
        }
      }
    }
  }
}

TEST_CASE("antisymmetric states exist where expected") {
  // The fully antisymmetric three-body space is sparser; the lowest
  // appearance happens in band 2 with L = 1.
  CHECK(symmetrize(0, 0, -1).empty());
  CHECK(symmetrize(1, 1, -1).empty());
  auto band2 = symmetrize(2, 1, -1);
  CHECK(band2.size() == 1);
}

TEST_CASE("scale parameters") {
  {
    auto l = scale_parameters(3, 3.0, 2.182);
    REQUIRE(l.size() == 2);
    CHECK(l[0] == Catch::Approx(std::sqrt(1.5) / 2.182).epsilon(1e-12));
    CHECK(l[0] == Catch::Approx(0.5613).epsilon(1e-3));
    CHECK(l[1] == Catch::Approx(std::sqrt(2.0) / 2.182).epsilon(1e-12));
  }
  {
    auto l = scale_parameters(2, 1.0, 1.0);
    REQUIRE(l.size() == 1);
    CHECK(l[0] == Catch::Approx(1.0));
  }
  // N = 3 shortcut: lambda_1 = sqrt(Q/2) / rho0
  for (double q : {1.0, 3.0, 7.5}) {
    for (double rho : {0.3, 2.0}) {
      CHECK(scale_parameters(3, q, rho)[0] ==
            Catch::Approx(std::sqrt(0.5 * q) / rho).epsilon(1e-13));
    }
  }
}
