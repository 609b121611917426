#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "envelope/combinatorics.hpp"
#include "envelope/laws.hpp"
#include "envelope/system.hpp"

using namespace envelope;

TEST_CASE("binomial coefficients are exact") {
  CHECK(binomial(3, 2) == 3);
  CHECK(binomial(3, 3) == 1);
  CHECK(binomial(10, 4) == 210);
  CHECK(binomial(0, 0) == 1);
  CHECK(binomial(64, 32) == 1832624140942590534LL);
  CHECK_THROWS_AS(binomial(65, 2), DomainError);
  CHECK_THROWS_AS(binomial(4, 5), DomainError);
  CHECK_THROWS_AS(binomial(4, -1), DomainError);
}

TEST_CASE("quantum numbers of benchmark states") {
  const int D = 3;
  {
    StateSpec gs({{0, 0}, {0, 0}});
    auto q = quantum_numbers(gs, D);
    CHECK(q.Q == Catch::Approx(3.0));
    CHECK(q.Q0 == Catch::Approx(1.0));
    CHECK(q.Qstar == 0);
    CHECK(q.parity == +1);
  }
  {
    StateSpec s({{0, 2}, {0, 1}});
    auto q = quantum_numbers(s, D);
    CHECK(q.Q == Catch::Approx(6.0));
    CHECK(q.Q0 == Catch::Approx(4.0));
    CHECK(q.Qstar == 3);
    CHECK(q.parity == -1);
  }
  {
    StateSpec s({{1, 0}, {0, 0}});
    auto q = quantum_numbers(s, D);
    CHECK(q.Q == Catch::Approx(5.0));
    CHECK(q.Q0 == Catch::Approx(1.0));
    CHECK(q.Qstar == 2);
    CHECK(q.parity == +1);
  }
}

TEST_CASE("quantum number consistency across random states") {
  std::mt19937 rng(1234);
  std::uniform_int_distribution<int> small(0, 5);
  std::uniform_int_distribution<int> dims(1, 6);
  std::uniform_int_distribution<int> coords(1, 5);
  for (int trial = 0; trial < 200; ++trial) {
    const int D = dims(rng);
    const int nc = coords(rng);
    std::vector<std::pair<int, int>> nl;
    for (int i = 0; i < nc; ++i) nl.emplace_back(small(rng), small(rng));
    StateSpec st(nl);
    auto q = quantum_numbers(st, D);
    // Q - Q0 = 2 sum(n) + (number of coordinates) when D = 3
    if (D == 3) CHECK(q.Q - q.Q0 == Catch::Approx(2.0 * st.n_sum() + nc));
    CHECK(q.parity == ((st.l_sum() % 2 == 0) ? 1 : -1));
    CHECK(q.parity == ((q.Qstar % 2 == 0) ? 1 : -1));
    CHECK(q.Qstar == 2 * st.n_sum() + st.l_sum());
  }
}

TEST_CASE("hyperradius of simple configurations") {
  std::vector<std::vector<double>> pts = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}};
  CHECK(hyperradius_squared(pts, {0, 1, 2}) == Catch::Approx(4.0));
  CHECK(hyperradius_squared(pts, {0, 1}) == Catch::Approx(1.0));

  std::vector<std::vector<double>> same = {{2, 3, 4}, {2, 3, 4}};
  CHECK(hyperradius_squared(same, {0, 1}) == Catch::Approx(0.0).margin(1e-15));

  const double h = std::sqrt(3.0) / 2.0;
  std::vector<std::vector<double>> tri = {{0, 0, 0}, {1, 0, 0}, {0.5, h, 0}};
  CHECK(hyperradius_squared(tri, {0, 1, 2}) == Catch::Approx(3.0));

  CHECK_THROWS_AS(hyperradius_squared(pts, {1, 1}), DomainError);
}

TEST_CASE("three-body hyperradius matches internal-coordinate form") {
  // r^2_{123} = (3/2) (x1^2 + (2 x2 / sqrt(3))^2) with x1 = r1 - r2,
  // x2 = (r1 + r2)/2 - r3.
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::vector<double>> r(3, std::vector<double>(3));
    for (auto& v : r)
      for (auto& x : v) x = u(rng);
    double x1sq = 0.0, x2sq = 0.0;
    for (int d = 0; d < 3; ++d) {
      const double x1 = r[0][d] - r[1][d];
      const double x2 = 0.5 * (r[0][d] + r[1][d]) - r[2][d];
      x1sq += x1 * x1;
      x2sq += x2 * x2;
    }
    const double expected = 1.5 * (x1sq + 4.0 / 3.0 * x2sq);
    CHECK(hyperradius_squared(r, {0, 1, 2}) == Catch::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("built-in law derivatives match finite differences") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(0.1, 4.0);

  KineticLaw kin = PowerLawKinetic{0.7, 1.6};
  PotentialLaw pow = PowerLawPotential{1.3, -0.5};
  PotentialLaw well = ExponentialWell{5.0, 0.8, 1.7};

  for (int i = 0; i < 100; ++i) {
    const double x = u(rng);
    const double h = 1e-6 * x;
    CHECK(kinetic_deriv(kin, x) ==
          Catch::Approx((kinetic_value(kin, x + h) - kinetic_value(kin, x - h)) / (2 * h))
              .epsilon(1e-6));
    CHECK(kinetic_deriv2(kin, x) ==
          Catch::Approx((kinetic_deriv(kin, x + h) - kinetic_deriv(kin, x - h)) / (2 * h))
              .epsilon(1e-6));
    CHECK(potential_deriv(pow, x) ==
          Catch::Approx((potential_value(pow, x + h) - potential_value(pow, x - h)) / (2 * h))
              .epsilon(1e-6));
    CHECK(potential_deriv2(pow, x) ==
          Catch::Approx((potential_deriv(pow, x + h) - potential_deriv(pow, x - h)) / (2 * h))
              .epsilon(1e-6));
    CHECK(potential_deriv(well, x) ==
          Catch::Approx((potential_value(well, x + h) - potential_value(well, x - h)) / (2 * h))
              .epsilon(1e-6));
    CHECK(potential_deriv2(well, x) ==
          Catch::Approx((potential_deriv(well, x + h) - potential_deriv(well, x - h)) / (2 * h))
              .epsilon(1e-6));
  }
}

TEST_CASE("custom laws are validated against finite differences") {
  CustomKinetic good{[](double p) { return 0.5 * p * p; },
                     [](double p) { return p; },
                     [](double) { return 1.0; }};
  CHECK_NOTHROW(validate(KineticLaw{good}));

  CustomKinetic bad{[](double p) { return 0.5 * p * p; },
                    [](double p) { return 2.0 * p; },  // wrong slope
                    [](double) { return 1.0; }};
  CHECK_THROWS_AS(validate(KineticLaw{bad}), DomainError);
}

TEST_CASE("system validation rejects bad parameters") {
  CHECK_THROWS_AS(SystemSpec(1, 3, nonrelativistic_kinetic(),
                             {{2, PowerLawPotential{1.0, 1.0}}}),
                  DomainError);
  CHECK_THROWS_AS(SystemSpec(3, 3, nonrelativistic_kinetic(),
                             {{4, PowerLawPotential{1.0, 1.0}}}),
                  DomainError);
  // b <= -alpha is unbound from below
  CHECK_THROWS_AS(SystemSpec(3, 3, nonrelativistic_kinetic(),
                             {{3, PowerLawPotential{1.0, -2.5}}}),
                  DomainError);
  CHECK_NOTHROW(linear_three_body());
  CHECK_NOTHROW(coulomb_three_body());
  CHECK_NOTHROW(gaussian_three_body());
}
