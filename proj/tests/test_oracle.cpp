#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <functional>

#include "envelope/analytic.hpp"
#include "envelope/observables.hpp"
#include "envelope/oracle.hpp"
#include "envelope/solver.hpp"

using namespace envelope;

namespace {

double simpson(const std::function<double(double)>& f, double a, double b, int n) {
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += f(a + (b - a) * i / n) * (i % 2 ? 4.0 : 2.0);
  return s * (b - a) / (3.0 * n);
}

// d/du of the radial wavefunction, for the independent kinetic check.
double radial_derivative(int n, int l, double u) {
  const double norm = radial_norm(n, l);
  const double x = u * u;
  double val = -std::pow(u, l + 1) * laguerre(n, l + 0.5, x);
  if (l > 0) val += l * std::pow(u, l - 1) * laguerre(n, l + 0.5, x);
  if (n > 0) val -= 2.0 * std::pow(u, l + 1) * laguerre(n - 1, l + 1.5, x);
  return norm * val * std::exp(-0.5 * x);
}

}  // namespace

TEST_CASE("basis construction per block") {
  {
    OracleConfig cfg;
    cfg.L = 0;
    cfg.parity = +1;
    cfg.qstar_max = 0;
    CHECK(build_basis(cfg).states.size() == 1);
  }
  {
    OracleConfig cfg;
    cfg.L = 1;
    cfg.parity = -1;
    cfg.qstar_max = 3;
    auto basis = build_basis(cfg);  // band 1 forbidden, band 3 contributes one
    CHECK(basis.states.size() == 1);
    CHECK(basis.state_band[0] == 3);
  }
  {
    OracleConfig cfg;
    cfg.L = 0;
    cfg.parity = +1;
    cfg.qstar_max = 4;
    auto basis = build_basis(cfg);
    CHECK(basis.states.size() == 4);
    // embedding columns orthonormal
    Eigen::MatrixXd gram = basis.embed.transpose() * basis.embed;
    CHECK((gram - Eigen::MatrixXd::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-12);
  }
  {
    OracleConfig cfg;
    cfg.L = 1;
    cfg.parity = -1;
    cfg.qstar_max = 1;  // only the forbidden band
    CHECK_THROWS_AS(build_basis(cfg), EmptyBasisError);
  }
}

TEST_CASE("hamiltonian is symmetric") {
  OracleConfig cfg;
  cfg.L = 0;
  cfg.parity = +1;
  cfg.qstar_max = 10;
  auto basis = build_basis(cfg);
  for (double z : {0.37, 1.0, 2.9}) {
    const Eigen::MatrixXd h = hamiltonian_matrix(linear_three_body(), basis, z);
    CHECK((h - h.transpose()).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("kinetic ladder matches explicit derivative integrals") {
  for (int l = 0; l <= 3; ++l) {
    for (int n = 0; n <= 4; ++n) {
      for (int np = 0; np <= 4; ++np) {
        const auto f = [&](double u) {
          double val = radial_derivative(np, l, u) * radial_derivative(n, l, u) * u * u;
          if (l > 0)
            val += l * (l + 1.0) * radial_wavefunction(np, l, u) *
                   radial_wavefunction(n, l, u);
          return val;
        };
        const double quad = simpson(f, 1e-9, 14.0, 4000);
        CHECK(radial_psq_element(np, n, l) == Catch::Approx(quad).margin(1e-9));
      }
    }
  }
}

TEST_CASE("oscillator potential is reproduced exactly") {
  // V = c r^2 in the collective variable: solvable, and every route must
  // agree: closed form, scalar solver, and the variational block.
  const double c = 0.7;
  SystemSpec sys(3, 3, nonrelativistic_kinetic(), {{3, PowerLawPotential{c, 2.0}}});
  const double exact = std::sqrt(6.0 * c) * 3.0;

  auto closed = powerlaw_solution(0.5, 2.0, c, 2.0, 3, 3, 3.0);
  CHECK(closed.E == Catch::Approx(exact).epsilon(1e-14));
  auto numeric = solve_et(sys, 3.0);
  CHECK(numeric.E == Catch::Approx(exact).epsilon(1e-10));

  OracleConfig cfg;
  cfg.L = 0;
  cfg.parity = +1;
  cfg.qstar_max = 8;
  cfg.qstar_opt = 99;  // single-stage optimization
  cfg.z_hint = 1.0;
  auto sol = solve_oracle(sys, cfg);
  CHECK(sol.E == Catch::Approx(exact).epsilon(1e-9));

  // At the matching scale the basis diagonalizes its own generator: the
  // matrix is the bare ladder and the ground level is a pure band-0 state.
  const double zstar = std::pow(1.5 * c, 0.25);
  auto basis = build_basis(cfg);
  const Eigen::MatrixXd h = hamiltonian_matrix(sys, basis, zstar);
  Eigen::MatrixXd offdiag = h;
  offdiag.diagonal().setZero();
  CHECK(offdiag.cwiseAbs().maxCoeff() < 1e-10 * h.cwiseAbs().maxCoeff());
  CHECK(h(0, 0) == Catch::Approx(exact).epsilon(1e-12));
}

TEST_CASE("single-band bound for the linear well") {
  OracleConfig cfg;
  cfg.L = 0;
  cfg.parity = +1;
  cfg.qstar_max = 0;
  cfg.qstar_opt = 99;
  cfg.z_hint = 0.5;
  auto sol = solve_oracle(linear_three_body(), cfg);
  CHECK(sol.E >= 2.7529);
  CHECK(sol.E == Catch::Approx(2.7575).epsilon(1e-3));
}

TEST_CASE("coulomb block converges to the solvable six-dimensional levels") {
  // V = -kappa / (collective radius) maps onto a six-dimensional hydrogen
  // problem with E_n = -1.5 / (n + 5/2)^2: an independent exact yardstick.
  auto sys = coulomb_three_body();
  OracleConfig cfg;
  cfg.L = 0;
  cfg.parity = +1;
  cfg.qstar_max = 30;
  cfg.quad_order = 50;
  cfg.z_hint = 0.3;
  auto gs = solve_oracle(sys, cfg);
  CHECK(gs.E == Catch::Approx(-0.240).epsilon(1e-3));
  CHECK(gs.E >= -0.240);  // variational from above

  OracleConfig c2;
  c2.L = 2;
  c2.parity = +1;
  c2.qstar_max = 30;
  c2.quad_order = 50;
  c2.z_hint = 0.2;
  auto dstate = solve_oracle(sys, c2);
  CHECK(dstate.E == Catch::Approx(-1.5 / (4.5 * 4.5)).epsilon(5e-4));
  CHECK(dstate.E >= -1.5 / (4.5 * 4.5));
}

TEST_CASE("linear benchmark energies and diagnostics") {
  auto sys = linear_three_body();
  const StateSpec gs({{0, 0}, {0, 0}}, +1, 0);
  auto et = solve_state(sys, gs, PhiMode{PhiMode::Kind::Fixed, 2.0});
  const double lam1 = scale_parameters(3, et.Q_eff, et.solution.rho0)[0];

  OracleConfig cfg;
  cfg.L = 0;
  cfg.parity = +1;
  cfg.qstar_max = 18;
  cfg.z_hint = lam1;
  cfg.lambda1_reference = lam1;
  auto sol = solve_oracle(sys, cfg);
  CHECK(sol.E == Catch::Approx(2.753).epsilon(2e-4));
  CHECK(sol.nu == Catch::Approx(1.09).margin(0.02));

  // Band weights for the published diagnostics come from the same reduced
  // truncation the scale was optimized on.
  OracleConfig diag = cfg;
  diag.qstar_max = diag.qstar_opt;
  auto small = solve_oracle(sys, diag);
  CHECK(small.band_weights.at(0) == Catch::Approx(0.97).margin(0.01));
}

TEST_CASE("variational energy is monotone in the truncation") {
  auto sys = linear_three_body();
  double prev = 1e300;
  for (int qmax : {4, 8, 12, 16, 18}) {
    OracleConfig cfg;
    cfg.L = 0;
    cfg.parity = +1;
    cfg.qstar_max = qmax;
    cfg.qstar_opt = 99;  // full optimization keeps the sequence nested
    cfg.z_hint = 0.55;
    auto sol = solve_oracle(sys, cfg);
    CHECK(sol.E <= prev + 1e-12);
    prev = sol.E;
  }
}

TEST_CASE("doubling the quadrature order leaves the matrix unchanged") {
  OracleConfig cfg;
  cfg.L = 0;
  cfg.parity = +1;
  cfg.qstar_max = 12;
  auto basis = build_basis(cfg);
  const std::pair<SystemSpec, double> runs[] = {
      {linear_three_body(), 0.61},
      {coulomb_three_body(), 0.32},
      {gaussian_three_body(), 3.6},
  };
  for (const auto& [sys, z] : runs) {
    const Eigen::MatrixXd h40 = hamiltonian_matrix(sys, basis, z, 40);
    const Eigen::MatrixXd h80 = hamiltonian_matrix(sys, basis, z, 80);
    const double scale = h40.cwiseAbs().maxCoeff();
    CHECK((h40 - h80).cwiseAbs().maxCoeff() < 1e-9 * scale);
  }
}

TEST_CASE("degenerate negative-parity pair") {
  auto sys = linear_three_body();
  OracleConfig c1;
  c1.L = 1;
  c1.parity = -1;
  c1.qstar_max = 17;
  c1.z_hint = 0.5;
  OracleConfig c3 = c1;
  c3.L = 3;
  auto s1 = solve_oracle(sys, c1);
  auto s3 = solve_oracle(sys, c3);
  CHECK(s1.E == Catch::Approx(4.434).epsilon(2e-4));
  CHECK(std::abs(s1.E - s3.E) <= 1e-3 * std::abs(s1.E));
}

TEST_CASE("oracle observables on the linear ground level") {
  auto sys = linear_three_body();
  OracleConfig cfg;
  cfg.L = 0;
  cfg.parity = +1;
  cfg.qstar_max = 18;
  cfg.z_hint = 0.55;
  auto basisd = build_basis(cfg);
  auto sol = solve_oracle(sys, cfg);
  const double r2 = oracle_observable(basisd, sol.coeff_coupled, sol.z, 2.0);
  const double r1 = oracle_observable(basisd, sol.coeff_coupled, sol.z, 1.0);
  // Published relative errors of the closed-form values (3.45% on the
  // squared size, 7.23% on the size against rho0) locate the accurate
  // moments near 4.93 and 2.035.
  CHECK(r2 == Catch::Approx(4.932).epsilon(3e-3));
  CHECK(r1 == Catch::Approx(2.035).epsilon(3e-3));
  CHECK(std::abs(4.762 - r2) / r2 == Catch::Approx(0.0345).margin(5e-4));
  CHECK(std::abs(2.182247 - r1) / r1 == Catch::Approx(0.0723).margin(5e-4));
}

TEST_CASE("unsupported systems are rejected") {
  OracleConfig cfg;
  cfg.L = 0;
  cfg.parity = +1;
  cfg.qstar_max = 4;
  auto basis = build_basis(cfg);
  SystemSpec two_body(3, 3, nonrelativistic_kinetic(), {{2, PowerLawPotential{1.0, 1.0}}});
  CHECK_THROWS_AS(hamiltonian_matrix(two_body, basis, 1.0), UnsupportedSystemError);
  SystemSpec relativistic(3, 3, PowerLawKinetic{1.0, 1.0},
                          {{3, PowerLawPotential{1.0, 1.0}}});
  CHECK_THROWS_AS(hamiltonian_matrix(relativistic, basis, 1.0), UnsupportedSystemError);
}
