#include <doctest.h>

#include <cmath>

#include "conekit/pencil.hpp"
#include "conekit/radial.hpp"
#include "conekit/rng.hpp"

using namespace conekit;

namespace {

constexpr double kPi = 3.141592653589793;

RadialProblem detproblem(int n, int points, double c) {
  RadialProblem p;
  p.n = n;
  p.points = points;
  p.chi_const = c;
  p.lambda0 = 1.0;
  p.op = OperatorSpec::sigma_k_root(n, n);
  return p;
}

double phi_star(double t) { return std::sin(kPi * t) + 2.0; }

std::function<double(double)> manufactured_psi(const RadialProblem& p) {
  return [n = p.n, c = p.chi_const, l0 = p.lambda0, op = p.op](double t) {
    const double d1 = kPi * std::cos(kPi * t);
    const double d2 = -kPi * kPi * std::sin(kPi * t);
    return op_value(op, radial_eigenvalues(d1, d2, t, c, n)) *
           std::exp(-l0 * phi_star(t));
  };
}

}  // namespace

TEST_CASE("radial eigenvalue tuples") {
  // phi(t) = t gives the identity Hessian
  auto lam = radial_eigenvalues(1.0, 0.0, 0.3, 2.0, 3);
  for (double x : lam) CHECK(x == doctest::Approx(3.0));
  // vanishing second derivative collapses the tuple
  lam = radial_eigenvalues(0.7, 0.0, 0.9, 0.0, 4);
  for (double x : lam) CHECK(x == doctest::Approx(0.7));
}

TEST_CASE("radial eigenvalues match the assembled matrix") {
  CounterRng rng(301, 0);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + static_cast<int>(rng.next() % 3);
    const double c = rng.uniform(0.5, 3.0);
    const double d1 = rng.uniform(-1.0, 2.0);
    const double d2 = rng.uniform(-2.0, 2.0);
    // random point with |z|^2 = t
    Eigen::VectorXcd z(n);
    for (int i = 0; i < n; ++i)
      z(i) = std::complex<double>(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
    const double t = z.squaredNorm();
    // ddbar of phi(|z|^2): phi' I + phi'' zbar z^T (entry ij = phi'' zbar_i z_j)
    Eigen::MatrixXcd m = (c + d1) * Eigen::MatrixXcd::Identity(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) += d2 * std::conj(z(i)) * z(j);
    const auto eg = pencil_eigen({HermitianForm::identity(n), HermitianForm(m)});
    const Spectrum mine(radial_eigenvalues(d1, d2, t, c, n));
    for (int i = 0; i < n; ++i)
      CHECK(mine[i] == doctest::Approx(eg.lam[i]).epsilon(1e-10));
  }
}

TEST_CASE("manufactured solution is recovered at second order") {
  for (int n : {2, 3}) {
    double err_prev = 0.0;
    for (int points : {65, 129}) {
      auto p = detproblem(n, points, 10.0);
      p.psi = manufactured_psi(p);
      const auto sol = solve_radial_dirichlet(p, phi_star(p.t0), phi_star(1.0));
      CHECK(sol.report.converged);
      CHECK(sol.report.final_residual <= 1e-10);
      CHECK(sol.report.min_cone_margin > 0.0);
      CHECK(sol.report.min_trace_slack > -1e-8);
      double err = 0.0;
      for (int i = 0; i < points; ++i)
        err = std::max(err, std::abs(sol.phi[static_cast<std::size_t>(i)] -
                                     phi_star(p.t_at(i))));
      if (err_prev > 0.0) {
        CHECK(err_prev / err > 3.0);
        CHECK(err_prev / err < 5.0);
      }
      err_prev = err;
    }
  }
}

TEST_CASE("linear operator converges in a few steps") {
  auto p = detproblem(3, 65, 5.0);
  p.op = OperatorSpec::sigma_k_root(1, 3);
  p.psi = [](double) { return 1.0; };
  const auto sol = solve_radial_dirichlet(p, 0.0, 0.0);
  CHECK(sol.report.converged);
  CHECK(sol.report.iterations <= 3);
}

TEST_CASE("solutions are independent of the admissible start") {
  auto p = detproblem(2, 97, 8.0);
  p.psi = [](double t) { return 1.0 + 0.3 * t; };
  const auto sol1 = solve_radial_dirichlet(p, 0.5, -0.2);

  std::vector<double> other(sol1.phi.size());
  for (int i = 0; i < p.points; ++i) {
    const double t = p.t_at(i);
    const double s = (t - p.t0) / (1.0 - p.t0);
    other[static_cast<std::size_t>(i)] =
        0.5 + (-0.2 - 0.5) * s + 0.8 * (t - p.t0) * (1.0 - t);
  }
  const auto sol2 = solve_radial_dirichlet(p, 0.5, -0.2, &other);
  double diff = 0.0;
  for (std::size_t i = 0; i < sol1.phi.size(); ++i)
    diff = std::max(diff, std::abs(sol1.phi[i] - sol2.phi[i]));
  CHECK(diff <= 1e-8);
}

TEST_CASE("raising boundary data never lowers the solution") {
  auto p = detproblem(2, 81, 6.0);
  p.psi = [](double) { return 1.0; };
  const auto lo = solve_radial_dirichlet(p, 0.0, 0.0);
  const auto hi = solve_radial_dirichlet(p, 0.5, 0.8);
  for (std::size_t i = 0; i < lo.phi.size(); ++i)
    CHECK(hi.phi[i] >= lo.phi[i] - 1e-9);
}

TEST_CASE("exhaustion ladder is monotone with a bounded collar band") {
  auto p = detproblem(2, 161, 1.0);
  p.psi = [](double) { return 1.0; };
  const auto res = solve_radial_exhaustion(p, {2, 4, 8});
  CHECK(res.min_monotonicity >= -1e-9);
  for (const auto& rep : res.reports) CHECK(rep.converged);
  CHECK(res.cauchy_sup.size() == 2);
  CHECK(res.cauchy_sup[1] < res.cauchy_sup[0]);
}

TEST_CASE("barrier margins on the collar") {
  auto p = detproblem(2, 161, 6.0);
  p.psi = [](double) { return 1.0; };

  SUBCASE("degenerate barrier reports the raw defect") {
    const auto bm = barrier_margin(p, 0, 0.3, 0.0);
    REQUIRE(bm.admissible);
    const double expect =
        op_value(p.op, radial_eigenvalues(0.0, 0.0, 1.0, p.chi_const, p.n)) - 1.0;
    for (double m : bm.margins) CHECK(m == doctest::Approx(expect).epsilon(1e-12));
  }

  SUBCASE("positive margin for a steep barrier") {
    const auto bm = barrier_margin(p, 1, 0.05, 0.0);
    REQUIRE(bm.admissible);
    CHECK(bm.min_margin > 0.0);
  }

  SUBCASE("margins grow as the collar shrinks") {
    const auto wide = barrier_margin(p, 1, 0.2, 0.0);
    const auto narrow = barrier_margin(p, 1, 0.05, 0.0);
    REQUIRE(wide.admissible);
    REQUIRE(narrow.admissible);
    CHECK(narrow.min_margin > wide.min_margin);
  }
}

TEST_CASE("completeness diagnostic on closed-form profiles") {
  auto p = detproblem(2, 401, 1.0);
  const int collar_begin = p.points - 1 - p.points / 5;

  // exact blow-up profile: the integrand is 1/sigma
  std::vector<double> phi(static_cast<std::size_t>(p.points));
  for (int i = 0; i + 1 < p.points; ++i)
    phi[static_cast<std::size_t>(i)] = -2.0 * std::log(p.sigma_at(i));
  phi.back() = phi[phi.size() - 2];
  const auto diag = completeness_integral(p, phi, collar_begin);
  CHECK(diag.ratio == doctest::Approx(1.0).epsilon(1e-6));

  // bounded profile: the length integral converges, the slope collapses
  std::fill(phi.begin(), phi.end(), 1.0);
  const auto flat = completeness_integral(p, phi, collar_begin);
  CHECK(flat.ratio < 0.3);
}

TEST_CASE("solver failure paths") {
  auto p = detproblem(2, 33, 6.0);
  p.psi = [](double) { return 1.0; };
  std::vector<double> bad(static_cast<std::size_t>(p.points), 0.0);
  for (int i = 0; i < p.points; ++i)
    bad[static_cast<std::size_t>(i)] = -40.0 * (p.t_at(i) - p.t0);  // steep descent
  CHECK_THROWS_AS(solve_radial_dirichlet(p, 0.0, bad.back(), &bad),
                  SolveError);
}
