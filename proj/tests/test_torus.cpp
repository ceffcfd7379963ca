#include <doctest.h>

#include <cmath>

#include "conekit/rng.hpp"
#include "conekit/torus_solver.hpp"

using namespace conekit;

namespace {

constexpr double kTwoPi = 6.283185307179586;

struct Manufactured {
  double amp = 0.3;
  double u(double x1, double, double, double y2) const {
    return amp * std::sin(kTwoPi * x1) * std::cos(kTwoPi * y2);
  }
  // exact complex Hessian entries of u
  void hessian(double x1, double, double, double y2, double& h11, double& h22,
               double& re12, double& im12) const {
    const double w = kTwoPi * kTwoPi * amp;
    h11 = -0.25 * w * std::sin(kTwoPi * x1) * std::cos(kTwoPi * y2);
    h22 = h11;
    re12 = 0.0;
    im12 = -0.25 * w * std::cos(kTwoPi * x1) * std::sin(kTwoPi * y2);
  }
};

TorusProblem constant_chi_problem(int N, double c) {
  TorusProblem p{Grid4(N), HermitianField2(), Field(),
                 1.0, OperatorSpec::sigma_k_root(2, 2)};
  const std::size_t np = p.grid.size();
  p.chi = HermitianField2(np);
  for (std::size_t q = 0; q < np; ++q) {
    p.chi.h11[q] = c;
    p.chi.h22[q] = c;
  }
  p.psi.assign(np, 1.0);
  return p;
}

void fill_manufactured_psi(TorusProblem& p, const Manufactured& mm, double c) {
  const int N = p.grid.N;
  std::size_t q = 0;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      for (int k = 0; k < N; ++k)
        for (int l = 0; l < N; ++l, ++q) {
          const double x1 = i * p.grid.h, y1 = j * p.grid.h;
          const double x2 = k * p.grid.h, y2 = l * p.grid.h;
          double h11, h22, re12, im12;
          mm.hessian(x1, y1, x2, y2, h11, h22, re12, im12);
          const auto ev = eig2(c + h11, c + h22, re12, im12);
          const double pair[2] = {ev[0], ev[1]};
          p.psi[q] = op_value(p.op, std::span<const double>(pair, 2)) *
                     std::exp(-p.lambda0 * mm.u(x1, y1, x2, y2));
        }
}

double manufactured_error(const TorusProblem& p, const Field& u,
                          const Manufactured& mm) {
  const int N = p.grid.N;
  double err = 0.0;
  std::size_t q = 0;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      for (int k = 0; k < N; ++k)
        for (int l = 0; l < N; ++l, ++q)
          err = std::max(err, std::abs(u[q] - mm.u(i * p.grid.h, j * p.grid.h,
                                                   k * p.grid.h, l * p.grid.h)));
  return err;
}

}  // namespace

TEST_CASE("constant data has the constant solution") {
  auto p = constant_chi_problem(8, 2.0);
  const double K = 3.0;
  // psi = K f(lam(chi)) forces u = -log K
  for (auto& x : p.psi) x = K * 2.0;  // f(lam(2 I)) = 2
  const auto sol = solve_torus(p);
  CHECK(sol.report.converged);
  for (std::size_t q = 0; q < sol.u.size(); q += 97)
    CHECK(sol.u[q] == doctest::Approx(-std::log(K)).epsilon(1e-9));
}

TEST_CASE("manufactured torus solution converges at second order") {
  const Manufactured mm;
  double err_prev = 0.0;
  for (int N : {8, 16}) {
    auto p = constant_chi_problem(N, 5.0);
    fill_manufactured_psi(p, mm, 5.0);
    const auto sol = solve_torus(p);
    CHECK(sol.report.converged);
    CHECK(sol.report.final_residual <= 1e-9);
    CHECK(sol.report.min_cone_margin > 0.0);
    CHECK(sol.report.min_trace_slack > -1e-8);
    const double err = manufactured_error(p, sol.u, mm);
    if (err_prev > 0.0) {
      CHECK(err_prev / err > 3.0);
      CHECK(err_prev / err < 5.0);
    }
    err_prev = err;
  }
}

TEST_CASE("solution is independent of the admissible start") {
  auto p = constant_chi_problem(8, 3.0);
  CounterRng rng(771, 0);
  for (auto& x : p.psi) x = 2.0;
  const auto sol1 = solve_torus(p);

  Field start(p.grid.size());
  std::size_t q = 0;
  for (int i = 0; i < p.grid.N; ++i)
    for (int j = 0; j < p.grid.N; ++j)
      for (int k = 0; k < p.grid.N; ++k)
        for (int l = 0; l < p.grid.N; ++l, ++q)
          start[q] = 0.3 + 0.05 * std::sin(kTwoPi * i * p.grid.h) *
                               std::cos(kTwoPi * l * p.grid.h);
  const auto sol2 = solve_torus(p, &start);
  double diff = 0.0;
  for (std::size_t x = 0; x < sol1.u.size(); ++x)
    diff = std::max(diff, std::abs(sol1.u[x] - sol2.u[x]));
  CHECK(diff <= 1e-8);
  (void)rng;
}

TEST_CASE("degenerate background is rejected") {
  auto p = constant_chi_problem(4, 0.0);  // lam(chi) = 0 is not admissible
  CHECK_THROWS_AS(solve_torus(p), SolveError);
}

TEST_CASE("residual evaluation matches the solved equation") {
  auto p = constant_chi_problem(8, 2.5);
  for (auto& x : p.psi) x = 1.7;
  const auto sol = solve_torus(p);
  const auto res = torus_residual(p, sol.u);
  double sup = 0.0;
  for (double r : res) sup = std::max(sup, std::abs(r));
  CHECK(sup <= 1e-9);

  Field lo, hi;
  torus_eigenvalues(p, sol.u, lo, hi);
  for (std::size_t q = 0; q < lo.size(); q += 131) CHECK(lo[q] > 0.0);
}
