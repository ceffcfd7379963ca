#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "conekit/localization.hpp"
#include "conekit/rng.hpp"

using namespace conekit;

TEST_CASE("growth threshold formulas") {
  // 2x2 special form
  CHECK(growth_threshold({1.0}, {{1.0, 0.0}}, 0.5) == doctest::Approx(3.0));
  // zero border reduces to the diagonal terms
  for (int n : {3, 5}) {
    std::vector<double> d(static_cast<std::size_t>(n - 1), 0.7);
    std::vector<std::complex<double>> a(d.size(), {0.0, 0.0});
    const double eps = 0.4;
    double abs_d = 0.0;
    for (double x : d) abs_d += std::abs(x);
    CHECK(growth_threshold(d, a, eps) ==
          doctest::Approx((n - 1) * abs_d + (n - 2) * eps / (2 * n - 3)));
  }
  // worked 3x3 instance: 31/3
  CHECK(growth_threshold({1.0, -1.0}, {{1.0, 0.0}, {1.0, 0.0}}, 1.0) ==
        doctest::Approx(31.0 / 3.0));
  CHECK_THROWS_AS(growth_threshold({1.0}, {{1.0, 0.0}}, 0.0), std::invalid_argument);
}

TEST_CASE("2x2 closed form") {
  BorderedHermitian m;
  m.d = {1.0};
  m.a = {{1.0, 0.0}};
  m.corner = 3.0;  // exactly at the threshold for eps = 0.5
  const auto lam = bordered_eigenvalues(m);
  CHECK(lam[0] == doctest::Approx(2.0 - std::sqrt(2.0)).epsilon(1e-10));
  CHECK(lam[1] == doctest::Approx(2.0 + std::sqrt(2.0)).epsilon(1e-10));

  const auto res = localize(m, 0.5);
  CHECK(res.satisfied);
  CHECK(res.threshold == doctest::Approx(3.0));
  CHECK(res.alpha_intervals[0].contains(lam[0]));
  CHECK(lam[1] >= m.corner);
  CHECK(lam[1] < m.corner + 0.5);

  // random 2x2 instances against the closed form
  CounterRng rng(71, 0);
  for (int trial = 0; trial < 1000; ++trial) {
    BorderedHermitian r;
    r.d = {rng.uniform(-2.0, 2.0)};
    r.a = {{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)}};
    r.corner = rng.uniform(-3.0, 6.0);
    const double disc = std::sqrt((r.corner - r.d[0]) * (r.corner - r.d[0]) +
                                  4.0 * std::norm(r.a[0]));
    const double lo = 0.5 * (r.corner + r.d[0] - disc);
    const double hi = 0.5 * (r.corner + r.d[0] + disc);
    const auto ev = bordered_eigenvalues(r);
    CHECK(ev[0] == doctest::Approx(lo).epsilon(1e-10));
    CHECK(ev[1] == doctest::Approx(hi).epsilon(1e-10));
  }
}

TEST_CASE("block-diagonal instances localize exactly") {
  BorderedHermitian m;
  m.d = {0.5, -1.0, 2.0};
  m.a = {{0.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}};
  m.corner = 40.0;
  const auto lam = bordered_eigenvalues(m);
  std::vector<double> expect{-1.0, 0.5, 2.0, 40.0};
  for (std::size_t i = 0; i < expect.size(); ++i)
    CHECK(lam[i] == doctest::Approx(expect[i]).epsilon(1e-12));
  const auto res = localize(m, 0.3);
  CHECK(res.satisfied);
  for (int al = 0; al < 3; ++al)
    CHECK(res.alpha_intervals[static_cast<std::size_t>(al)].contains(
        lam[static_cast<std::size_t>(al)]));
}

TEST_CASE("below the threshold no claim is made") {
  BorderedHermitian m;
  m.d = {1.0};
  m.a = {{1.0, 0.0}};
  m.corner = growth_threshold(m.d, m.a, 0.5) - 10.0;
  const auto res = localize(m, 0.5);
  CHECK_FALSE(res.satisfied);
  CHECK(res.alpha_intervals.empty());
}

TEST_CASE("randomized verification at the threshold") {
  for (int n = 2; n <= 8; ++n) {
    const auto rep = verify_against_eigensolver(n, 0.5, 800, 1234, 0.0);
    CHECK(rep.satisfied == 800);
    CHECK(rep.violations == 0);
    CHECK(rep.worst_margin > 0.0);
  }
}

TEST_CASE("relaxed growth condition verifies as well") {
  for (int n : {3, 5, 8}) {
    const auto rep = verify_against_eigensolver(n, 0.5, 500, 77, 0.0, true);
    CHECK(rep.violations == 0);
  }
  // at n = 2 both conditions coincide
  std::vector<double> d{0.3};
  std::vector<std::complex<double>> a{{1.2, -0.4}};
  CHECK(growth_threshold(d, a, 0.7) ==
        doctest::Approx(growth_threshold_refined(d, a, 0.7)).epsilon(1e-14));
}

TEST_CASE("strict instances satisfy the relaxed conclusions") {
  CounterRng rng(81, 1);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 3 + static_cast<int>(rng.next() % 4);
    BorderedHermitian m;
    m.d.resize(static_cast<std::size_t>(n - 1));
    m.a.resize(static_cast<std::size_t>(n - 1));
    for (auto& x : m.d) x = rng.uniform(-2.0, 2.0);
    for (auto& z : m.a) z = {rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5)};
    const double eps = 0.6;
    m.corner = growth_threshold(m.d, m.a, eps);
    const auto lam = bordered_eigenvalues(m);
    for (int al = 0; al < n - 1; ++al) {
      double best = 1e300;
      for (double dv : m.d)
        best = std::min(best, std::abs(lam[static_cast<std::size_t>(al)] - dv));
      CHECK(best < eps);
    }
  }
}

TEST_CASE("clustered diagonal entries") {
  BorderedHermitian m;
  m.d = {1.0, 1.0, 1.0};
  m.a = {{0.5, 0.0}, {0.0, 0.5}, {0.3, 0.3}};
  const double eps = 0.4;
  m.corner = growth_threshold(m.d, m.a, eps);
  const auto lam = bordered_eigenvalues(m);
  for (int al = 0; al < 3; ++al)
    CHECK(std::abs(lam[static_cast<std::size_t>(al)] - 1.0) < eps);
}

TEST_CASE("trace, dominance and monotonicity in the corner") {
  CounterRng rng(91, 2);
  for (int trial = 0; trial < 400; ++trial) {
    const int n = 2 + static_cast<int>(rng.next() % 6);
    BorderedHermitian m;
    m.d.resize(static_cast<std::size_t>(n - 1));
    m.a.resize(static_cast<std::size_t>(n - 1));
    for (auto& x : m.d) x = rng.uniform(-2.0, 2.0);
    for (auto& z : m.a) z = {rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
    m.corner = rng.uniform(-4.0, 4.0);  // growth condition mostly violated
    const auto lam = bordered_eigenvalues(m);
    double tr = m.corner;
    for (double x : m.d) tr += x;
    double sum = 0.0;
    for (double x : lam) sum += x;
    CHECK(sum == doctest::Approx(tr).epsilon(1e-10));
    CHECK(lam.back() >= m.corner - 1e-12);

    BorderedHermitian up = m;
    up.corner += rng.uniform(0.0, 3.0);
    CHECK(bordered_eigenvalues(up).back() >= lam.back() - 1e-10);
  }
}

TEST_CASE("symmetric instances have the identity matching") {
  BorderedHermitian m;
  m.d = {0.7, 0.7, 0.7};
  m.a = {{0.4, 0.0}, {0.4, 0.0}, {0.4, 0.0}};
  m.corner = growth_threshold(m.d, m.a, 0.3);
  const auto res = localize(m, 0.3);
  REQUIRE(res.satisfied);
  for (std::size_t i = 0; i < res.permutation.size(); ++i)
    CHECK(res.permutation[i] == static_cast<int>(i));
}
