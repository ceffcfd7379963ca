#include <doctest.h>

#include <cmath>

#include "conekit/pencil.hpp"
#include "conekit/rng.hpp"

using namespace conekit;

namespace {

Eigen::MatrixXcd random_hermitian(CounterRng& rng, int n, double scale = 1.0) {
  Eigen::MatrixXcd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      m(i, j) = std::complex<double>(rng.uniform(-scale, scale),
                                     rng.uniform(-scale, scale));
  return 0.5 * (m + m.adjoint()).eval();
}

Eigen::MatrixXcd random_spd(CounterRng& rng, int n) {
  Eigen::MatrixXcd m = random_hermitian(rng, n);
  return (m * m.adjoint() + 0.5 * Eigen::MatrixXcd::Identity(n, n)).eval();
}

}  // namespace

TEST_CASE("hermitian form construction") {
  Eigen::MatrixXcd bad(2, 2);
  bad << 1.0, std::complex<double>(0.0, 1.0), std::complex<double>(0.0, 1.0), 2.0;
  CHECK_THROWS_AS((HermitianForm{bad}), std::invalid_argument);
  Eigen::MatrixXcd good(2, 2);
  good << 1.0, std::complex<double>(0.5, 0.25), std::complex<double>(0.5, -0.25), 2.0;
  CHECK_NOTHROW((HermitianForm{good}));
}

TEST_CASE("pencil eigenvalues, diagonal and scaled cases") {
  Eigen::MatrixXcd theta = Eigen::MatrixXcd::Zero(3, 3);
  theta.diagonal() << 3.0, -1.0, 2.0;
  const Pencil p{HermitianForm::identity(3), HermitianForm(theta)};
  const auto eg = pencil_eigen(p);
  CHECK(eg.lam[0] == doctest::Approx(-1.0));
  CHECK(eg.lam[1] == doctest::Approx(2.0));
  CHECK(eg.lam[2] == doctest::Approx(3.0));

  Eigen::MatrixXcd g2 = 2.0 * Eigen::MatrixXcd::Identity(2, 2);
  Eigen::MatrixXcd t2 = Eigen::MatrixXcd::Zero(2, 2);
  t2.diagonal() << 4.0, 6.0;
  const auto eg2 = pencil_eigen({HermitianForm(g2), HermitianForm(t2)});
  CHECK(eg2.lam[0] == doctest::Approx(2.0));
  CHECK(eg2.lam[1] == doctest::Approx(3.0));
}

TEST_CASE("pencil defect and frame normalization on random instances") {
  CounterRng rng(101, 0);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + static_cast<int>(rng.next() % 3);
    const Pencil p{HermitianForm(random_spd(rng, n)),
                   HermitianForm(random_hermitian(rng, n, 2.0))};
    const auto eg = pencil_eigen(p);
    for (int q = 0; q < n; ++q) {
      const auto defect = (p.theta.matrix() * eg.frame.col(q) -
                           eg.lam[q] * p.g.matrix() * eg.frame.col(q))
                              .norm();
      CHECK(defect <= 1e-10 * (1.0 + std::abs(eg.lam[q])));
    }
    const auto gram =
        (eg.frame.adjoint() * p.g.matrix() * eg.frame -
         Eigen::MatrixXcd::Identity(n, n))
            .norm();
    CHECK(gram <= 1e-10);
  }
}

TEST_CASE("indefinite metric is rejected") {
  Eigen::MatrixXcd g(2, 2);
  g << 1.0, 0.0, 0.0, -1.0;
  CHECK_THROWS_AS(
      pencil_eigen({HermitianForm(g), HermitianForm::identity(2)}),
      std::domain_error);
}

TEST_CASE("derivative form of the trace operator is the inverse metric") {
  CounterRng rng(103, 1);
  const auto f = OperatorSpec::sigma_k_root(1, 3);
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::MatrixXcd g = random_spd(rng, 3);
    Eigen::MatrixXcd theta = random_hermitian(rng, 3) +
                             5.0 * Eigen::MatrixXcd::Identity(3, 3);
    const auto w =
        operator_derivative(f, {HermitianForm(g), HermitianForm(theta)});
    CHECK((w.matrix() - g.inverse()).norm() <= 1e-9);
  }
}

TEST_CASE("determinant-root derivative on diagonal data") {
  Eigen::MatrixXcd theta = Eigen::MatrixXcd::Zero(3, 3);
  theta.diagonal() << 1.0, 2.0, 4.0;
  const auto f = OperatorSpec::sigma_k_root(3, 3);
  const auto w =
      operator_derivative(f, {HermitianForm::identity(3), HermitianForm(theta)});
  const double fval = std::pow(8.0, 1.0 / 3.0);
  for (int i = 0; i < 3; ++i)
    CHECK(w.matrix()(i, i).real() ==
          doctest::Approx(fval / (3.0 * theta(i, i).real())).epsilon(1e-10));
}

TEST_CASE("repeated eigenvalues give the isotropic form") {
  const auto f = OperatorSpec::sigma_k_root(2, 3);
  const auto w = operator_derivative(
      f, {HermitianForm::identity(3), HermitianForm::identity(3)});
  const auto g1 = op_gradient(f, std::vector<double>{1.0, 1.0, 1.0})[0];
  CHECK((w.matrix() - g1 * Eigen::MatrixXcd::Identity(3, 3)).norm() <= 1e-12);
}

TEST_CASE("pairing matches directional finite differences") {
  CounterRng rng(107, 2);
  const auto ops = {OperatorSpec::sigma_k_root(2, 3),
                    OperatorSpec::sigma_k_root(3, 3),
                    OperatorSpec::hessian_quotient(3, 1, 3)};
  for (const auto& f : ops) {
    int tested = 0;
    for (int trial = 0; trial < 300 && tested < 100; ++trial) {
      Eigen::MatrixXcd g = random_spd(rng, 3);
      Eigen::MatrixXcd theta = random_hermitian(rng, 3) +
                               6.0 * g;  // keep well inside the cone
      const Pencil p{HermitianForm(g), HermitianForm(theta)};
      const auto eg = pencil_eigen(p);
      if (!contains(f.cone(), eg.lam)) continue;
      ++tested;
      const auto w = operator_derivative(f, p);
      const Eigen::MatrixXcd dtheta = random_hermitian(rng, 3, 0.5);
      const double pairing = derivative_pairing(w, HermitianForm(dtheta));
      const double h = 1e-6;
      const auto val_at = [&](double t) {
        const Pencil pt{p.g, HermitianForm(theta + t * dtheta)};
        return op_value(f, pencil_eigen(pt).lam);
      };
      const double fd = (val_at(h) - val_at(-h)) / (2.0 * h);
      CHECK(pairing == doctest::Approx(fd).epsilon(1e-5));
    }
    CHECK(tested >= 50);
  }
}

TEST_CASE("contraction identities and positivity") {
  CounterRng rng(109, 3);
  const auto f = OperatorSpec::sigma_k_root(2, 3);
  for (int trial = 0; trial < 100; ++trial) {
    Eigen::MatrixXcd g = random_spd(rng, 3);
    Eigen::MatrixXcd theta = random_hermitian(rng, 3) + 6.0 * g;
    const Pencil p{HermitianForm(g), HermitianForm(theta)};
    const auto eg = pencil_eigen(p);
    if (!contains(f.cone(), eg.lam)) continue;
    const auto w = operator_derivative(f, p);
    const auto grad = op_gradient(f, eg.lam);
    double dot = 0.0, total = 0.0;
    for (int i = 0; i < 3; ++i) {
      dot += grad[static_cast<std::size_t>(i)] * eg.lam[i];
      total += grad[static_cast<std::size_t>(i)];
    }
    CHECK(derivative_pairing(w, p.theta) == doctest::Approx(dot).epsilon(1e-10));
    CHECK(derivative_pairing(w, p.g) == doctest::Approx(total).epsilon(1e-10));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(w.matrix());
    CHECK(es.eigenvalues().minCoeff() > -1e-12);
  }
}

TEST_CASE("cluster averaging is frame independent") {
  // theta with an exactly repeated eigenvalue via a rotated diagonal
  CounterRng rng(113, 4);
  Eigen::MatrixXcd u = random_hermitian(rng, 3);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(u);
  const Eigen::MatrixXcd q = es.eigenvectors();
  Eigen::VectorXd diag(3);
  diag << 2.0, 2.0, 5.0;
  const Eigen::MatrixXcd theta = q * diag.asDiagonal() * q.adjoint();
  const auto f = OperatorSpec::sigma_k_root(2, 3);
  const auto w = operator_derivative(
      f, {HermitianForm::identity(3), HermitianForm(theta)});
  // analytic: W = sum f_p P_p with equal weights on the repeated pair
  const auto grad = op_gradient(f, std::vector<double>{2.0, 2.0, 5.0});
  const Eigen::MatrixXcd p12 = q.col(0) * q.col(0).adjoint() +
                               q.col(1) * q.col(1).adjoint();
  const Eigen::MatrixXcd p3 = q.col(2) * q.col(2).adjoint();
  const Eigen::MatrixXcd expect = grad[0] * p12 + grad[2] * p3;
  CHECK((w.matrix() - expect).norm() <= 1e-9);
}
