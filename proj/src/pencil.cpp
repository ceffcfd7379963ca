#include "conekit/pencil.hpp"

#include <stdexcept>

namespace conekit {

HermitianForm::HermitianForm(Eigen::MatrixXcd entries) {
  if (entries.rows() != entries.cols())
    throw std::invalid_argument("HermitianForm: square matrix required");
  const double scale = entries.norm();
  const double defect = (entries - entries.adjoint()).norm();
  if (defect > 1e-13 * (1.0 + scale))
    throw std::invalid_argument("HermitianForm: matrix is not Hermitian");
  m_ = 0.5 * (entries + entries.adjoint());
}

HermitianForm HermitianForm::identity(int n) {
  return HermitianForm(Eigen::MatrixXcd::Identity(n, n));
}

HermitianForm HermitianForm::zero(int n) {
  return HermitianForm(Eigen::MatrixXcd::Zero(n, n));
}

PencilEigen pencil_eigen(const Pencil& p) {
  const int n = p.g.dim();
  if (p.theta.dim() != n)
    throw std::invalid_argument("pencil_eigen: dimension mismatch");
  Eigen::LLT<Eigen::MatrixXcd> llt(p.g.matrix());
  if (llt.info() != Eigen::Success)
    throw std::domain_error("pencil_eigen: metric is not positive definite");
  const Eigen::MatrixXcd L = llt.matrixL();
  // B = L^{-1} theta L^{-*}, then back-transform the orthonormal frame.
  Eigen::MatrixXcd B = L.triangularView<Eigen::Lower>().solve(p.theta.matrix());
  B = L.triangularView<Eigen::Lower>().solve(B.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(B);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("pencil_eigen: eigensolver failed");
  PencilEigen out;
  std::vector<double> lam(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) lam[static_cast<std::size_t>(i)] = es.eigenvalues()(i);
  out.lam = Spectrum(lam);
  out.frame = L.adjoint().triangularView<Eigen::Upper>().solve(es.eigenvectors());
  return out;
}

HermitianForm operator_derivative(const OperatorSpec& f, const Pencil& p) {
  const int n = p.g.dim();
  if (f.dim() != n)
    throw std::invalid_argument("operator_derivative: dimension mismatch");
  const auto eg = pencil_eigen(p);
  auto grad = op_gradient(f, eg.lam.values());  // ascending order

  // Average gradient entries over eigenvalue clusters; within a cluster the
  // frame is arbitrary but the averaged projector sum is not.
  const double scale = 1.0 + std::abs(eg.lam.max());
  int i = 0;
  while (i < n) {
    int j = i + 1;
    while (j < n && eg.lam[j] - eg.lam[j - 1] <= 1e-8 * scale) ++j;
    if (j - i > 1) {
      double avg = 0.0;
      for (int k = i; k < j; ++k) avg += grad[static_cast<std::size_t>(k)];
      avg /= (j - i);
      for (int k = i; k < j; ++k) grad[static_cast<std::size_t>(k)] = avg;
    }
    i = j;
  }

  Eigen::MatrixXcd w = Eigen::MatrixXcd::Zero(n, n);
  for (int pth = 0; pth < n; ++pth)
    w += grad[static_cast<std::size_t>(pth)] * eg.frame.col(pth) *
         eg.frame.col(pth).adjoint();
  return HermitianForm(w);
}

double derivative_pairing(const HermitianForm& w, const HermitianForm& x) {
  return (x.matrix() * w.matrix()).trace().real();
}

}  // namespace conekit
