#pragma once

#include <Eigen/Dense>
#include <complex>

#include "conekit/operators.hpp"
#include "conekit/spectrum.hpp"

namespace conekit {

/// Pointwise Hermitian (1,1)-form; construction symmetrizes and rejects
/// inputs farther than 1e-13 (relative) from Hermitian.
class HermitianForm {
 public:
  explicit HermitianForm(Eigen::MatrixXcd entries);
  static HermitianForm identity(int n);
  static HermitianForm zero(int n);

  int dim() const { return static_cast<int>(m_.rows()); }
  const Eigen::MatrixXcd& matrix() const { return m_; }

 private:
  Eigen::MatrixXcd m_;
};

/// Hermitian-definite pencil: positive definite metric g and form theta.
struct Pencil {
  HermitianForm g;
  HermitianForm theta;
};

struct PencilEigen {
  Spectrum lam;            // eigenvalues of g^{-1} theta, ascending
  Eigen::MatrixXcd frame;  // columns v_p: theta v = lam g v, v^* g v = I
};

/// Generalized eigenvalues/eigenvectors via Cholesky reduction of g.
/// Throws std::domain_error when g is not positive definite.
PencilEigen pencil_eigen(const Pencil& p);

/// Derivative form of lam -> f(lam(g^{-1} theta)): the Hermitian psd matrix
/// W = sum_p f_p(lam) v_p v_p^*, with eigenvalue clusters (relative gap
/// below 1e-8) sharing the averaged gradient entry so W stays
/// frame-independent. The pairing with a Hermitian perturbation dTheta is
///   d/dt f(lam(g^{-1}(theta + t dTheta))) = Re tr(dTheta W),
/// and W satisfies tr(theta W) = sum f_i lam_i, tr(g W) = sum f_i.
HermitianForm operator_derivative(const OperatorSpec& f, const Pencil& p);

/// Re tr(X W): the directional derivative pairing.
double derivative_pairing(const HermitianForm& w, const HermitianForm& x);

}  // namespace conekit
