#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "conekit/cones.hpp"
#include "conekit/spectrum.hpp"

namespace conekit {

/// Symmetric concave curvature operator on its natural cone.
///   - sigma_k_root:     f = sigma_k^{1/k} on Garding(k, n).
///   - hessian_quotient: f = (sigma_k / sigma_l)^{1/(k-l)}, k > l >= 0,
///     normalized so f(1,...,1) = 1, on Garding(k, n).
///   - induced:          f~(lam) = f(P(lam)) on the transformed cone.
///   - scaled:           f^varsigma for 0 < varsigma <= 1, same cone.
/// All built-ins are positively homogeneous; the degree is varsigma().
class OperatorSpec {
 public:
  static OperatorSpec sigma_k_root(int k, int n, double tol = 1e-10);
  static OperatorSpec hessian_quotient(int k, int l, int n, double tol = 1e-10);
  static OperatorSpec induced(OperatorSpec base, double rho);
  static OperatorSpec scaled(OperatorSpec base, double varsigma);

  enum class Kind { SigmaKRoot, HessianQuotient, Induced, Scaled };

  Kind kind() const { return kind_; }
  int dim() const { return cone_.dim(); }
  int k() const { return k_; }
  int l() const { return l_; }
  double rho() const { return rho_; }
  double varsigma() const { return varsigma_; }
  const Cone& cone() const { return cone_; }
  const OperatorSpec& base() const;
  std::string describe() const;

 private:
  OperatorSpec() : cone_(Cone::garding(1, 1)) {}
  Kind kind_ = Kind::SigmaKRoot;
  int k_ = 1, l_ = 0;
  double rho_ = 0.0;
  double varsigma_ = 1.0;
  Cone cone_;
  std::shared_ptr<const OperatorSpec> base_;
};

/// f(lam). Throws ConeDomainError outside the natural cone.
double op_value(const OperatorSpec& f, std::span<const double> lam);
double op_value(const OperatorSpec& f, const Spectrum& lam);

/// Analytic gradient df/dlam_i, aligned with the given component order.
std::vector<double> op_gradient(const OperatorSpec& f, std::span<const double> lam);
std::vector<double> op_gradient(const OperatorSpec& f, const Spectrum& lam);

/// Gradient ratio f_{(1+kappa)} / sum_j f_j in the sorted-eigenvalue
/// convention (ascending lam gives a nonincreasing gradient).
double pue_ratio(const OperatorSpec& f, const Spectrum& lam);

/// A_f = n / sum_i f_i(1,...,1); trace bound constant.
double trace_bound_constant(const OperatorSpec& f);

struct StructuralAudit {
  std::int64_t samples = 0;
  std::int64_t positivity_violations = 0;
  std::int64_t homogeneity_violations = 0;
  std::int64_t gradient_positivity_violations = 0;
  std::int64_t concavity_midpoint_violations = 0;
  std::int64_t concavity_gradient_violations = 0;
  std::int64_t pairing_positivity_violations = 0;   // sum f_i(lam) mu_i > 0
  std::int64_t euler_violations = 0;                // sum f_i lam_i = varsigma f
  std::int64_t trace_bound_violations = 0;          // sum lam_i >= n + A_f (f - f(1))
  double min_growth_exponent = 0.0;  // fitted growth of f(lam + t e_max)
  double worst_concavity_slack = 0.0;
  double worst_trace_slack = 0.0;
  std::int64_t total_violations() const {
    return positivity_violations + homogeneity_violations +
           gradient_positivity_violations + concavity_midpoint_violations +
           concavity_gradient_violations + pairing_positivity_violations +
           euler_violations + trace_bound_violations;
  }
};

/// Randomized audit of positivity, homogeneity, concavity (midpoint and
/// tangent forms), gradient positivity, pairing positivity, the Euler
/// identity and the trace bound. Failures are recorded, never thrown.
StructuralAudit structural_audit(const OperatorSpec& f, std::int64_t nsamples,
                                 std::uint64_t seed);

/// Certified lower bound for the partial-uniform-ellipticity constant of the
/// cone: any admissible direction alpha with
/// (-a_1,...,-a_kappa, a_{kappa+1},...,a_n) in Gamma certifies
/// (a_1/n) / (sum_{i>kappa} a_i - sum_{i=2..kappa} a_i). Grid search plus
/// Nelder-Mead refinement; returns 0 with no admissible direction found.
double theta_lower_bound(const Cone& cone);
double theta_lower_bound(const Cone& cone, const OperatorSpec& f);

struct EllipticityReport {
  double theta_hat = 0.0;   // certified lower bound (0 in the limiting regime)
  double min_ratio = 0.0;   // min over samples of min_i f~_i / sum_j f~_j
  bool sum_positive = true;
  bool monotone = true;     // every f~_i > 0 across samples
  bool uniform = false;     // rho < varrho regime
  std::int64_t samples = 0;
  double worst_sum_identity = 0.0;  // max |sum f~_i - sum f_i|
};

/// Ellipticity audit of an induced operator: full uniform ellipticity with a
/// positive floor when rho < varrho(base cone), bare gradient positivity in
/// the limiting case rho = varrho.
EllipticityReport uniform_ellipticity_audit(const OperatorSpec& f_tilde,
                                            std::int64_t nsamples,
                                            std::uint64_t seed);

/// Draw a point of the cone at a log-uniform range of boundary distances.
/// Deterministic in (seed, index).
std::vector<double> sample_cone_point(const Cone& cone, std::uint64_t seed,
                                      std::uint64_t index);

}  // namespace conekit
