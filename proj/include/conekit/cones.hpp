#pragma once

#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "conekit/spectrum.hpp"

namespace conekit {

enum class ConeType { Type1, Type2 };

/// Symmetric open convex cone in R^n with vertex at the origin, containing
/// the positive orthant. Two representations:
///   - Garding(k, n): k-th Garding cone, the component of {sigma_k > 0}
///     containing the orthant; Garding(n,n) is the orthant, Garding(1,n) the
///     half-space {sum > 0}.
///   - LinearImage(base, rho): image of the base cone under the inverse of
///     the projection P, i.e. membership lam in Gamma~ iff P(lam) in Gamma.
class Cone {
 public:
  static Cone garding(int k, int n, double tol = 1e-10);
  static Cone linear_image(Cone base, double rho);

  bool is_garding() const { return base_ == nullptr; }
  int degree() const { return k_; }          // Garding only
  int dim() const { return n_; }
  double tol() const { return tol_; }
  double rho() const { return rho_; }        // LinearImage only
  const Cone& base() const;                  // LinearImage only

  /// Same cone with a different membership tolerance (recursively).
  Cone with_tol(double tol) const;

  std::string describe() const;

 private:
  Cone() = default;
  int k_ = 0;
  int n_ = 0;
  double tol_ = 1e-10;
  double rho_ = 0.0;
  std::shared_ptr<const Cone> base_;  // null for Garding
};

/// Error for eigenvalue tuples outside the cone; carries the first violated
/// symmetric-function degree when known.
class ConeDomainError : public std::domain_error {
 public:
  ConeDomainError(const std::string& msg, int violated_degree)
      : std::domain_error(msg), violated_degree_(violated_degree) {}
  int violated_degree() const { return violated_degree_; }

 private:
  int violated_degree_ = -1;
};

/// Strict interior membership, up to the cone's scale-free tolerance:
/// a Garding cone accepts lam iff sigma_j(lam) > tol * |lam|^j for all j <= k.
bool contains(const Cone& cone, const Spectrum& lam);
bool contains(const Cone& cone, std::span<const double> lam);

/// First violated sigma_j degree for a Garding-represented point, or 0 when
/// the point is a member. For LinearImage, the violated degree of the base.
int violated_degree(const Cone& cone, std::span<const double> lam);

/// Scale-free interior margin: positive inside the cone, <= 0 outside.
/// min over degrees j of sigma_j / (C(n,j) |lam|^j) minus tolerance.
double cone_margin(const Cone& cone, std::span<const double> lam);

/// Largest number of leading zeros a {0,1}-vector may have while staying in
/// the cone; equals n-k for Garding(k,n).
int kappa(const Cone& cone);

/// The unique rho in [1,n] with (1,...,1,1-rho) on the cone boundary,
/// located by bisection; Garding cones use the closed form n/k.
double varrho(const Cone& cone);

/// Bisection result regardless of representation (used to cross-check the
/// closed form).
double varrho_bisect(const Cone& cone);

/// Type2 iff kappa = n-1, i.e. (0,...,0,1) lies in the open cone.
ConeType cone_type(const Cone& cone);

struct GammaInftyProbe {
  bool member = false;
  bool hit_cap = false;   // probe exhausted the doubling schedule
  double R = 0.0;         // witness when member
};

/// Whether (lam', R) lies in the cone for some R > 0, probed by doubling R
/// up to 2^60.
bool gamma_infty_contains(const Cone& cone, std::span<const double> lam_prime);
GammaInftyProbe gamma_infty_probe(const Cone& cone, std::span<const double> lam_prime);

/// P(lam)_i = (sum_j lam_j - rho lam_i) / (n - rho). Inverse of map1_forward.
std::vector<double> project_p(std::span<const double> lam, double rho);
Spectrum project_p(const Spectrum& lam, double rho);

/// lam_i = (sum_j mu_j - (n - rho) mu_i) / rho.
std::vector<double> map1_forward(std::span<const double> mu, double rho);

/// The transformed cone Gamma~ = { lam : P(lam) in Gamma } for rho != 0,
/// rho <= varrho(Gamma) (and rho < n when Gamma is the half-space cone).
Cone transform_cone(const Cone& cone, double rho);

/// Levi-eigenvalue admissibility of a boundary with respect to the
/// transformed cone: true iff
///   sum_i kappa_i * 1 - rho (kappa', 0) + t (1,...,1,1-rho) in Gamma
/// for some t in a doubling schedule. For rho strictly below varrho(Gamma)
/// every boundary qualifies.
bool boundary_admissible(std::span<const double> kappa_prime, const Cone& cone,
                         double rho);

namespace detail {
/// Closed-form Gamma_infty test for Garding cones: all of R^{n-1} when k = 1,
/// otherwise the (k-1)-Garding cone in R^{n-1}. Test oracle.
bool gamma_infty_closed_form(int k, int n, std::span<const double> lam_prime,
                             double tol);
}  // namespace detail

}  // namespace conekit
