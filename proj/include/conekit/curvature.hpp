#pragma once

#include <optional>

#include "conekit/cones.hpp"
#include "conekit/torus_grid.hpp"

namespace conekit {

/// Coefficients of the mixed Chern-Ricci combination
/// alpha Ric^(1) + beta Ric^(2) + gamma (Ric^(3) + Ric^(4)), beta > 0.
struct MixedRicciParams {
  double alpha = 0.0;
  double beta = 1.0;
  double gamma = 0.0;
  int n = 2;
};

enum class Regime { UniformlyElliptic, Limiting, Inadmissible };

/// Output of a curvature-problem reduction to the standard equation form.
/// form == Hessian: f(lam(chi + ddbar u)) = psi exp(lambda0 u + shift),
/// already in canonical shape. form == LaplacianHessian: the left side is
/// f(lam(chi + (Delta u) omega - rho ddbar u)) and the cone transform with
/// this rho applies; regime classifies that transform
/// (rho < varrho: uniformly elliptic, rho = varrho: limiting, else none).
struct ReducedProblem {
  enum class Form { Hessian, LaplacianHessian };
  Form form = Form::Hessian;
  double rho = 0.0;
  double exponent_shift = 0.0;  // additive constant inside the exponential
  double lambda0 = 1.0;         // coefficient of u in the exponential
  Regime regime = Regime::Inadmissible;
  std::optional<HermitianField2> chi_shift;  // background term; empty means zero
};

/// Reduction of the prescribed mixed Chern-Ricci problem for a conformal
/// factor: rho = -(n alpha + 2 gamma)/beta, exponential shift
/// -varsigma log beta. The background Ricci field may be supplied; on the
/// flat torus it vanishes.
ReducedProblem reduce_mixed(const MixedRicciParams& p, const Cone& cone,
                            double varsigma = 1.0,
                            const std::optional<HermitianField2>& ric = std::nullopt);

/// Reduction of the prescribed first Chern-Ricci problem:
/// chi = -ric/n, lambda0 = varsigma, shift = -varsigma log n.
ReducedProblem reduce_first_chern(const std::optional<HermitianField2>& ric,
                                  int n, double varsigma);

/// First Chern-Ricci form of e^u * (flat metric) on the torus: -n ddbar u,
/// with the Hessian taken discretely. n = 2 here.
HermitianField2 chern_ricci_flat_conformal(const Grid4& g, const Field& u);

/// Same curvature evaluated directly from the metric components of
/// e^u * delta via the Chern curvature formula
///   R_{i jbar} = g^{k lbar} ( -d_i d_jbar g_{k lbar}
///                             + g^{p qbar} d_i g_{k qbar} d_jbar g_{p lbar} ),
/// discretized on the conformal factor field e^u. Agrees with
/// chern_ricci_flat_conformal to second order in h; the two routes validate
/// each other.
HermitianField2 chern_ricci_conformal_from_metric(const Grid4& g, const Field& u);

/// Chern scalar curvature of e^u * (flat metric):
/// e^{-u} tr(delta^{-1} Ric^(1)) = -n e^{-u} Delta u, computed as the exact
/// trace contraction of chern_ricci_flat_conformal.
Field chern_scalar_flat_conformal(const Grid4& g, const Field& u);

}  // namespace conekit
