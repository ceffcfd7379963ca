#include "conekit/curvature.hpp"

#include <cmath>
#include <stdexcept>

namespace conekit {

ReducedProblem reduce_mixed(const MixedRicciParams& p, const Cone& cone,
                            double varsigma,
                            const std::optional<HermitianField2>& ric) {
  if (!(p.beta > 0.0)) throw std::invalid_argument("reduce_mixed: beta must be positive");
  ReducedProblem out;
  out.form = ReducedProblem::Form::LaplacianHessian;
  const double coef = p.n * p.alpha + 2.0 * p.gamma;
  out.rho = -coef / p.beta;
  out.exponent_shift = -varsigma * std::log(p.beta);
  out.lambda0 = varsigma;
  const double vr = varrho(cone);
  if (std::abs(coef) < 1e-14) {
    out.regime = Regime::Inadmissible;  // pure-Laplacian case, no transform
    out.rho = 0.0;
  } else if (out.rho < vr - 1e-12) {
    out.regime = Regime::UniformlyElliptic;
  } else if (std::abs(out.rho - vr) <= 1e-12) {
    out.regime = Regime::Limiting;
  } else {
    out.regime = Regime::Inadmissible;
  }
  if (ric) {
    HermitianField2 shift(ric->h11.size());
    shift.add_scaled(*ric, -1.0 / p.beta);
    out.chi_shift = std::move(shift);
  }
  return out;
}

ReducedProblem reduce_first_chern(const std::optional<HermitianField2>& ric,
                                  int n, double varsigma) {
  if (!(varsigma > 0.0 && varsigma <= 1.0))
    throw std::invalid_argument("reduce_first_chern: varsigma must be in (0,1]");
  ReducedProblem out;
  out.form = ReducedProblem::Form::Hessian;
  out.rho = 0.0;
  out.lambda0 = varsigma;
  out.exponent_shift = -varsigma * std::log(static_cast<double>(n));
  out.regime = Regime::Inadmissible;  // no Laplacian transform involved
  if (ric) {
    HermitianField2 chi(ric->h11.size());
    chi.add_scaled(*ric, -1.0 / n);
    out.chi_shift = std::move(chi);
  }
  return out;
}

HermitianField2 chern_ricci_flat_conformal(const Grid4& g, const Field& u) {
  HermitianField2 ric(g.size());
  ric.add_scaled(complex_hessian(g, u), -2.0);  // -n ddbar u, n = 2
  return ric;
}

HermitianField2 chern_ricci_conformal_from_metric(const Grid4& g, const Field& u) {
  // Metric components g_{k lbar} = E delta_{kl} with E = e^u. The two
  // curvature terms contract to
  //   R_{i jbar} = -n E^{-1} d_i d_jbar E + n E^{-2} (d_i E)(d_jbar E),
  // evaluated with discrete stencils on the E field itself.
  const int n = 2;
  Field E(g.size());
  for (std::size_t p = 0; p < E.size(); ++p) E[p] = std::exp(u[p]);
  const auto hessE = complex_hessian(g, E);
  const auto gradE = complex_gradient(g, E);
  HermitianField2 ric(g.size());
  for (std::size_t p = 0; p < E.size(); ++p) {
    const double inv = 1.0 / E[p];
    const double inv2 = inv * inv;
    // d_jbar E = conj(d_j E)
    const std::complex<double> e1(gradE.re1[p], gradE.im1[p]);
    const std::complex<double> e2(gradE.re2[p], gradE.im2[p]);
    ric.h11[p] = -n * inv * hessE.h11[p] + n * inv2 * std::norm(e1);
    ric.h22[p] = -n * inv * hessE.h22[p] + n * inv2 * std::norm(e2);
    const std::complex<double> off =
        -static_cast<double>(n) * inv *
            std::complex<double>(hessE.re12[p], hessE.im12[p]) +
        static_cast<double>(n) * inv2 * e1 * std::conj(e2);
    ric.re12[p] = off.real();
    ric.im12[p] = off.imag();
  }
  return ric;
}

Field chern_scalar_flat_conformal(const Grid4& g, const Field& u) {
  const auto ric = chern_ricci_flat_conformal(g, u);
  Field out(g.size());
  for (std::size_t p = 0; p < out.size(); ++p)
    out[p] = std::exp(-u[p]) * (ric.h11[p] + ric.h22[p]);
  return out;
}

}  // namespace conekit
