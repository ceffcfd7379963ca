#include "conekit/operators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "conekit/rng.hpp"
#include "conekit/sym_poly.hpp"

namespace conekit {

namespace {

double vsum(std::span<const double> v) {
  long double s = 0.0L;
  for (double x : v) s += x;
  return static_cast<double>(s);
}

}  // namespace

OperatorSpec OperatorSpec::sigma_k_root(int k, int n, double tol) {
  OperatorSpec f;
  f.kind_ = Kind::SigmaKRoot;
  f.k_ = k;
  f.cone_ = Cone::garding(k, n, tol);
  return f;
}

OperatorSpec OperatorSpec::hessian_quotient(int k, int l, int n, double tol) {
  if (!(k > l && l >= 0))
    throw std::invalid_argument("hessian_quotient: need k > l >= 0");
  OperatorSpec f;
  f.kind_ = Kind::HessianQuotient;
  f.k_ = k;
  f.l_ = l;
  f.cone_ = Cone::garding(k, n, tol);
  return f;
}

OperatorSpec OperatorSpec::induced(OperatorSpec base, double rho) {
  OperatorSpec f;
  f.kind_ = Kind::Induced;
  f.rho_ = rho;
  f.varsigma_ = base.varsigma_;
  f.cone_ = transform_cone(base.cone(), rho);
  f.base_ = std::make_shared<OperatorSpec>(std::move(base));
  return f;
}

OperatorSpec OperatorSpec::scaled(OperatorSpec base, double varsigma) {
  if (!(varsigma > 0.0 && varsigma <= 1.0))
    throw std::invalid_argument("scaled: need 0 < varsigma <= 1");
  OperatorSpec f;
  f.kind_ = Kind::Scaled;
  f.varsigma_ = base.varsigma_ * varsigma;
  f.cone_ = base.cone();
  f.base_ = std::make_shared<OperatorSpec>(std::move(base));
  return f;
}

const OperatorSpec& OperatorSpec::base() const {
  if (!base_) throw std::logic_error("OperatorSpec::base: leaf operator");
  return *base_;
}

std::string OperatorSpec::describe() const {
  switch (kind_) {
    case Kind::SigmaKRoot:
      return "sigma_" + std::to_string(k_) + "^{1/" + std::to_string(k_) +
             "} on " + cone_.describe();
    case Kind::HessianQuotient:
      return "(sigma_" + std::to_string(k_) + "/sigma_" + std::to_string(l_) +
             ")^{1/" + std::to_string(k_ - l_) + "} on " + cone_.describe();
    case Kind::Induced:
      return "induced(" + base_->describe() + ", rho=" + std::to_string(rho_) + ")";
    case Kind::Scaled:
      return "(" + base_->describe() + ")^" + std::to_string(varsigma_);
  }
  return "?";
}

static void check_domain(const OperatorSpec& f, std::span<const double> lam) {
  const int bad = violated_degree(f.cone(), lam);
  if (bad != 0)
    throw ConeDomainError("operator evaluated outside its cone (sigma_" +
                              std::to_string(bad) + " nonpositive)",
                          bad);
}

double op_value(const OperatorSpec& f, std::span<const double> lam) {
  switch (f.kind()) {
    case OperatorSpec::Kind::SigmaKRoot: {
      check_domain(f, lam);
      const double ek = sigma_k(lam, f.k());
      return std::pow(ek, 1.0 / f.k());
    }
    case OperatorSpec::Kind::HessianQuotient: {
      check_domain(f, lam);
      const int n = f.dim();
      const double num = sigma_k(lam, f.k()) / binomial(n, f.k());
      const double den = sigma_k(lam, f.l()) / binomial(n, f.l());
      return std::pow(num / den, 1.0 / (f.k() - f.l()));
    }
    case OperatorSpec::Kind::Induced:
      return op_value(f.base(), project_p(lam, f.rho()));
    case OperatorSpec::Kind::Scaled: {
      const double s = f.varsigma() / f.base().varsigma();
      return std::pow(op_value(f.base(), lam), s);
    }
  }
  throw std::logic_error("op_value: unreachable");
}

double op_value(const OperatorSpec& f, const Spectrum& lam) {
  return op_value(f, std::span<const double>(lam.values()));
}

std::vector<double> op_gradient(const OperatorSpec& f, std::span<const double> lam) {
  const int n = f.dim();
  switch (f.kind()) {
    case OperatorSpec::Kind::SigmaKRoot: {
      check_domain(f, lam);
      const double ek = sigma_k(lam, f.k());
      const double fval = std::pow(ek, 1.0 / f.k());
      auto g = sigma_k_gradient(lam, f.k());
      const double c = fval / (f.k() * ek);
      for (double& gi : g) gi *= c;
      return g;
    }
    case OperatorSpec::Kind::HessianQuotient: {
      check_domain(f, lam);
      const double ek = sigma_k(lam, f.k());
      const double el = sigma_k(lam, f.l());
      const double fval = op_value(f, lam);
      auto gk = sigma_k_gradient(lam, f.k());
      const auto gl = sigma_k_gradient(lam, f.l());
      const double c = fval / (f.k() - f.l());
      for (int i = 0; i < n; ++i) {
        auto ii = static_cast<std::size_t>(i);
        gk[ii] = c * (gk[ii] / ek - gl[ii] / el);
      }
      return gk;
    }
    case OperatorSpec::Kind::Induced: {
      const double rho = f.rho();
      const auto mu = project_p(lam, rho);
      const auto g = op_gradient(f.base(), mu);
      const double total = vsum(g);
      std::vector<double> gt(g.size());
      for (int i = 0; i < n; ++i)
        gt[static_cast<std::size_t>(i)] =
            (total - rho * g[static_cast<std::size_t>(i)]) / (n - rho);
      return gt;
    }
    case OperatorSpec::Kind::Scaled: {
      const double s = f.varsigma() / f.base().varsigma();
      const double v = op_value(f.base(), lam);
      auto g = op_gradient(f.base(), lam);
      const double c = s * std::pow(v, s - 1.0);
      for (double& gi : g) gi *= c;
      return g;
    }
  }
  throw std::logic_error("op_gradient: unreachable");
}

std::vector<double> op_gradient(const OperatorSpec& f, const Spectrum& lam) {
  return op_gradient(f, std::span<const double>(lam.values()));
}

double pue_ratio(const OperatorSpec& f, const Spectrum& lam) {
  check_domain(f, lam.values());
  const auto g = op_gradient(f, lam.values());  // ascending lam
  const int kap = kappa(f.cone());
  const double total = vsum(g);
  return g[static_cast<std::size_t>(kap)] / total;
}

double trace_bound_constant(const OperatorSpec& f) {
  std::vector<double> ones(static_cast<std::size_t>(f.dim()), 1.0);
  return f.dim() / vsum(op_gradient(f, ones));
}

std::vector<double> sample_cone_point(const Cone& cone, std::uint64_t seed,
                                      std::uint64_t index) {
  const int n = cone.dim();
  CounterRng rng(seed, index);
  std::vector<double> v(static_cast<std::size_t>(n));
  for (double& x : v) x = rng.uniform(-1.0, 1.0);
  // Shift along the diagonal until inside, then back off to a log-uniform
  // distance from the boundary; membership is monotone in the shift.
  auto member_at = [&](double s) {
    std::vector<double> w(v);
    for (double& x : w) x += s;
    return contains(cone, w);
  };
  double hi = 2.0;
  while (!member_at(hi)) hi *= 2.0;
  double lo = -2.0;
  while (member_at(lo)) lo -= 2.0;
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    (member_at(mid) ? hi : lo) = mid;
  }
  const double dist = std::exp(rng.uniform(-14.0, 1.5));
  const double s = hi + dist;
  for (double& x : v) x += s;
  return v;
}

StructuralAudit structural_audit(const OperatorSpec& f, std::int64_t nsamples,
                                 std::uint64_t seed) {
  StructuralAudit report;
  report.samples = nsamples;
  report.min_growth_exponent = std::numeric_limits<double>::infinity();
  const int n = f.dim();
  const double vs = f.varsigma();
  std::vector<double> ones(static_cast<std::size_t>(n), 1.0);
  const double f_one = op_value(f, ones);
  const double a_f = trace_bound_constant(f);

  for (std::int64_t s = 0; s < nsamples; ++s) {
    const auto lam = sample_cone_point(f.cone(), seed, static_cast<std::uint64_t>(2 * s));
    const auto mu = sample_cone_point(f.cone(), seed, static_cast<std::uint64_t>(2 * s + 1));
    const double flam = op_value(f, lam);
    const double fmu = op_value(f, mu);
    const double scale = 1.0 + std::abs(flam) + std::abs(fmu);

    if (!(flam > 0.0)) report.positivity_violations++;

    for (double t : {0.5, 2.0, 10.0}) {
      std::vector<double> tl(lam);
      for (double& x : tl) x *= t;
      const double lhs = op_value(f, tl);
      const double rhs = std::pow(t, vs) * flam;
      if (std::abs(lhs - rhs) > 1e-10 * (1.0 + std::abs(lhs) + std::abs(rhs)))
        report.homogeneity_violations++;
    }

    const auto g = op_gradient(f, lam);
    bool grad_pos = true;
    long double gsum = 0.0L, glam = 0.0L, gmu = 0.0L;
    for (int i = 0; i < n; ++i) {
      auto ii = static_cast<std::size_t>(i);
      if (!(g[ii] > 0.0)) grad_pos = false;
      gsum += g[ii];
      glam += g[ii] * lam[ii];
      gmu += g[ii] * mu[ii];
    }
    if (!grad_pos) report.gradient_positivity_violations++;
    if (!(static_cast<double>(gmu) > 0.0)) report.pairing_positivity_violations++;
    if (std::abs(static_cast<double>(glam) - vs * flam) > 1e-10 * scale)
      report.euler_violations++;

    std::vector<double> mid(lam);
    for (int i = 0; i < n; ++i)
      mid[static_cast<std::size_t>(i)] =
          0.5 * (lam[static_cast<std::size_t>(i)] + mu[static_cast<std::size_t>(i)]);
    const double fmid = op_value(f, mid);
    const double midpoint_slack = fmid - 0.5 * (flam + fmu);
    if (midpoint_slack < -1e-10 * scale) report.concavity_midpoint_violations++;

    // tangent form: f(mu) <= f(lam) + <grad f(lam), mu - lam>
    long double tangent = flam;
    for (int i = 0; i < n; ++i) {
      auto ii = static_cast<std::size_t>(i);
      tangent += static_cast<long double>(g[ii]) * (mu[ii] - lam[ii]);
    }
    const double tangent_slack = static_cast<double>(tangent) - fmu;
    if (tangent_slack < -1e-10 * scale) report.concavity_gradient_violations++;
    report.worst_concavity_slack =
        std::min({report.worst_concavity_slack, midpoint_slack, tangent_slack});

    const double trace_slack = vsum(lam) - n - a_f * (flam - f_one);
    if (trace_slack < -1e-10 * (1.0 + std::abs(vsum(lam)))) report.trace_bound_violations++;
    report.worst_trace_slack = std::min(report.worst_trace_slack, trace_slack);

    if (s < 64) {  // growth probe is a diagnostic; a few samples suffice
      const auto imax = static_cast<std::size_t>(
          std::max_element(lam.begin(), lam.end()) - lam.begin());
      std::vector<double> shifted(lam);
      double prev = flam, t_prev = 0.0, exponent = 0.0;
      for (double t = 1.0; t <= 65536.0; t *= 2.0) {
        shifted[imax] = lam[imax] + t;
        double cur;
        try {
          cur = op_value(f, shifted);
        } catch (const ConeDomainError&) {
          break;
        }
        if (t_prev > 0.0) exponent = std::log(cur / prev) / std::log(t / t_prev);
        prev = cur;
        t_prev = t;
      }
      report.min_growth_exponent = std::min(report.min_growth_exponent, exponent);
    }
  }
  return report;
}

namespace {

// Certified ratio for a positive direction alpha whose first `kap` entries
// enter with a negative sign; expects that block sorted descending.
double theta_of_direction(const Cone& cone, std::span<const double> alpha, int kap) {
  const int n = cone.dim();
  std::vector<double> signed_dir(alpha.begin(), alpha.end());
  for (int i = 0; i < kap; ++i) signed_dir[static_cast<std::size_t>(i)] *= -1.0;
  if (!contains(cone, signed_dir)) return 0.0;
  long double den = 0.0L;
  for (int i = kap; i < n; ++i) den += alpha[static_cast<std::size_t>(i)];
  for (int i = 1; i < kap; ++i) den -= alpha[static_cast<std::size_t>(i)];
  if (!(den > 0.0L)) return 0.0;
  return static_cast<double>(alpha[0] / n / den);
}

double theta_eval(const Cone& cone, std::vector<double> alpha, int kap) {
  for (double x : alpha)
    if (!(x > 0.0)) return 0.0;
  std::sort(alpha.begin(), alpha.begin() + kap, std::greater<double>());
  return theta_of_direction(cone, alpha, kap);
}

}  // namespace

double theta_lower_bound(const Cone& cone) {
  const int n = cone.dim();
  const int kap = kappa(cone);
  if (kap == 0) return 1.0 / n;

  // Grid over the symmetric family (a, b,...,b | c,...,c); the objective is
  // scale-invariant so no normalization is needed.
  double best = 0.0;
  std::vector<double> best_alpha;
  const int G = 40;
  for (int ia = 1; ia <= G; ++ia) {
    for (int ib = 1; ib <= (kap > 1 ? G : 1); ++ib) {
      for (int ic = 1; ic <= G; ++ic) {
        const double a = static_cast<double>(ia) / G;
        const double b = (kap > 1) ? a * ib / G : 0.0;  // keep a >= b
        const double c = static_cast<double>(ic) / G;
        std::vector<double> alpha(static_cast<std::size_t>(n), c);
        alpha[0] = a;
        for (int i = 1; i < kap; ++i) alpha[static_cast<std::size_t>(i)] = b;
        const double th = theta_of_direction(cone, alpha, kap);
        if (th > best) {
          best = th;
          best_alpha = alpha;
        }
      }
    }
  }
  if (best_alpha.empty()) return 0.0;

  // Nelder-Mead refinement over the full positive direction space.
  const int dim = n;
  std::vector<std::vector<double>> simplex;
  simplex.push_back(best_alpha);
  for (int i = 0; i < dim; ++i) {
    auto p = best_alpha;
    p[static_cast<std::size_t>(i)] *= 1.15;
    simplex.push_back(p);
  }
  auto score = [&](const std::vector<double>& a) { return -theta_eval(cone, a, kap); };
  std::vector<double> fv(simplex.size());
  for (std::size_t i = 0; i < simplex.size(); ++i) fv[i] = score(simplex[i]);
  for (int it = 0; it < 400; ++it) {
    std::vector<std::size_t> order(simplex.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
    const std::size_t worst = order.back(), best_i = order.front();
    if (fv[worst] - fv[best_i] < 1e-14) break;
    std::vector<double> centroid(static_cast<std::size_t>(dim), 0.0);
    for (std::size_t i : order)
      if (i != worst)
        for (int d = 0; d < dim; ++d)
          centroid[static_cast<std::size_t>(d)] +=
              simplex[i][static_cast<std::size_t>(d)] / dim;
    auto blend = [&](double w) {
      std::vector<double> p(static_cast<std::size_t>(dim));
      for (int d = 0; d < dim; ++d) {
        auto dd = static_cast<std::size_t>(d);
        p[dd] = centroid[dd] + w * (centroid[dd] - simplex[worst][dd]);
      }
      return p;
    };
    auto refl = blend(1.0);
    const double fr = score(refl);
    if (fr < fv[best_i]) {
      auto exp_p = blend(2.0);
      const double fe = score(exp_p);
      if (fe < fr) { simplex[worst] = exp_p; fv[worst] = fe; }
      else { simplex[worst] = refl; fv[worst] = fr; }
    } else if (fr < fv[order[order.size() - 2]]) {
      simplex[worst] = refl;
      fv[worst] = fr;
    } else {
      auto con = blend(-0.5);
      const double fc = score(con);
      if (fc < fv[worst]) { simplex[worst] = con; fv[worst] = fc; }
      else {
        for (std::size_t i : order)
          if (i != best_i) {
            for (int d = 0; d < dim; ++d) {
              auto dd = static_cast<std::size_t>(d);
              simplex[i][dd] = 0.5 * (simplex[i][dd] + simplex[best_i][dd]);
            }
            fv[i] = score(simplex[i]);
          }
      }
    }
  }
  for (std::size_t i = 0; i < simplex.size(); ++i)
    best = std::max(best, -fv[i]);
  return best;
}

double theta_lower_bound(const Cone& cone, const OperatorSpec& f) {
  if (f.dim() != cone.dim())
    throw std::invalid_argument("theta_lower_bound: dimension mismatch");
  return theta_lower_bound(cone);
}

EllipticityReport uniform_ellipticity_audit(const OperatorSpec& f_tilde,
                                            std::int64_t nsamples,
                                            std::uint64_t seed) {
  if (f_tilde.kind() != OperatorSpec::Kind::Induced)
    throw std::invalid_argument("uniform_ellipticity_audit: expects an induced operator");
  const OperatorSpec& base = f_tilde.base();
  const double rho = f_tilde.rho();
  const double vr = varrho(base.cone());
  if (rho > vr + 1e-12)
    throw std::invalid_argument("uniform_ellipticity_audit: rho exceeds varrho");
  EllipticityReport rep;
  rep.samples = nsamples;
  rep.uniform = rho < vr - 1e-12;
  rep.min_ratio = std::numeric_limits<double>::infinity();
  const int n = f_tilde.dim();
  for (std::int64_t s = 0; s < nsamples; ++s) {
    const auto seed_mu =
        sample_cone_point(base.cone(), seed, static_cast<std::uint64_t>(s));
    const auto lam = map1_forward(seed_mu, rho);
    const auto mu = project_p(lam, rho);  // the point the induced operator sees
    const auto gt = op_gradient(f_tilde, lam);
    const auto gb = op_gradient(base, mu);
    const double st = vsum(gt), sb = vsum(gb);
    rep.worst_sum_identity = std::max(
        rep.worst_sum_identity, std::abs(st - sb) / (1.0 + std::abs(sb)));
    if (!(st > 0.0)) rep.sum_positive = false;
    double mn = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i)
      mn = std::min(mn, gt[static_cast<std::size_t>(i)]);
    if (!(mn > 0.0)) rep.monotone = false;
    rep.min_ratio = std::min(rep.min_ratio, mn / st);
  }
  rep.theta_hat = rep.uniform ? theta_lower_bound(f_tilde.cone()) : 0.0;
  return rep;
}

}  // namespace conekit
