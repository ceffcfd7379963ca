#include "conekit/radial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace conekit {

std::vector<double> radial_eigenvalues(double phi_prime, double phi_second,
                                       double t, double c, int n) {
  std::vector<double> lam(static_cast<std::size_t>(n), c + phi_prime);
  lam.back() = c + phi_prime + t * phi_second;
  return lam;
}

namespace {

struct Discretization {
  const RadialProblem& p;
  std::vector<double> t, psi_vals;

  explicit Discretization(const RadialProblem& prob) : p(prob) {
    t.resize(static_cast<std::size_t>(p.points));
    psi_vals.resize(t.size());
    for (int i = 0; i < p.points; ++i) {
      t[static_cast<std::size_t>(i)] = p.t_at(i);
      psi_vals[static_cast<std::size_t>(i)] = p.psi(p.t_at(i));
    }
  }

  std::vector<double> eig_at(const std::vector<double>& phi, int i) const {
    const double h = p.h();
    auto ii = static_cast<std::size_t>(i);
    const double d1 = (phi[ii + 1] - phi[ii - 1]) / (2.0 * h);
    const double d2 = (phi[ii + 1] - 2.0 * phi[ii] + phi[ii - 1]) / (h * h);
    return radial_eigenvalues(d1, d2, t[ii], p.chi_const, p.n);
  }

  bool admissible(const std::vector<double>& phi) const {
    for (int i = 1; i + 1 < p.points; ++i)
      if (!contains(p.op.cone(), eig_at(phi, i))) return false;
    return true;
  }

  double min_margin(const std::vector<double>& phi) const {
    double m = std::numeric_limits<double>::infinity();
    for (int i = 1; i + 1 < p.points; ++i)
      m = std::min(m, cone_margin(p.op.cone(), eig_at(phi, i)));
    return m;
  }

  // residual F_i = f(lam_i) - psi_i exp(lambda0 phi_i), interior points only
  double residual(const std::vector<double>& phi, std::vector<double>& out,
                  std::function<double(int)> psi_override = nullptr) const {
    out.assign(static_cast<std::size_t>(p.points), 0.0);
    double sup = 0.0;
    for (int i = 1; i + 1 < p.points; ++i) {
      auto ii = static_cast<std::size_t>(i);
      const auto lam = eig_at(phi, i);
      const double fv = op_value(p.op, lam);
      const double ps = psi_override ? psi_override(i) : psi_vals[ii];
      out[ii] = fv - ps * std::exp(p.lambda0 * phi[ii]);
      sup = std::max(sup, std::abs(out[ii]));
    }
    return sup;
  }
};

// Tridiagonal solve (Thomas), interior unknowns 1..M-2.
void solve_tridiag(std::vector<double>& lower, std::vector<double>& diag,
                   std::vector<double>& upper, std::vector<double>& rhs) {
  const std::size_t m = diag.size();
  for (std::size_t i = 1; i < m; ++i) {
    const double w = lower[i] / diag[i - 1];
    diag[i] -= w * upper[i - 1];
    rhs[i] -= w * rhs[i - 1];
  }
  rhs[m - 1] /= diag[m - 1];
  for (std::size_t i = m - 1; i-- > 0;)
    rhs[i] = (rhs[i] - upper[i] * rhs[i + 1]) / diag[i];
}

double trace_slack_min(const Discretization& d, const std::vector<double>& phi) {
  const int n = d.p.n;
  std::vector<double> ones(static_cast<std::size_t>(n), 1.0);
  const double f1 = op_value(d.p.op, ones);
  const double af = trace_bound_constant(d.p.op);
  double worst = std::numeric_limits<double>::infinity();
  for (int i = 1; i + 1 < d.p.points; ++i) {
    const auto lam = d.eig_at(phi, i);
    double s = 0.0;
    for (double x : lam) s += x;
    worst = std::min(worst, s - n - af * (op_value(d.p.op, lam) - f1));
  }
  return worst;
}

// Core damped Newton; psi_override lets the homotopy reuse the machinery.
RadialSolution newton_radial(const Discretization& d, std::vector<double> phi,
                             double tol,
                             std::function<double(int)> psi_override = nullptr) {
  const RadialProblem& p = d.p;
  const int m = p.points - 2;  // interior unknowns
  const double h = p.h();
  RadialSolution sol;
  std::vector<double> res;
  double sup = d.residual(phi, res, psi_override);

  for (int iter = 0; iter < 100; ++iter) {
    if (sup <= tol) {
      sol.phi = phi;
      sol.report.converged = true;
      sol.report.iterations = iter;
      sol.report.final_residual = sup;
      sol.report.min_cone_margin = d.min_margin(phi);
      sol.report.min_trace_slack = trace_slack_min(d, phi);
      return sol;
    }
    std::vector<double> lower(static_cast<std::size_t>(m)),
        diag(static_cast<std::size_t>(m)), upper(static_cast<std::size_t>(m)),
        rhs(static_cast<std::size_t>(m));
    for (int i = 1; i + 1 < p.points; ++i) {
      auto ii = static_cast<std::size_t>(i);
      const auto lam = d.eig_at(phi, i);
      const auto g = op_gradient(p.op, lam);
      double s_side = 0.0;
      for (int q = 0; q + 1 < p.n; ++q) s_side += g[static_cast<std::size_t>(q)];
      const double gn = g.back();
      const double ti = d.t[ii];
      const double ps = psi_override ? psi_override(i) : d.psi_vals[ii];
      lower[ii - 1] = -(s_side + gn) / (2.0 * h) + gn * ti / (h * h);
      upper[ii - 1] = (s_side + gn) / (2.0 * h) + gn * ti / (h * h);
      diag[ii - 1] = -2.0 * gn * ti / (h * h) -
                     p.lambda0 * ps * std::exp(p.lambda0 * phi[ii]);
      rhs[ii - 1] = -res[ii];
    }
    solve_tridiag(lower, diag, upper, rhs);

    double step = 1.0;
    int halvings = 0;
    std::vector<double> trial(phi);
    bool accepted = false;
    for (; halvings <= 50; ++halvings, step *= 0.5) {
      for (int i = 1; i + 1 < p.points; ++i)
        trial[static_cast<std::size_t>(i)] =
            phi[static_cast<std::size_t>(i)] + step * rhs[static_cast<std::size_t>(i - 1)];
      if (!d.admissible(trial)) continue;
      std::vector<double> res_trial;
      const double sup_trial = d.residual(trial, res_trial, psi_override);
      if (sup_trial < sup) {
        phi = trial;
        res = std::move(res_trial);
        sup = sup_trial;
        accepted = true;
        break;
      }
    }
    sol.report.damping_history.push_back(halvings);
    if (!accepted) {
      sol.report.iterations = iter;
      sol.report.final_residual = sup;
      throw SolveError("radial Newton stagnated after 50 dampings", sol.report);
    }
  }
  sol.report.final_residual = sup;
  throw SolveError("radial Newton exceeded the iteration budget", sol.report);
}

std::vector<double> initial_guess(const Discretization& d, double phi_inner,
                                  double phi_outer) {
  const RadialProblem& p = d.p;
  std::vector<double> phi(static_cast<std::size_t>(p.points));
  auto fill = [&](double bump) {
    for (int i = 0; i < p.points; ++i) {
      const double t = d.t[static_cast<std::size_t>(i)];
      const double s = (t - p.t0) / (1.0 - p.t0);
      phi[static_cast<std::size_t>(i)] =
          phi_inner + (phi_outer - phi_inner) * s + bump * (t - p.t0) * (1.0 - t);
    }
  };
  fill(0.0);
  if (d.admissible(phi)) return phi;
  for (int j = 0; j <= 10; ++j)
    for (double sign : {1.0, -1.0}) {
      fill(sign * std::ldexp(1.0, j));
      if (d.admissible(phi)) return phi;
    }
  throw SolveError("no admissible initial guess found", {});
}

}  // namespace

RadialSolution solve_radial_dirichlet(const RadialProblem& p, double phi_inner,
                                      double phi_outer,
                                      const std::vector<double>* initial,
                                      double tol) {
  Discretization d(p);
  std::vector<double> phi0;
  if (initial) {
    phi0 = *initial;
    if (static_cast<int>(phi0.size()) != p.points)
      throw std::invalid_argument("solve_radial_dirichlet: initial size mismatch");
    phi0.front() = phi_inner;
    phi0.back() = phi_outer;
    if (!d.admissible(phi0)) throw SolveError("supplied initial guess is inadmissible", {});
  } else {
    phi0 = initial_guess(d, phi_inner, phi_outer);
  }

  try {
    return newton_radial(d, phi0, tol);
  } catch (const SolveError&) {
    // homotopy in psi anchored at the initial guess
    std::vector<double> anchor(static_cast<std::size_t>(p.points), 0.0);
    for (int i = 1; i + 1 < p.points; ++i) {
      const auto lam = d.eig_at(phi0, i);
      anchor[static_cast<std::size_t>(i)] =
          op_value(p.op, lam) *
          std::exp(-p.lambda0 * phi0[static_cast<std::size_t>(i)]);
    }
    std::vector<double> phi = phi0;
    RadialSolution sol;
    for (double s : {0.25, 0.5, 0.75, 1.0}) {
      auto blend = [&](int i) {
        return (1.0 - s) * anchor[static_cast<std::size_t>(i)] +
               s * d.psi_vals[static_cast<std::size_t>(i)];
      };
      sol = newton_radial(d, phi, tol, blend);
      phi = sol.phi;
    }
    return sol;
  }
}

ExhaustionResult solve_radial_exhaustion(const RadialProblem& p,
                                         const std::vector<int>& k_list,
                                         double tol) {
  for (std::size_t i = 1; i < k_list.size(); ++i)
    if (k_list[i] <= k_list[i - 1])
      throw std::invalid_argument("solve_radial_exhaustion: k_list must increase");
  ExhaustionResult out;
  out.k_list = k_list;
  out.min_monotonicity = std::numeric_limits<double>::infinity();

  std::vector<double> warm;
  double prev_bdy = 0.0;
  for (int k : k_list) {
    const double bdy = 2.0 * std::log(static_cast<double>(k));
    RadialSolution sol;
    if (warm.empty()) {
      sol = solve_radial_dirichlet(p, bdy, bdy, nullptr, tol);
    } else {
      std::vector<double> start(warm);
      for (double& x : start) x += bdy - prev_bdy;  // keep boundary data exact
      sol = solve_radial_dirichlet(p, bdy, bdy, &start, tol);
    }
    if (!out.solutions.empty()) {
      double mn = std::numeric_limits<double>::infinity();
      const auto& prev = out.solutions.back();
      for (std::size_t i = 0; i < prev.size(); ++i)
        mn = std::min(mn, sol.phi[i] - prev[i]);
      out.min_monotonicity = std::min(out.min_monotonicity, mn);
    }
    warm = sol.phi;
    prev_bdy = bdy;
    out.solutions.push_back(sol.phi);
    out.reports.push_back(sol.report);
  }

  // interior Cauchy differences over the middle third
  const int lo = p.points / 3, hi = 2 * p.points / 3;
  for (std::size_t j = 1; j < out.solutions.size(); ++j) {
    double sup = 0.0;
    for (int i = lo; i < hi; ++i)
      sup = std::max(sup, std::abs(out.solutions[j][static_cast<std::size_t>(i)] -
                                   out.solutions[j - 1][static_cast<std::size_t>(i)]));
    out.cauchy_sup.push_back(sup);
  }

  // boundary growth on the outer collar: phi + 2 log sigma confined to a band
  out.collar_begin = p.points - 1 - std::max(2, p.points / 5);
  const auto& last = out.solutions.back();
  double band_lo = std::numeric_limits<double>::infinity();
  double band_hi = -band_lo;
  for (int i = out.collar_begin; i + 1 < p.points; ++i) {
    const double v = last[static_cast<std::size_t>(i)] + 2.0 * std::log(p.sigma_at(i));
    band_lo = std::min(band_lo, v);
    band_hi = std::max(band_hi, v);
  }
  out.band_width = band_hi - band_lo;
  out.c0_estimate = -band_lo;
  return out;
}

BarrierMargin barrier_margin(const RadialProblem& p, int k, double delta,
                             double phi_bdry) {
  BarrierMargin out;
  out.min_margin = std::numeric_limits<double>::infinity();
  for (int i = 0; i < p.points; ++i) {
    const double t = p.t_at(i);
    const double sg = p.sigma_at(i);
    if (!(sg < delta) || sg <= 0.0) continue;
    out.collar_indices.push_back(i);
    // w(t) = 2 log(delta^2) - 2 log(delta^2 + k sigma(t)), sigma = 1 - sqrt t
    const double sp = -0.5 / std::sqrt(t);
    const double spp = 0.25 / std::pow(t, 1.5);
    const double q = delta * delta + k * sg;
    double w1 = 0.0, w2 = 0.0;
    if (k > 0) {
      w1 = -2.0 * k * sp / q;
      w2 = -2.0 * k * spp / q + 2.0 * k * k * sp * sp / (q * q);
    }
    const auto lam = radial_eigenvalues(w1, w2, t, p.chi_const, p.n);
    if (!contains(p.op.cone(), lam)) {
      out.admissible = false;
      out.inadmissible_indices.push_back(i);
      out.margins.push_back(std::numeric_limits<double>::quiet_NaN());
      continue;
    }
    const double w = (k > 0) ? 2.0 * std::log(delta * delta / q) : 0.0;
    const double margin =
        op_value(p.op, lam) - p.psi(t) * std::exp(p.lambda0 * (w + phi_bdry));
    out.margins.push_back(margin);
    out.min_margin = std::min(out.min_margin, margin);
  }
  return out;
}

CompletenessDiagnostic completeness_integral(const RadialProblem& p,
                                             const std::vector<double>& phi,
                                             int collar_begin) {
  CompletenessDiagnostic out;
  // sigma decreases along the grid; accumulate L from the collar's inner
  // edge toward the boundary with the trapezoid rule.
  std::vector<double> sig, integrand, integrand_ref;
  for (int i = collar_begin; i + 1 < p.points; ++i) {
    sig.push_back(p.sigma_at(i));
    integrand.push_back(std::exp(0.5 * phi[static_cast<std::size_t>(i)]));
    integrand_ref.push_back(1.0 / p.sigma_at(i));  // exp(-2 log sigma / 2)
  }
  const std::size_t m = sig.size();
  if (m < 4) throw std::invalid_argument("completeness_integral: collar too small");
  std::vector<double> L(m, 0.0), Lref(m, 0.0);
  for (std::size_t j = 1; j < m; ++j) {
    const double dj = sig[j - 1] - sig[j];
    L[j] = L[j - 1] + 0.5 * (integrand[j - 1] + integrand[j]) * dj;
    Lref[j] = Lref[j - 1] + 0.5 * (integrand_ref[j - 1] + integrand_ref[j]) * dj;
  }
  // least-squares slope of L against log(1/sigma)
  auto fit_slope = [&](const std::vector<double>& y) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t cnt = 0;
    for (std::size_t j = 1; j < m; ++j) {
      const double x = std::log(1.0 / sig[j]);
      sx += x; sy += y[j]; sxx += x * x; sxy += x * y[j];
      ++cnt;
    }
    return (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
  };
  out.slope = fit_slope(L);
  out.slope_ref = fit_slope(Lref);
  out.ratio = out.slope / out.slope_ref;
  return out;
}

}  // namespace conekit
