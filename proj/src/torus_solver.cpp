#include "conekit/torus_solver.hpp"

#include <cmath>
#include <complex>
#include <limits>

namespace conekit {

namespace {

struct PointState {
  double lam1, lam2;  // ascending
  double g1, g2;      // matching gradient entries
  // eigenvector for lam1 (unit), defining W = g2 I + (g1 - g2) v v^*
  std::complex<double> v0, v1;
  bool degenerate = false;
};

PointState decompose(double a11, double a22, std::complex<double> a12) {
  PointState s{};
  const auto ev = eig2(a11, a22, a12.real(), a12.imag());
  s.lam1 = ev[0];
  s.lam2 = ev[1];
  const double scale = std::abs(a11) + std::abs(a22) + std::abs(a12) + 1.0;
  if (ev[1] - ev[0] <= 1e-12 * scale) {
    s.degenerate = true;
    return s;
  }
  // eigenvector for lam1: (a12, lam1 - a11) or (lam1 - a22, conj a12)
  std::complex<double> x = a12, y = s.lam1 - a11;
  if (std::norm(x) + std::norm(y) < std::norm(s.lam1 - a22) + std::norm(a12)) {
    x = s.lam1 - a22;
    y = std::conj(a12);
  }
  const double nrm = std::sqrt(std::norm(x) + std::norm(y));
  s.v0 = x / nrm;
  s.v1 = y / nrm;
  return s;
}

struct Assembled {
  std::vector<PointState> pts;
  Field residual;
  Field mass;  // lambda0 psi exp(lambda0 u)
  double sup_residual = 0.0;
  double min_margin = 0.0;
  double min_trace_slack = 0.0;
  // mean derivative form and mass for the spectral preconditioner
  double w11 = 0.0, w22 = 0.0;
  std::complex<double> w12{0.0, 0.0};
  double mean_mass = 0.0;
};

class TorusOperator {
 public:
  explicit TorusOperator(const TorusProblem& p) : p_(p), ones_(2, 1.0) {
    f_one_ = op_value(p.op, ones_);
    a_f_ = trace_bound_constant(p.op);
  }

  bool admissible(const Field& u) const {
    const auto hess = complex_hessian(p_.grid, u);
    for (std::size_t q = 0; q < u.size(); ++q) {
      const auto ev = eig2(p_.chi.h11[q] + hess.h11[q], p_.chi.h22[q] + hess.h22[q],
                           p_.chi.re12[q] + hess.re12[q], p_.chi.im12[q] + hess.im12[q]);
      const double pair[2] = {ev[0], ev[1]};
      if (!contains(p_.op.cone(), std::span<const double>(pair, 2))) return false;
    }
    return true;
  }

  // Residual, gradient decomposition and preconditioner statistics.
  Assembled assemble(const Field& u) const {
    Assembled out;
    const std::size_t np = u.size();
    out.pts.resize(np);
    out.residual.resize(np);
    out.mass.resize(np);
    out.min_margin = std::numeric_limits<double>::infinity();
    out.min_trace_slack = std::numeric_limits<double>::infinity();
    const auto hess = complex_hessian(p_.grid, u);
    long double w11 = 0, w22 = 0, w12r = 0, w12i = 0, msum = 0;
    for (std::size_t q = 0; q < np; ++q) {
      const double a11 = p_.chi.h11[q] + hess.h11[q];
      const double a22 = p_.chi.h22[q] + hess.h22[q];
      const std::complex<double> a12(p_.chi.re12[q] + hess.re12[q],
                                     p_.chi.im12[q] + hess.im12[q]);
      auto& s = out.pts[q] = decompose(a11, a22, a12);
      const double pair[2] = {s.lam1, s.lam2};
      const std::span<const double> lam(pair, 2);
      out.min_margin = std::min(out.min_margin, cone_margin(p_.op.cone(), lam));
      const double fv = op_value(p_.op, lam);
      const auto g = op_gradient(p_.op, lam);
      s.g1 = g[0];
      s.g2 = g[1];
      if (s.degenerate) s.g1 = s.g2 = 0.5 * (g[0] + g[1]);

      const double mass = p_.lambda0 * p_.psi[q] * std::exp(p_.lambda0 * u[q]);
      out.mass[q] = mass;
      out.residual[q] = fv - p_.psi[q] * std::exp(p_.lambda0 * u[q]);
      out.sup_residual = std::max(out.sup_residual, std::abs(out.residual[q]));
      out.min_trace_slack = std::min(
          out.min_trace_slack, s.lam1 + s.lam2 - 2.0 - a_f_ * (fv - f_one_));

      // W = g2 I + (g1 - g2) v v^*
      double pw11, pw22, pw12r, pw12i;
      if (s.degenerate) {
        pw11 = pw22 = s.g1;
        pw12r = pw12i = 0.0;
      } else {
        const double dgg = s.g1 - s.g2;
        pw11 = s.g2 + dgg * std::norm(s.v0);
        pw22 = s.g2 + dgg * std::norm(s.v1);
        const std::complex<double> off = dgg * s.v0 * std::conj(s.v1);
        pw12r = off.real();
        pw12i = off.imag();
      }
      w11 += pw11; w22 += pw22; w12r += pw12r; w12i += pw12i; msum += mass;
    }
    const double inv = 1.0 / static_cast<double>(np);
    out.w11 = static_cast<double>(w11) * inv;
    out.w22 = static_cast<double>(w22) * inv;
    out.w12 = {static_cast<double>(w12r) * inv, static_cast<double>(w12i) * inv};
    out.mean_mass = static_cast<double>(msum) * inv;
    return out;
  }

  // L v = tr(ddbar v . W) - mass v, matrix-free
  void apply(const Assembled& st, const Field& v, Field& out) const {
    const auto hess = complex_hessian(p_.grid, v);
    out.resize(v.size());
    for (std::size_t q = 0; q < v.size(); ++q) {
      const auto& s = st.pts[q];
      double pw11, pw22, pw12r, pw12i;
      if (s.degenerate) {
        pw11 = pw22 = s.g1;
        pw12r = pw12i = 0.0;
      } else {
        const double dgg = s.g1 - s.g2;
        pw11 = s.g2 + dgg * std::norm(s.v0);
        pw22 = s.g2 + dgg * std::norm(s.v1);
        const std::complex<double> off = dgg * s.v0 * std::conj(s.v1);
        pw12r = off.real();
        pw12i = off.imag();
      }
      out[q] = hermitian_pair(pw11, pw22, {pw12r, pw12i}, hess.h11[q],
                              hess.h22[q], hess.re12[q], hess.im12[q]) -
               st.mass[q] * v[q];
    }
  }

 private:
  const TorusProblem& p_;
  std::vector<double> ones_;
  double f_one_ = 0.0, a_f_ = 0.0;
};

double dot(const Field& a, const Field& b) {
  long double s = 0.0L;
  for (std::size_t i = 0; i < a.size(); ++i) s += static_cast<long double>(a[i]) * b[i];
  return static_cast<double>(s);
}

double nrm2(const Field& a) { return std::sqrt(dot(a, a)); }

// Right-preconditioned BiCGStab; returns relative 2-norm residual.
double bicgstab(const TorusOperator& op, const Assembled& st,
                SpectralSolver& prec, const Field& b, Field& x, double rel_tol,
                int max_iter) {
  const std::size_t n = b.size();
  x.assign(n, 0.0);
  Field r(b), rhat(b), v(n, 0.0), pvec(n, 0.0), phat, s, shat, t, tmp;
  const double b_norm = nrm2(b);
  if (b_norm == 0.0) return 0.0;
  double rho = 1.0, alpha = 1.0, omega = 1.0;
  double res = 1.0;
  for (int it = 0; it < max_iter; ++it) {
    const double rho1 = dot(rhat, r);
    if (std::abs(rho1) < 1e-300) break;
    if (it == 0) {
      pvec = r;
    } else {
      const double beta = (rho1 / rho) * (alpha / omega);
      for (std::size_t i = 0; i < n; ++i)
        pvec[i] = r[i] + beta * (pvec[i] - omega * v[i]);
    }
    rho = rho1;
    prec.solve(pvec, phat);
    op.apply(st, phat, v);
    alpha = rho1 / dot(rhat, v);
    s.resize(n);
    for (std::size_t i = 0; i < n; ++i) s[i] = r[i] - alpha * v[i];
    if (nrm2(s) / b_norm < rel_tol) {
      for (std::size_t i = 0; i < n; ++i) x[i] += alpha * phat[i];
      return nrm2(s) / b_norm;
    }
    prec.solve(s, shat);
    op.apply(st, shat, t);
    omega = dot(t, s) / dot(t, t);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] += alpha * phat[i] + omega * shat[i];
      r[i] = s[i] - omega * t[i];
    }
    res = nrm2(r) / b_norm;
    if (res < rel_tol) return res;
  }
  return res;
}

}  // namespace

Field torus_residual(const TorusProblem& p, const Field& u) {
  TorusOperator op(p);
  return op.assemble(u).residual;
}

void torus_eigenvalues(const TorusProblem& p, const Field& u, Field& lo, Field& hi) {
  const auto hess = complex_hessian(p.grid, u);
  lo.resize(u.size());
  hi.resize(u.size());
  for (std::size_t q = 0; q < u.size(); ++q) {
    const auto ev = eig2(p.chi.h11[q] + hess.h11[q], p.chi.h22[q] + hess.h22[q],
                         p.chi.re12[q] + hess.re12[q], p.chi.im12[q] + hess.im12[q]);
    lo[q] = ev[0];
    hi[q] = ev[1];
  }
}

TorusSolution solve_torus(const TorusProblem& p, const Field* initial, double tol) {
  if (p.op.dim() != 2)
    throw std::invalid_argument("solve_torus: operator dimension must be 2");
  if (p.psi.size() != p.grid.size() || p.chi.h11.size() != p.grid.size())
    throw std::invalid_argument("solve_torus: field sizes disagree with the grid");
  TorusOperator op(p);

  Field u = initial ? *initial : Field(p.grid.size(), 0.0);
  if (!op.admissible(u))
    throw SolveError(initial ? "supplied initial field is inadmissible"
                             : "chi is not admissible (constant start rejected)",
                     {});

  TorusSolution sol;
  SpectralSolver prec(p.grid);
  Assembled st = op.assemble(u);

  for (int iter = 0; iter < 60; ++iter) {
    if (st.sup_residual <= tol) {
      sol.u = std::move(u);
      sol.report.converged = true;
      sol.report.iterations = iter;
      sol.report.final_residual = st.sup_residual;
      sol.report.min_cone_margin = st.min_margin;
      sol.report.min_trace_slack = st.min_trace_slack;
      return sol;
    }
    prec.set_model(st.w11, st.w22, st.w12, std::max(st.mean_mass, 1e-12));
    Field rhs(st.residual);
    for (double& x : rhs) x = -x;
    Field delta;
    const double inner_tol = std::min(1e-2, 0.1 * st.sup_residual);
    const double achieved =
        bicgstab(op, st, prec, rhs, delta, std::max(inner_tol, 1e-12), 600);
    if (achieved > 0.5)
      throw SolveError("torus linear solve stagnated (relative residual " +
                           std::to_string(achieved) + ")",
                       sol.report);

    double step = 1.0;
    int halvings = 0;
    bool accepted = false;
    Field trial(u.size());
    for (; halvings <= 50; ++halvings, step *= 0.5) {
      for (std::size_t q = 0; q < u.size(); ++q) trial[q] = u[q] + step * delta[q];
      if (!op.admissible(trial)) continue;
      Assembled st_trial = op.assemble(trial);
      if (st_trial.sup_residual < st.sup_residual) {
        u = std::move(trial);
        trial.resize(u.size());
        st = std::move(st_trial);
        accepted = true;
        break;
      }
    }
    sol.report.damping_history.push_back(halvings);
    if (!accepted) {
      sol.report.iterations = iter;
      sol.report.final_residual = st.sup_residual;
      throw SolveError("torus Newton stagnated after 50 dampings", sol.report);
    }
  }
  sol.report.final_residual = st.sup_residual;
  throw SolveError("torus Newton exceeded the iteration budget", sol.report);
}

}  // namespace conekit
