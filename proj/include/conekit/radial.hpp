#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "conekit/operators.hpp"

namespace conekit {

/// Common solver outcome record.
struct SolveReport {
  bool converged = false;
  int iterations = 0;
  double final_residual = 0.0;
  double min_cone_margin = 0.0;
  double min_trace_slack = 0.0;  // slack of sum(lam) >= n + A_f (f - f(1))
  std::vector<int> damping_history;  // step halvings per Newton iteration
  std::string note;
};

class SolveError : public std::runtime_error {
 public:
  SolveError(const std::string& msg, SolveReport report)
      : std::runtime_error(msg), report(std::move(report)) {}
  SolveReport report;
};

/// Radial reduction of the equation on the annulus t = |z|^2 in [t0, 1]:
/// u = phi(t), chi = c * omega, so the eigenvalue tuple at t is
/// (c + phi', ..., c + phi', c + phi' + t phi'').
struct RadialProblem {
  int n = 2;            // complex dimension
  double t0 = 0.04;
  int points = 129;
  double chi_const = 1.0;
  double lambda0 = 1.0;
  OperatorSpec op = OperatorSpec::sigma_k_root(2, 2);
  std::function<double(double)> psi = [](double) { return 1.0; };

  double h() const { return (1.0 - t0) / (points - 1); }
  double t_at(int i) const { return t0 + h() * i; }
  /// Distance to the outer boundary |z| = 1.
  double sigma_at(int i) const { return 1.0 - std::sqrt(t_at(i)); }
};

/// Eigenvalues of chi + ddbar phi(|z|^2) at t: unsorted tuple
/// (c + phi' repeated n-1 times, c + phi' + t phi'').
std::vector<double> radial_eigenvalues(double phi_prime, double phi_second,
                                       double t, double c, int n);

struct RadialSolution {
  std::vector<double> phi;  // one value per grid point
  SolveReport report;
};

/// Damped cone-admissible Newton for the Dirichlet problem
/// f(lam) = psi exp(lambda0 phi), phi fixed at both ends. Falls back to a
/// short homotopy in psi when plain Newton stalls.
RadialSolution solve_radial_dirichlet(const RadialProblem& p, double phi_inner,
                                      double phi_outer,
                                      const std::vector<double>* initial = nullptr,
                                      double tol = 1e-10);

struct ExhaustionResult {
  std::vector<int> k_list;
  std::vector<std::vector<double>> solutions;
  std::vector<SolveReport> reports;
  double min_monotonicity = 0.0;   // min over grid/pairs of phi_{k+1} - phi_k
  double band_width = 0.0;         // spread of phi + 2 log sigma on the collar
  double c0_estimate = 0.0;        // sup of -(phi + 2 log sigma) on the collar
  std::vector<double> cauchy_sup;  // sup over middle third of |phi_k - phi_{k'}|
  int collar_begin = 0;            // first collar grid index
};

/// Dirichlet ladder with boundary data 2 log k, warm-started, with
/// monotonicity and boundary-growth diagnostics on the outer collar
/// (the 20% of interior points nearest t = 1).
ExhaustionResult solve_radial_exhaustion(const RadialProblem& p,
                                         const std::vector<int>& k_list,
                                         double tol = 1e-10);

struct BarrierMargin {
  bool admissible = true;
  double min_margin = 0.0;
  std::vector<int> inadmissible_indices;
  std::vector<double> margins;  // per collar grid point
  std::vector<int> collar_indices;
};

/// Margin of the collar barrier w = 2 log(delta^2 / (delta^2 + k sigma))
/// over the boundary value: f(lam(chi + ddbar(w + phi_bdry))) minus
/// psi exp(lambda0 (w + phi_bdry)) on sigma < delta.
BarrierMargin barrier_margin(const RadialProblem& p, int k, double delta,
                             double phi_bdry);

struct CompletenessDiagnostic {
  double slope = 0.0;       // d L / d log(1/sigma_min)
  double slope_ref = 0.0;   // same for the reference profile -2 log sigma
  double ratio = 0.0;
};

/// Divergence test of L(s) = int_s^delta e^{phi/2} d sigma along the radial
/// direction; a slope comparable to the -2 log sigma reference signals a
/// complete conformal metric at the resolved scales.
CompletenessDiagnostic completeness_integral(const RadialProblem& p,
                                             const std::vector<double>& phi,
                                             int collar_begin);

}  // namespace conekit
