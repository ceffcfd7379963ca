#pragma once

#include "conekit/operators.hpp"
#include "conekit/radial.hpp"  // SolveReport / SolveError
#include "conekit/torus_grid.hpp"

namespace conekit {

/// Periodic problem f(lam(chi + ddbar u)) = psi exp(lambda0 u) on the flat
/// complex 2-torus. chi must be admissible at every grid point.
struct TorusProblem {
  Grid4 grid{8};
  HermitianField2 chi;
  Field psi;
  double lambda0 = 1.0;
  OperatorSpec op = OperatorSpec::sigma_k_root(2, 2);
};

struct TorusSolution {
  Field u;
  SolveReport report;
};

/// Damped Newton with an FFT-preconditioned BiCGStab linear solve; every
/// accepted iterate is admissible at every grid point.
TorusSolution solve_torus(const TorusProblem& p, const Field* initial = nullptr,
                          double tol = 1e-9);

/// Residual field f(lam(chi + ddbar u)) - psi exp(lambda0 u); throws outside
/// the cone.
Field torus_residual(const TorusProblem& p, const Field& u);

/// Eigenvalue pair of chi + ddbar u at every point (ascending), useful for
/// admissibility inspection.
void torus_eigenvalues(const TorusProblem& p, const Field& u, Field& lo, Field& hi);

}  // namespace conekit
