#pragma once

#include <vector>

#include "striplab/contact.hpp"
#include "striplab/grid.hpp"

namespace striplab {

struct SolverConfig {
  int max_iterations = 25;
  double residual_tol = 1e-8;
  double step_damping = 1e-2;     // initial Levenberg-Marquardt damping
  double boundary_weight = 10.0;  // 0 drops the boundary rows from the stack
  bool dirichlet_from_oracle = true;
  double chart_bound = 0.25;
};

// Stacked residual for d_s v + M(v) d_t v = 0 on the flattened strip:
// per column, the two CR components tangential to each boundary condition on
// the edge rows, all four on interior rows, the weighted boundary rows
// (x, y at t=0; tau, x at t=1), and end-column Dirichlet mismatches when
// enabled.  Errors: ChartExceeded.
Eigen::VectorXd assemble_residual(const FieldGrid& grid, const StructureField& f,
                                  const SolverConfig& cfg,
                                  const FieldGrid* oracle = nullptr);

struct SolveLogEntry {
  int iter;
  double residual;   // l2 norm of the stack
  double step_norm;  // l2 norm of the damped update
};

struct SolveResult {
  FieldGrid grid;
  std::vector<SolveLogEntry> log;
  bool converged = false;
};

// Damped Gauss-Newton with an analytic sparse Jacobian and adaptive
// Levenberg-Marquardt regularization (the damping relaxes to plain Newton as
// the residual falls).  With Dirichlet ends and boundary_weight > 0 the
// discrete system is square.  Errors: ChartExceeded, SingularNormalEquations;
// non-convergence is reported in the result, best iterate returned.
SolveResult gauss_newton_solve(const FieldGrid& initial, const StructureField& f,
                               const SolverConfig& cfg,
                               const FieldGrid* oracle = nullptr);

}  // namespace striplab
