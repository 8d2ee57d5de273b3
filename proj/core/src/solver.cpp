#include "striplab/solver.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/SparseCholesky>
#include <Eigen/SparseLU>

#include "striplab/errors.hpp"

namespace striplab {

namespace {

using Stencil = std::vector<std::pair<int, double>>;

Stencil d_stencil(int k, int n, double h) {
  if (k > 0 && k < n - 1) return {{k - 1, -0.5 / h}, {k + 1, 0.5 / h}};
  if (k == 0) return {{0, -1.5 / h}, {1, 2.0 / h}, {2, -0.5 / h}};
  return {{n - 1, 1.5 / h}, {n - 2, -2.0 / h}, {n - 3, 0.5 / h}};
}

// CR components collocated per row: tangential ones on the boundary rows
std::vector<int> cr_comps(int j, int n_t) {
  if (j == 0) return {0, 1};          // tau, theta (L0 fixes x, y)
  if (j == n_t - 1) return {1, 3};    // theta, y (t=1 fixes tau, x)
  return {0, 1, 2, 3};
}

void check_chart(const FieldGrid& g, double bound) {
  for (const Vector4& v : g.values)
    if (std::abs(v(2)) > bound || std::abs(v(3)) > bound)
      fail("ChartExceeded", "iterate left the chart bound");
}

int count_rows(const FieldGrid& g, const SolverConfig& cfg, bool with_dirichlet) {
  const int free_lo = cfg.dirichlet_from_oracle ? 1 : 0;
  const int free_hi = cfg.dirichlet_from_oracle ? g.n_s - 2 : g.n_s - 1;
  int per_col = 4 * (g.n_t - 2) + 4;  // CR rows
  if (cfg.boundary_weight > 0.0) per_col += 4;
  int rows = (free_hi - free_lo + 1) * per_col;
  if (with_dirichlet) rows += 8 * g.n_t;
  return rows;
}

}  // namespace

Eigen::VectorXd assemble_residual(const FieldGrid& grid, const StructureField& f,
                                  const SolverConfig& cfg, const FieldGrid* oracle) {
  check_chart(grid, cfg.chart_bound);
  const bool with_dirichlet = cfg.dirichlet_from_oracle && oracle != nullptr;
  Eigen::VectorXd r(count_rows(grid, cfg, with_dirichlet));
  int row = 0;

  const int free_lo = cfg.dirichlet_from_oracle ? 1 : 0;
  const int free_hi = cfg.dirichlet_from_oracle ? grid.n_s - 2 : grid.n_s - 1;
  for (int i = free_lo; i <= free_hi; ++i) {
    for (int j = 0; j < grid.n_t; ++j) {
      const Vector4& v = grid.at(i, j);
      const ChartPoint p{v(0), v(1), v(2), v(3)};
      const Vector4 R = fd_s(grid, i, j) + eval_Jhat(p, f) * fd_t(grid, i, j);
      for (int c : cr_comps(j, grid.n_t)) r(row++) = R(c);
    }
    if (cfg.boundary_weight > 0.0) {
      r(row++) = cfg.boundary_weight * grid.at(i, 0)(2);
      r(row++) = cfg.boundary_weight * grid.at(i, 0)(3);
      r(row++) = cfg.boundary_weight * grid.at(i, grid.n_t - 1)(0);
      r(row++) = cfg.boundary_weight * grid.at(i, grid.n_t - 1)(2);
    }
  }
  if (with_dirichlet) {
    for (int i : {0, grid.n_s - 1})
      for (int j = 0; j < grid.n_t; ++j)
        for (int c = 0; c < 4; ++c)
          r(row++) = grid.at(i, j)(c) - oracle->at(i, j)(c);
  }
  return r;
}

SolveResult gauss_newton_solve(const FieldGrid& initial, const StructureField& f,
                               const SolverConfig& cfg, const FieldGrid* oracle) {
  if (initial.n_s < 8 || initial.n_t < 8) fail("BadArgument", "grid counts >= 8");
  if (cfg.dirichlet_from_oracle && oracle == nullptr)
    fail("BadArgument", "dirichlet-from-oracle needs an oracle grid");

  SolveResult res;
  res.grid = initial;
  FieldGrid& g = res.grid;
  if (cfg.dirichlet_from_oracle) {  // pin the end columns to the oracle
    for (int i : {0, g.n_s - 1})
      for (int j = 0; j < g.n_t; ++j) g.at(i, j) = oracle->at(i, j);
  }

  const int free_lo = cfg.dirichlet_from_oracle ? 1 : 0;
  const int free_hi = cfg.dirichlet_from_oracle ? g.n_s - 2 : g.n_s - 1;
  const int n_free = free_hi - free_lo + 1;
  const int n_unknown = 4 * n_free * g.n_t;
  auto col_of = [&](int i, int j, int c) {
    return ((i - free_lo) * g.n_t + j) * 4 + c;
  };

  Eigen::VectorXd r = assemble_residual(g, f, cfg, oracle);
  double rnorm = r.norm();
  double mu = -1.0;  // set from the first Jacobian's scale

  for (int iter = 1; iter <= cfg.max_iterations; ++iter) {
    if (rnorm <= cfg.residual_tol) break;

    // sparse Jacobian of the stack with respect to the free-column values
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(static_cast<size_t>(r.size()) * 14);
    int row = 0;
    for (int i = free_lo; i <= free_hi; ++i) {
      for (int j = 0; j < g.n_t; ++j) {
        const Vector4& v = g.at(i, j);
        const ChartPoint p{v(0), v(1), v(2), v(3)};
        const Matrix4 M = eval_Jhat(p, f);
        const Vector4 dtv = fd_t(g, i, j);
        Matrix4 dM_dtv;  // column m: (dM/dv_m) dtv
        for (int m = 0; m < 4; ++m)
          dM_dtv.col(m) = eval_Jhat_derivative(p, f, Vector4::Unit(m)) * dtv;

        const Stencil ss = d_stencil(i, g.n_s, g.hs());
        const Stencil st = d_stencil(j, g.n_t, g.ht());
        for (int c : cr_comps(j, g.n_t)) {
          for (const auto& [ip, wgt] : ss)
            if (ip >= free_lo && ip <= free_hi)
              trip.emplace_back(row, col_of(ip, j, c), wgt);
          for (const auto& [jp, wgt] : st)
            for (int m = 0; m < 4; ++m)
              trip.emplace_back(row, col_of(i, jp, m), M(c, m) * wgt);
          for (int m = 0; m < 4; ++m)
            trip.emplace_back(row, col_of(i, j, m), dM_dtv(c, m));
          ++row;
        }
      }
      if (cfg.boundary_weight > 0.0) {
        trip.emplace_back(row++, col_of(i, 0, 2), cfg.boundary_weight);
        trip.emplace_back(row++, col_of(i, 0, 3), cfg.boundary_weight);
        trip.emplace_back(row++, col_of(i, g.n_t - 1, 0), cfg.boundary_weight);
        trip.emplace_back(row++, col_of(i, g.n_t - 1, 2), cfg.boundary_weight);
      }
    }
    // Dirichlet rows involve only pinned columns: no Jacobian entries.

    Eigen::SparseMatrix<double> J(r.size(), n_unknown);
    J.setFromTriplets(trip.begin(), trip.end());
    const Eigen::SparseMatrix<double> Jt = J.transpose();
    const Eigen::SparseMatrix<double> JtJ = Jt * J;
    const Eigen::VectorXd Jtr = Jt * r;
    Eigen::SparseMatrix<double> id(n_unknown, n_unknown);
    id.setIdentity();
    if (mu < 0.0) mu = cfg.step_damping * JtJ.diagonal().mean();

    // Levenberg-Marquardt damping: the noise ball is large compared to the
    // solution scale, so plain Newton steps overshoot badly early on
    bool accepted = false;
    double step_norm = 0.0;
    for (int inner = 0; inner < 40 && !accepted; ++inner) {
      Eigen::SparseMatrix<double> A = JtJ + mu * id;
      Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(A);
      if (ldlt.info() != Eigen::Success)
        fail("SingularNormalEquations", "damped normal equations are singular");
      const Eigen::VectorXd step = ldlt.solve(-Jtr);

      FieldGrid trial = g;
      for (int i = free_lo; i <= free_hi; ++i)
        for (int j = 0; j < g.n_t; ++j)
          for (int c = 0; c < 4; ++c)
            trial.at(i, j)(c) = g.at(i, j)(c) + step(col_of(i, j, c));
      bool in_chart = true;
      Eigen::VectorXd r_trial;
      try {
        r_trial = assemble_residual(trial, f, cfg, oracle);
      } catch (const Error&) {  // trial left the chart: damp harder
        in_chart = false;
      }
      if (in_chart && r_trial.norm() < rnorm) {
        g = trial;
        r = r_trial;
        rnorm = r_trial.norm();
        step_norm = step.norm();
        mu = std::max(mu / 3.0, 1e-14);
        accepted = true;
      } else {
        mu *= 4.0;
      }
    }
    if (!accepted) break;  // stalled; keep best iterate
    res.log.push_back({iter, rnorm, step_norm});
  }
  res.converged = rnorm <= cfg.residual_tol;
  return res;
}

}  // namespace striplab
