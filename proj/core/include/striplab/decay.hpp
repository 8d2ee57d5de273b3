#pragma once

#include <vector>

#include "striplab/contact.hpp"
#include "striplab/grid.hpp"
#include "striplab/spectral.hpp"

namespace striplab {

// Weighted inner product (gamma1, gamma2)_s = int <gamma1, Omega M gamma2> dt
// along one s-row of a flattened solution; trapezoid quadrature.  The weight
// matrix is symmetrized (the exact Omega M is symmetric only in the limit
// v -> 0; the defect decays like the solution).
struct WeightedInner {
  double ht = 0.0;
  std::vector<double> weights;  // trapezoid * ht
  std::vector<Matrix4> Om, M;   // per t-node
  std::vector<Matrix4> G;       // sym(Om * M)
  double c0 = 0.0, c1 = 0.0;    // norm-equivalence constants vs unweighted L2

  static WeightedInner from_row(const StructureField& f,
                                const std::vector<Vector4>& row, double ht);
};

using Path = std::vector<Vector4>;  // t-sampled 4-vector path

// Errors: GridMismatch.
double inner_s(const WeightedInner& w, const Path& g1, const Path& g2);

struct AlphaTrace {
  std::vector<double> s;               // interior rows only
  std::vector<double> alpha_logderiv;  // centered difference of log ||v||_s^2
  std::vector<double> alpha_formula;   // (xi, Gamma1 xi)_s + (xi, A xi)_s
  double lambda_fit = 0.0;             // tail average
  double delta_fit = 0.0;              // fitted decay rate of |alpha - lambda|
  double discrepancy_max = 0.0;
};

// Decay exponent along a flattened, recentered solution grid, via the two
// independent formulas.  Errors: ZeroNorm.
AlphaTrace alpha_trace(const FieldGrid& grid, const StructureField& f);

// Theta(s) gamma = M Omega^{-1} (d_t Omega) gamma on one row.
// Errors: SingularOmega.
Path theta_operator(const WeightedInner& w, const Path& g);

// Rank-one projection onto the kernel path e and its complement.
std::pair<Path, Path> project_kernel(const WeightedInner& w, const Path& g,
                                     const Path& e);

struct ConvexityReport {
  double min_ratio = 0.0;   // min g''/g over the checked interior rows
  double delta_fit = 0.0;   // sqrt(2 * min_ratio)
  bool envelope_ok = false; // g(s) <= g(s1) exp(-delta/sqrt2 (s-s1))
  bool degenerate = false;  // g identically zero (v in the kernel direction)
};

// g(s) = ||Q_s v(s)||_s^2 / 2 against the convexity and envelope bounds;
// ratios are evaluated for s >= burn_in.  Errors: GridTooShort.
ConvexityReport convexity_check(const FieldGrid& grid, const StructureField& f,
                                double burn_in = 0.0);

struct DecayReport {
  double lambda = 0.0;                // fitted limit of alpha
  double rho = 0.0;                   // sup-norm decay rate of v
  double delta_alpha = 0.0;           // rate of |alpha - lambda|
  double delta_remainder = 0.0;       // rate of sup_t |r|
  double kappa = 0.0;                 // eigenvector scale (least squares)
  double alpha_discrepancy_max = 0.0;
  double q0_used = 0.0;
  std::vector<double> derivative_rates;  // sup |d^beta v|, |beta| <= 2
  bool remainder_below_floor = false;
};

// Fits v(s,t) = e^{int alpha} (kappa e(t) + r(s,t)) and the exponential rates.
// Errors: NoSpectrumMatch, ZeroNorm.
DecayReport decay_fit(const FieldGrid& grid, const StructureField& f,
                      const EigenvectorFn& e);

// Max-norm difference between the L2(t)-normalized solution row nearest to s
// and the (sign-aligned) normalized eigenvector: the asymptotic direction test.
double eigen_direction_error(const FieldGrid& grid, const EigenvectorFn& e,
                             double s);

}  // namespace striplab
