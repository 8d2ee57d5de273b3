#pragma once

#include <array>
#include <string>
#include <vector>

#include "striplab/contact.hpp"
#include "striplab/grid.hpp"

namespace striplab {

// A_inf = -M_inf d/dt on paths gamma: [0,1] -> R^4 with gamma(0) in L0 =
// R^2 x {0} x {0} and gamma(1) in {0} x R x {0} x R.
struct AsymptoticOperator {
  double q0 = 0.0;
  Matrix4 M_inf = Matrix4::Identity();
};

Matrix4 build_Minf(double q0);
AsymptoticOperator make_asymptotic_operator(double q0);

struct SpectrumReport {
  std::string method;  // "shooting" or "finite-difference"
  double q0 = 0.0;
  int n = 0;  // FD grid size, 0 for shooting
  std::vector<double> eigenvalues;
  std::vector<int> multiplicities;
  std::vector<std::array<double, 2>> gaps;
};

// Roots of the shooting determinant D(lambda) = det of the (tau, x) components
// of exp(lambda M_inf) applied to a basis of L0, bracketed on a uniform grid
// and bisected to 1e-12.  Errors: RangeTooCoarse.
SpectrumReport spectrum_shooting(const AsymptoticOperator& op, double lo, double hi,
                                 double bracket_step = 0.05);

// Reduced second-order finite-difference matrix on n nodes (constrained
// components eliminated at the end nodes); size 4n - 4.
Eigen::MatrixXd fd_operator_matrix(const AsymptoticOperator& op, int n);

// All eigenvalues of the reduced FD matrix with near-real parts in range.
SpectrumReport spectrum_fd(const AsymptoticOperator& op, int n, double lo,
                           double hi);

struct EigenvectorFn {
  enum class Parity { even, odd };
  double lambda = 0.0;
  double kappa = 1.0;
  double q0 = 0.0;
  Parity parity = Parity::even;
  Vector4 operator()(double t) const;
  Vector4 deriv(double t) const;
};

// Closed-form eigenvectors: even (lambda in pi Z) kappa (0, cos, -sin, 0);
// odd (lambda in pi/2 + pi Z) -kappa (cos, -q0 cos, 0, sin), arguments
// lambda t.  Errors: NotInSpectrum.
EigenvectorFn analytic_eigenvector(double lambda, double q0, double kappa);

// max |e'(t) - lambda M_inf e(t)| on a fine grid plus boundary violations.
double eigen_ode_residual(const EigenvectorFn& e, const AsymptoticOperator& op,
                          int n = 1001);

// Hausdorff distance between the spectra of T and T + A0, and the spectral
// norm of A0 (the Kato/Weyl bound).  Errors: NotSymmetric.
std::pair<double, double> kato_distance(const Eigen::MatrixXd& T_mat,
                                        const Eigen::MatrixXd& A0,
                                        double sym_tol = 1e-10);

struct GapInterval {
  double r = 0.0;  // midpoint
  double d = 0.0;  // half-width
};

// For each n with [nL, (n+1)L] inside [lo, hi], the largest subinterval
// avoiding every supplied spectrum.  Errors: NoGap when the best half-width
// in some interval falls to min_half_width or below.
std::vector<GapInterval> spectral_gaps(
    const std::vector<std::vector<double>>& spectra, double L, double lo,
    double hi, double min_half_width = 1e-15);

struct Trivialization {
  std::vector<Matrix4> T;  // row-major over the grid
  Matrix4 T_inf = Matrix4::Identity();
  double max_metric_defect = 0.0;    // ||T^T T - Omega M||
  double max_complex_defect = 0.0;   // ||T M - J0 T||
  double max_implied_defect = 0.0;   // ||T^T J0 T + Omega||
};

// Gram-Schmidt frame under h = <., Omega M .> + i <., Omega .> sending the
// surface generator sigma onto (0,1) in C^2; J0 = multiplication by i under
// R^4 ~ C^2.  Errors: FrameDegenerate.
Trivialization build_trivialization(const StructureField& f, const FieldGrid& grid);

}  // namespace striplab
