#pragma once

#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "striplab/geometry.hpp"

namespace striplab {

using Matrix4 = Eigen::Matrix4d;
using Vector4 = Eigen::Vector4d;

// q(theta) = a/b with derivatives, plus the positivity constant C of the
// compatible 2-form.  q_second is optional (used only by the solver Jacobian);
// when absent it is approximated by central differences of q_prime.
struct StructureField {
  std::function<double(double)> q;
  std::function<double(double)> q_prime;
  std::function<double(double)> q_second;  // may be empty
  double C = 1.0;

  static StructureField constant(double q0, double C);
  // q from profile over [theta_lo, theta_hi]; C defaults to 1 + 2 sup q^2
  // sampled on that range.
  static StructureField from_profile(const SurfaceProfile& profile, double theta_lo,
                                     double theta_hi, double C = -1.0);

  double qss(double theta) const;  // q'' (analytic or finite-difference)
};

// 1 + 2 * sup q^2 over [lo, hi], sampled.
double default_C(const std::function<double(double)>& q, double lo, double hi,
                 int n_samples = 2001);

// Contact form of the flattened chart: dy + (x + q y) dtheta, as a covector.
Vector4 eval_lambda_hat(const ChartPoint& p, const StructureField& f);

// Reeb field (0, 0, -q, 1).
Vector4 eval_reeb(const ChartPoint& p, const StructureField& f);

// Almost complex structure of the flattened chart (rows/cols tau,theta,x,y).
Matrix4 eval_Jhat(const ChartPoint& p, const StructureField& f);

// Directional derivative of eval_Jhat along dv at p (needs q'').
Matrix4 eval_Jhat_derivative(const ChartPoint& p, const StructureField& f,
                             const Vector4& dv);

// Compatible 2-form of the unflattened chart:
// -xC dtau^dtheta - q dtau^dx + C dtau^dy - dtheta^dx + q dtheta^dy.
Matrix4 eval_Omega(const ChartPoint& p, const StructureField& f);

// Pushforward of the same form through the flattening map; this is the 2-form
// the weighted inner products along flattened solutions use.
Matrix4 eval_Omega_flat(const ChartPoint& p, const StructureField& f);

// Almost complex structure of the unflattened chart (tau,theta,x,y).
Matrix4 eval_J_simple(const ChartPoint& p);

struct CompatReport {
  double max_jsq = 0.0;        // || J^2 + Id ||, both charts
  double max_asym = 0.0;       // || Omega J - (Omega J)^T ||
  double max_conj = 0.0;       // || J^T Omega J - Omega ||
  double min_eig = 0.0;        // smallest eigenvalue of sym(Omega J)
  double max_lagrangian = 0.0; // omega on boundary tangent planes
  ChartPoint witness;          // point achieving min_eig
  bool pass(double tol = 1e-12, double pos_margin = 1e-8) const {
    return max_jsq <= tol && max_asym <= tol && max_conj <= tol &&
           max_lagrangian <= tol && min_eig > pos_margin;
  }
};

// Verifies the compatibility identities of the 2-form against the chart J at
// the sample points.  The identities are exact on the {x = 0} slice (which
// contains both boundary loci) and degrade linearly in x with slope 2C; callers
// sampling off-slice will see that in max_asym / max_conj.
// Errors: PositivityFailure when sym(Omega J) is not positive definite.
CompatReport compatibility_report(const StructureField& f,
                                  const std::vector<ChartPoint>& points);

}  // namespace striplab
