#pragma once

#include <complex>
#include <functional>
#include <limits>
#include <vector>

#include "striplab/grid.hpp"

namespace striplab {

// Strip -> half-disk biholomorphism tanh(pi (s + i t) / 4).
std::complex<double> strip_to_halfdisk(double s, double t);

// Closed-form solution on the half disk {s^2 + t^2 <= 1, t >= 0}:
// (eps^2 (s^2 + t^2 - 1)/4, eps s, -eps t, eps^2 s t / 2).
// Errors: OutsideDomain.
ChartPoint halfdisk_solution(double eps, double s, double t);

// Same solution pulled back to the strip R x [0,1].
ChartPoint strip_solution(double eps, double s, double t);

// Sample strip_solution on a uniform grid.
FieldGrid sample_strip_solution(double eps, double s_min, double s_max, int n_s,
                                int n_t);

// Sample halfdisk_solution in polar coordinates (rho, phi) in [0,1] x [0,pi];
// grid coordinates s := rho, t := phi.
FieldGrid sample_halfdisk_polar(double eps, int n_rho, int n_phi);

// Structure field in coordinates recentered at the s -> +inf limit point
// (0, eps, 0, 0) of the strip solution: q(theta_rel) = -2 / (eps + theta_rel),
// with the positivity constant defaulted over [theta_rel_lo, 0].
StructureField flattened_strip_field(double eps, double theta_rel_lo = -1e-2);

// strip_solution recentered at (0, eps, 0, 0) and pushed through the
// flattening x -> x - q(theta) y with q(theta) = -2 / theta.
FieldGrid sample_flattened_strip(double eps, double s_min, double s_max,
                                 int n_s, int n_t);

struct ResidualReport {
  double max_norm = 0.0;
  double l2_norm = 0.0;
  double bc_t0_max = 0.0;       // |x|, |y| on the t=0 row
  double bc_t1_tau_max = 0.0;   // |tau| on the t=1 row
  double bc_t1_surf_max = 0.0;  // surface condition on the t=1 row
};

// R = d_s v + J(v) d_t v with second-order differences.  The surface condition
// reported for the t=1 row is b(theta) x - a(theta) y when a profile is given,
// else the elliptic normal form y + x theta / 2.  Errors: ChartExceeded when a
// value leaves chart_bound (pass +inf to disable).
ResidualReport cr_residual(const FieldGrid& grid,
                           const std::function<Matrix4(const Vector4&)>& J,
                           const SurfaceProfile* surface = nullptr,
                           double chart_bound = std::numeric_limits<double>::infinity());

// Trapezoid quadrature of the pullback of dx ^ dtheta (unflattened chart).
double energy_dlambda(const FieldGrid& grid);

struct EnergyBudget {
  double dlambda_energy = 0.0;
  double hofer_energy_lb = 0.0;  // max over the dictionary, a lower bound
};

struct PhiProfile {
  std::function<double(double)> phi;   // R -> [0,1]
  std::function<double(double)> dphi;  // >= 0
};

// Energies int u* d(phi lambda) per dictionary member; monotonicity of each phi
// is spot-checked.  Errors: NonMonotoneProfile.
EnergyBudget energy_hofer(const FieldGrid& grid,
                          const std::vector<PhiProfile>& dictionary);

struct SeparationReport {
  double min_pair_distance = 0.0;        // over all eps pairs
  std::vector<double> sup_norms;         // per eps, of the solution minus p+
  bool sup_monotone = false;             // sup norms decrease with |eps|
  double linear_bound_const = 0.0;       // max sup_norm / |eps|
};

// Images of strip_solution for distinct same-sign eps never intersect, and the
// family converges uniformly to the singular point as eps -> 0.
SeparationReport family_separation_check(const std::vector<double>& eps_list,
                                         double s_min, double s_max, int n_s,
                                         int n_t);

}  // namespace striplab
