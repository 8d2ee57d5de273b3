#include "striplab/exact.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "striplab/errors.hpp"

namespace striplab {

namespace {
constexpr double kPi = std::numbers::pi;
}

std::complex<double> strip_to_halfdisk(double s, double t) {
  return std::tanh(std::complex<double>(kPi * s / 4.0, kPi * t / 4.0));
}

ChartPoint halfdisk_solution(double eps, double s, double t) {
  if (t < 0.0 || s * s + t * t > 1.0 + 1e-12)
    fail("OutsideDomain", "half-disk solution needs s^2 + t^2 <= 1, t >= 0");
  ChartPoint p;
  p.tau = 0.25 * eps * eps * (s * s + t * t - 1.0);
  p.theta = eps * s;
  p.x = -eps * t;
  p.y = 0.5 * eps * eps * s * t;
  return p;
}

ChartPoint strip_solution(double eps, double s, double t) {
  const double ct = std::cos(kPi * t / 2.0);
  const double st = std::sin(kPi * t / 2.0);
  const double sh = std::sinh(kPi * s / 2.0);
  const double D = ct + std::cosh(kPi * s / 2.0);
  ChartPoint p;
  p.tau = -0.5 * eps * eps * ct / D;
  p.theta = eps * sh / D;
  p.x = -eps * st / D;
  p.y = 0.5 * eps * eps * st * sh / (D * D);
  return p;
}

FieldGrid sample_strip_solution(double eps, double s_min, double s_max, int n_s,
                                int n_t) {
  FieldGrid g = FieldGrid::make(s_min, s_max, n_s, 0.0, 1.0, n_t);
  for (int i = 0; i < n_s; ++i)
    for (int j = 0; j < n_t; ++j) {
      const ChartPoint p = strip_solution(eps, g.s(i), g.t(j));
      g.at(i, j) = Vector4(p.tau, p.theta, p.x, p.y);
    }
  return g;
}

FieldGrid sample_halfdisk_polar(double eps, int n_rho, int n_phi) {
  FieldGrid g = FieldGrid::make(0.0, 1.0, n_rho, 0.0, kPi, n_phi);
  for (int i = 0; i < n_rho; ++i)
    for (int j = 0; j < n_phi; ++j) {
      const double rho = g.s(i), phi = g.t(j);
      const ChartPoint p =
          halfdisk_solution(eps, rho * std::cos(phi), rho * std::sin(phi));
      g.at(i, j) = Vector4(p.tau, p.theta, p.x, p.y);
    }
  return g;
}

StructureField flattened_strip_field(double eps, double theta_rel_lo) {
  StructureField f;
  f.q = [eps](double th) { return -2.0 / (eps + th); };
  f.q_prime = [eps](double th) {
    const double d = eps + th;
    return 2.0 / (d * d);
  };
  f.q_second = [eps](double th) {
    const double d = eps + th;
    return -4.0 / (d * d * d);
  };
  f.C = default_C(f.q, theta_rel_lo, 0.0);
  return f;
}

FieldGrid sample_flattened_strip(double eps, double s_min, double s_max,
                                 int n_s, int n_t) {
  FieldGrid g = FieldGrid::make(s_min, s_max, n_s, 0.0, 1.0, n_t);
  for (int i = 0; i < n_s; ++i)
    for (int j = 0; j < n_t; ++j) {
      const ChartPoint p = strip_solution(eps, g.s(i), g.t(j));
      g.at(i, j) =
          Vector4(p.tau, p.theta - eps, p.x + (2.0 / p.theta) * p.y, p.y);
    }
  return g;
}

ResidualReport cr_residual(const FieldGrid& grid,
                           const std::function<Matrix4(const Vector4&)>& J,
                           const SurfaceProfile* surface, double chart_bound) {
  ResidualReport rep;
  double sum2 = 0.0;
  for (int i = 0; i < grid.n_s; ++i) {
    for (int j = 0; j < grid.n_t; ++j) {
      const Vector4& v = grid.at(i, j);
      if (std::abs(v(2)) > chart_bound || std::abs(v(3)) > chart_bound)
        fail("ChartExceeded", "grid value outside the chart bound");
      const Vector4 r = fd_s(grid, i, j) + J(v) * fd_t(grid, i, j);
      rep.max_norm = std::max(rep.max_norm, r.cwiseAbs().maxCoeff());
      sum2 += r.squaredNorm();
    }
  }
  rep.l2_norm = std::sqrt(sum2 * grid.hs() * grid.ht());
  for (int i = 0; i < grid.n_s; ++i) {
    const Vector4& v0 = grid.at(i, 0);
    rep.bc_t0_max = std::max({rep.bc_t0_max, std::abs(v0(2)), std::abs(v0(3))});
    const Vector4& v1 = grid.at(i, grid.n_t - 1);
    rep.bc_t1_tau_max = std::max(rep.bc_t1_tau_max, std::abs(v1(0)));
    const double surf =
        surface ? surface->b(v1(1)) * v1(2) - surface->a(v1(1)) * v1(3)
                : v1(3) + 0.5 * v1(2) * v1(1);
    rep.bc_t1_surf_max = std::max(rep.bc_t1_surf_max, std::abs(surf));
  }
  return rep;
}

double energy_dlambda(const FieldGrid& grid) {
  // pullback of dx ^ dtheta; trapezoid weights on the grid rectangle
  double total = 0.0;
  for (int i = 0; i < grid.n_s; ++i) {
    const double wi = (i == 0 || i == grid.n_s - 1) ? 0.5 : 1.0;
    for (int j = 0; j < grid.n_t; ++j) {
      const double wj = (j == 0 || j == grid.n_t - 1) ? 0.5 : 1.0;
      const Vector4 ds = fd_s(grid, i, j), dt = fd_t(grid, i, j);
      total += wi * wj * (ds(2) * dt(1) - dt(2) * ds(1));
    }
  }
  return total * grid.hs() * grid.ht();
}

EnergyBudget energy_hofer(const FieldGrid& grid,
                          const std::vector<PhiProfile>& dictionary) {
  double tau_lo = 0.0, tau_hi = 0.0;
  for (const Vector4& v : grid.values) {
    tau_lo = std::min(tau_lo, v(0));
    tau_hi = std::max(tau_hi, v(0));
  }
  for (const PhiProfile& d : dictionary) {
    for (int k = 0; k <= 200; ++k) {
      const double tau = (tau_lo - 1.0) + (tau_hi - tau_lo + 2.0) * k / 200.0;
      if (d.dphi(tau) < -1e-12)
        fail("NonMonotoneProfile", "phi' < 0 in the sampled tau range");
    }
  }

  EnergyBudget out;
  out.dlambda_energy = energy_dlambda(grid);
  out.hofer_energy_lb = -std::numeric_limits<double>::infinity();
  for (const PhiProfile& d : dictionary) {
    // u* d(phi lambda) = phi'(tau) (d_s tau lambda(d_t u) - d_t tau lambda(d_s u))
    //                  + phi(tau) (d_s x d_t theta - d_t x d_s theta)
    double total = 0.0;
    for (int i = 0; i < grid.n_s; ++i) {
      const double wi = (i == 0 || i == grid.n_s - 1) ? 0.5 : 1.0;
      for (int j = 0; j < grid.n_t; ++j) {
        const double wj = (j == 0 || j == grid.n_t - 1) ? 0.5 : 1.0;
        const Vector4& v = grid.at(i, j);
        const Vector4 ds = fd_s(grid, i, j), dt = fd_t(grid, i, j);
        const double lam_ds = ds(3) + v(2) * ds(1);  // lambda = dy + x dtheta
        const double lam_dt = dt(3) + v(2) * dt(1);
        total += wi * wj *
                 (d.dphi(v(0)) * (ds(0) * lam_dt - dt(0) * lam_ds) +
                  d.phi(v(0)) * (ds(2) * dt(1) - dt(2) * ds(1)));
      }
    }
    out.hofer_energy_lb = std::max(out.hofer_energy_lb, total * grid.hs() * grid.ht());
  }
  if (dictionary.empty()) out.hofer_energy_lb = 0.0;
  return out;
}

SeparationReport family_separation_check(const std::vector<double>& eps_list,
                                         double s_min, double s_max, int n_s,
                                         int n_t) {
  if (eps_list.size() < 2) fail("BadArgument", "need at least two eps values");
  for (size_t i = 1; i < eps_list.size(); ++i) {
    if (eps_list[i] * eps_list[0] <= 0.0)
      fail("BadArgument", "eps values must be distinct and of the same sign");
  }
  std::vector<FieldGrid> clouds;
  clouds.reserve(eps_list.size());
  for (double eps : eps_list)
    clouds.push_back(sample_strip_solution(eps, s_min, s_max, n_s, n_t));

  SeparationReport rep;
  rep.min_pair_distance = std::numeric_limits<double>::infinity();
  for (size_t a = 0; a < clouds.size(); ++a)
    for (size_t b = a + 1; b < clouds.size(); ++b)
      for (const Vector4& va : clouds[a].values)
        for (const Vector4& vb : clouds[b].values)
          rep.min_pair_distance =
              std::min(rep.min_pair_distance, (va - vb).norm());

  rep.linear_bound_const = 0.0;
  for (size_t a = 0; a < clouds.size(); ++a) {
    double sup = 0.0;
    for (const Vector4& v : clouds[a].values)
      sup = std::max(sup, v.cwiseAbs().maxCoeff());
    rep.sup_norms.push_back(sup);
    rep.linear_bound_const =
        std::max(rep.linear_bound_const, sup / std::abs(eps_list[a]));
  }
  rep.sup_monotone = true;
  for (size_t a = 0; a + 1 < eps_list.size(); ++a)
    for (size_t b = a + 1; b < eps_list.size(); ++b)
      if ((std::abs(eps_list[a]) < std::abs(eps_list[b])) !=
          (rep.sup_norms[a] < rep.sup_norms[b]))
        rep.sup_monotone = false;
  return rep;
}

}  // namespace striplab
