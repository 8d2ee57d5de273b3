#include "striplab/decay.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "striplab/errors.hpp"

namespace striplab {

namespace {
constexpr double kHalfPi = std::numbers::pi / 2.0;

// slope of a least-squares line through (x, y)
double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const size_t n = x.size();
  double mx = 0.0, my = 0.0;
  for (size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double num = 0.0, den = 0.0;
  for (size_t i = 0; i < n; ++i) {
    num += (x[i] - mx) * (y[i] - my);
    den += (x[i] - mx) * (x[i] - mx);
  }
  return num / den;
}

// 4th-order d/dt of a path on a uniform grid
Path path_dt4(const Path& p, double h) {
  const int n = static_cast<int>(p.size());
  Path d(n);
  for (int j = 2; j < n - 2; ++j)
    d[j] = (p[j - 2] - 8.0 * p[j - 1] + 8.0 * p[j + 1] - p[j + 2]) / (12.0 * h);
  d[0] = (-25.0 * p[0] + 48.0 * p[1] - 36.0 * p[2] + 16.0 * p[3] - 3.0 * p[4]) /
         (12.0 * h);
  d[1] = (-3.0 * p[0] - 10.0 * p[1] + 18.0 * p[2] - 6.0 * p[3] + p[4]) / (12.0 * h);
  d[n - 1] = (25.0 * p[n - 1] - 48.0 * p[n - 2] + 36.0 * p[n - 3] -
              16.0 * p[n - 4] + 3.0 * p[n - 5]) /
             (12.0 * h);
  d[n - 2] =
      (3.0 * p[n - 1] + 10.0 * p[n - 2] - 18.0 * p[n - 3] + 6.0 * p[n - 4] -
       p[n - 5]) /
      (12.0 * h);
  return d;
}

}  // namespace

WeightedInner WeightedInner::from_row(const StructureField& f,
                                      const std::vector<Vector4>& row, double ht) {
  WeightedInner w;
  w.ht = ht;
  const int n = static_cast<int>(row.size());
  w.weights.resize(n);
  w.Om.reserve(n);
  w.M.reserve(n);
  w.G.reserve(n);
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (int j = 0; j < n; ++j) {
    w.weights[j] = ((j == 0 || j == n - 1) ? 0.5 : 1.0) * ht;
    const ChartPoint p{row[j](0), row[j](1), row[j](2), row[j](3)};
    const Matrix4 Om = eval_Omega_flat(p, f);
    const Matrix4 M = eval_Jhat(p, f);
    const Matrix4 OM = Om * M;
    const Matrix4 G = 0.5 * (OM + Matrix4(OM.transpose()));
    w.Om.push_back(Om);
    w.M.push_back(M);
    w.G.push_back(G);
    Eigen::SelfAdjointEigenSolver<Matrix4> es(G, Eigen::EigenvaluesOnly);
    lo = std::min(lo, es.eigenvalues().minCoeff());
    hi = std::max(hi, es.eigenvalues().maxCoeff());
  }
  if (!(lo > 0.0)) fail("SingularOmega", "weight matrix not positive definite");
  w.c0 = std::sqrt(lo);
  w.c1 = std::sqrt(hi);
  return w;
}

double inner_s(const WeightedInner& w, const Path& g1, const Path& g2) {
  if (g1.size() != w.G.size() || g2.size() != w.G.size())
    fail("GridMismatch", "path lengths differ from the row grid");
  double total = 0.0;
  for (size_t j = 0; j < g1.size(); ++j)
    total += w.weights[j] * g1[j].dot(w.G[j] * g2[j]);
  return total;
}

namespace {

struct RowData {
  std::vector<WeightedInner> inner;  // per s-row
  std::vector<double> norm2;         // ||v(s)||_s^2
};

RowData build_rows(const FieldGrid& grid, const StructureField& f) {
  RowData rd;
  rd.inner.reserve(grid.n_s);
  rd.norm2.reserve(grid.n_s);
  for (int i = 0; i < grid.n_s; ++i) {
    const Path row = grid.row(i);
    rd.inner.push_back(WeightedInner::from_row(f, row, grid.ht()));
    const double n2 = inner_s(rd.inner.back(), row, row);
    if (!(n2 > 1e-300)) fail("ZeroNorm", "vanishing row norm (constant solution?)");
    rd.norm2.push_back(n2);
  }
  return rd;
}

}  // namespace

AlphaTrace alpha_trace(const FieldGrid& grid, const StructureField& f) {
  if (grid.n_s < 5 || grid.n_t < 5) fail("GridTooShort", "alpha trace needs >= 5x5");
  const RowData rd = build_rows(grid, f);
  const double hs = grid.hs();

  AlphaTrace tr;
  for (int i = 1; i < grid.n_s - 1; ++i) {
    tr.s.push_back(grid.s(i));
    // centered log-derivative: exact for pure exponential decay
    tr.alpha_logderiv.push_back(
        (std::log(rd.norm2[i + 1]) - std::log(rd.norm2[i - 1])) / (4.0 * hs));

    const double nrm = std::sqrt(rd.norm2[i]);
    Path xi = grid.row(i);
    for (Vector4& v : xi) v /= nrm;
    const Path dxi = path_dt4(xi, grid.ht());

    Path Axi(xi.size()), G1xi(xi.size());
    const WeightedInner& w = rd.inner[i];
    for (size_t j = 0; j < xi.size(); ++j) {
      Axi[j] = -w.M[j] * dxi[j];
      const Matrix4 OMp = (rd.inner[i + 1].Om[j] * rd.inner[i + 1].M[j] -
                           rd.inner[i - 1].Om[j] * rd.inner[i - 1].M[j]) /
                          (2.0 * hs);
      G1xi[j] = -0.5 * w.M[j] * w.Om[j].lu().solve(OMp * xi[j]);
    }
    tr.alpha_formula.push_back(inner_s(w, xi, G1xi) + inner_s(w, xi, Axi));
  }

  const size_t m = tr.s.size();
  for (size_t i = 0; i < m; ++i)
    tr.discrepancy_max = std::max(
        tr.discrepancy_max, std::abs(tr.alpha_logderiv[i] - tr.alpha_formula[i]));

  double tail = 0.0;
  const size_t tail_start = (3 * m) / 4;
  for (size_t i = tail_start; i < m; ++i) tail += tr.alpha_logderiv[i];
  tr.lambda_fit = tail / (m - tail_start);

  const double lambda_round = std::round(tr.lambda_fit / kHalfPi) * kHalfPi;
  std::vector<double> xs, ys;
  for (size_t i = 0; i < m; ++i) {
    const double err = std::abs(tr.alpha_logderiv[i] - lambda_round);
    if (err > 1e-13) {
      xs.push_back(tr.s[i]);
      ys.push_back(std::log(err));
    }
  }
  tr.delta_fit = xs.size() >= 2 ? -fit_slope(xs, ys) : 0.0;
  return tr;
}

Path theta_operator(const WeightedInner& w, const Path& g) {
  if (g.size() != w.Om.size()) fail("GridMismatch", "path length mismatch");
  const int n = static_cast<int>(g.size());
  Path out(n);
  for (int j = 0; j < n; ++j) {
    Matrix4 dOm;
    if (j > 0 && j < n - 1)
      dOm = (w.Om[j + 1] - w.Om[j - 1]) / (2.0 * w.ht);
    else if (j == 0)
      dOm = (-1.5 * w.Om[0] + 2.0 * w.Om[1] - 0.5 * w.Om[2]) / w.ht;
    else
      dOm = (1.5 * w.Om[j] - 2.0 * w.Om[j - 1] + 0.5 * w.Om[j - 2]) / w.ht;
    Eigen::FullPivLU<Matrix4> lu(w.Om[j]);
    if (!lu.isInvertible()) fail("SingularOmega", "Omega not invertible on the row");
    out[j] = w.M[j] * lu.solve(dOm * g[j]);
  }
  return out;
}

std::pair<Path, Path> project_kernel(const WeightedInner& w, const Path& g,
                                     const Path& e) {
  const double e2 = inner_s(w, e, e);
  if (!(e2 > 0.0)) fail("ZeroNorm", "kernel path has vanishing norm");
  const double c = inner_s(w, g, e) / e2;
  Path P(g.size()), Q(g.size());
  for (size_t j = 0; j < g.size(); ++j) {
    P[j] = c * e[j];
    Q[j] = g[j] - P[j];
  }
  return {P, Q};
}

ConvexityReport convexity_check(const FieldGrid& grid, const StructureField& f,
                                double burn_in) {
  if (grid.n_s < 5) fail("GridTooShort", "need n_s >= 5 for second differences");
  const RowData rd = build_rows(grid, f);
  const Path e(grid.n_t, Vector4(0.0, 1.0, 0.0, 0.0));  // kernel direction

  std::vector<double> g(grid.n_s);
  double gmax = 0.0, vmax2 = 0.0;
  for (int i = 0; i < grid.n_s; ++i) {
    auto [P, Q] = project_kernel(rd.inner[i], grid.row(i), e);
    g[i] = 0.5 * inner_s(rd.inner[i], Q, Q);
    gmax = std::max(gmax, g[i]);
    vmax2 = std::max(vmax2, rd.norm2[i]);
  }

  ConvexityReport rep;
  // relative floor: the projection leaves rounding residue ~1e-16 ||v||
  if (gmax < 1e-24 * vmax2) {
    rep.degenerate = true;
    return rep;
  }

  const double hs = grid.hs();
  rep.min_ratio = std::numeric_limits<double>::infinity();
  for (int i = 1; i < grid.n_s - 1; ++i) {
    if (grid.s(i) < burn_in) continue;
    const double gpp = (g[i + 1] - 2.0 * g[i] + g[i - 1]) / (hs * hs);
    rep.min_ratio = std::min(rep.min_ratio, gpp / g[i]);
  }
  rep.delta_fit = std::sqrt(2.0 * std::max(rep.min_ratio, 0.0));

  // envelope bound from the first checked row, with the rate of the discrete
  // comparison solution cosh(c h) = 1 + min_ratio h^2 / 2; this undoes the
  // O(h^2) bias of the second difference for exponential data
  const double mu = std::max(rep.min_ratio, 0.0);
  const double rate = std::acosh(1.0 + 0.5 * mu * hs * hs) / hs;
  int i1 = 0;
  while (i1 < grid.n_s && grid.s(i1) < burn_in) ++i1;
  rep.envelope_ok = true;
  for (int i = i1; i < grid.n_s; ++i) {
    const double bound = g[i1] * std::exp(-rate * (grid.s(i) - grid.s(i1)));
    if (g[i] > bound * (1.0 + 1e-9)) rep.envelope_ok = false;
  }
  return rep;
}

DecayReport decay_fit(const FieldGrid& grid, const StructureField& f,
                      const EigenvectorFn& e) {
  const AlphaTrace tr = alpha_trace(grid, f);
  const double lambda_round = std::round(tr.lambda_fit / kHalfPi) * kHalfPi;
  if (std::abs(tr.lambda_fit - lambda_round) > 0.1)
    fail("NoSpectrumMatch", "fitted alpha limit is not near a multiple of pi/2");
  if (std::abs(lambda_round - e.lambda) > 0.1)
    fail("NoSpectrumMatch",
         "supplied eigenvector sits at a different spectral level");

  DecayReport rep;
  rep.lambda = tr.lambda_fit;
  rep.alpha_discrepancy_max = tr.discrepancy_max;
  rep.delta_alpha = tr.delta_fit;
  rep.q0_used = e.q0;

  // I(s) = int alpha from the first interior row, trapezoid
  const int m = static_cast<int>(tr.s.size());
  std::vector<double> I(m, 0.0);
  for (int i = 1; i < m; ++i)
    I[i] = I[i - 1] +
           0.5 * (tr.alpha_logderiv[i - 1] + tr.alpha_logderiv[i]) * grid.hs();

  // least-squares eigenvector scale at the largest s (unweighted L2 in t)
  auto row_at = [&](int k) { return grid.row(k + 1); };  // trace row -> grid row
  Path epath(grid.n_t);
  for (int j = 0; j < grid.n_t; ++j) epath[j] = e(grid.t(j));
  {
    const Path w = row_at(m - 1);
    double num = 0.0, den = 0.0;
    for (int j = 0; j < grid.n_t; ++j) {
      num += w[j].dot(epath[j]);
      den += epath[j].squaredNorm();
    }
    rep.kappa = (num / den) * std::exp(-I[m - 1]);
  }

  // remainder and rate fits over the last half of the range (burn-in excluded)
  const int lo = m / 2;
  std::vector<double> xs, yr, yv, ya;
  std::array<std::vector<double>, 5> yd;  // ds, dt, dss, dst, dtt
  double sup_r_max = 0.0;
  for (int i = lo; i < m; ++i) {
    const Path v = row_at(i);
    double sup_r = 0.0, sup_v = 0.0;
    const double scale = std::exp(-I[i]);
    for (int j = 0; j < grid.n_t; ++j) {
      sup_r = std::max(sup_r,
                       (v[j] * scale - rep.kappa * epath[j]).cwiseAbs().maxCoeff());
      sup_v = std::max(sup_v, v[j].cwiseAbs().maxCoeff());
    }
    sup_r_max = std::max(sup_r_max, sup_r);
    xs.push_back(tr.s[i]);
    yr.push_back(std::log(std::max(sup_r, 1e-300)));
    yv.push_back(std::log(std::max(sup_v, 1e-300)));
    const double err = std::abs(tr.alpha_logderiv[i] - lambda_round);
    ya.push_back(std::log(std::max(err, 1e-300)));

    // FD derivative sup-norms on the grid (interior in s by construction)
    const int gi = i + 1;
    double sup[5] = {0.0, 0.0, 0.0, 0.0, 0.0};
    for (int j = 1; j < grid.n_t - 1; ++j) {
      const Vector4 ds = fd_s(grid, gi, j);
      const Vector4 dt = fd_t(grid, gi, j);
      const Vector4 dss = (grid.at(gi + 1, j) - 2.0 * grid.at(gi, j) +
                           grid.at(gi - 1, j)) /
                          (grid.hs() * grid.hs());
      const Vector4 dtt = (grid.at(gi, j + 1) - 2.0 * grid.at(gi, j) +
                           grid.at(gi, j - 1)) /
                          (grid.ht() * grid.ht());
      const Vector4 dst = (grid.at(gi + 1, j + 1) - grid.at(gi + 1, j - 1) -
                           grid.at(gi - 1, j + 1) + grid.at(gi - 1, j - 1)) /
                          (4.0 * grid.hs() * grid.ht());
      sup[0] = std::max(sup[0], ds.cwiseAbs().maxCoeff());
      sup[1] = std::max(sup[1], dt.cwiseAbs().maxCoeff());
      sup[2] = std::max(sup[2], dss.cwiseAbs().maxCoeff());
      sup[3] = std::max(sup[3], dst.cwiseAbs().maxCoeff());
      sup[4] = std::max(sup[4], dtt.cwiseAbs().maxCoeff());
    }
    for (int k = 0; k < 5; ++k) yd[k].push_back(std::log(std::max(sup[k], 1e-300)));
  }
  rep.rho = -fit_slope(xs, yv);
  if (sup_r_max < 1e-14) {
    rep.remainder_below_floor = true;
    rep.delta_remainder = 0.0;
  } else {
    rep.delta_remainder = -fit_slope(xs, yr);
  }
  rep.delta_alpha = -fit_slope(xs, ya);
  for (int k = 0; k < 5; ++k) rep.derivative_rates.push_back(-fit_slope(xs, yd[k]));
  return rep;
}

double eigen_direction_error(const FieldGrid& grid, const EigenvectorFn& e,
                             double s) {
  int best = 0;
  for (int i = 1; i < grid.n_s; ++i)
    if (std::abs(grid.s(i) - s) < std::abs(grid.s(best) - s)) best = i;
  const Path v = grid.row(best);
  Path ep(grid.n_t);
  for (int j = 0; j < grid.n_t; ++j) ep[j] = e(grid.t(j));
  double nv = 0.0, ne = 0.0, dot = 0.0;
  for (int j = 0; j < grid.n_t; ++j) {
    nv += v[j].squaredNorm();
    ne += ep[j].squaredNorm();
    dot += v[j].dot(ep[j]);
  }
  nv = std::sqrt(nv);
  ne = std::sqrt(ne);
  const double sign = dot >= 0.0 ? 1.0 : -1.0;
  double err = 0.0;
  for (int j = 0; j < grid.n_t; ++j)
    err = std::max(err, (v[j] / nv - sign * ep[j] / ne).cwiseAbs().maxCoeff());
  return err;
}

}  // namespace striplab
