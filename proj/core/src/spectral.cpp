#include "striplab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <lapacke.h>
#include <unsupported/Eigen/MatrixFunctions>

#include "striplab/errors.hpp"

namespace striplab {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi = std::numbers::pi / 2.0;
}  // namespace

Matrix4 build_Minf(double q0) {
  Matrix4 m;
  m << 0.0, 0.0, 0.0, -1.0,
       0.0, 0.0, 1.0, q0,
       -q0, -1.0, 0.0, 0.0,
       1.0, 0.0, 0.0, 0.0;
  return m;
}

AsymptoticOperator make_asymptotic_operator(double q0) {
  return AsymptoticOperator{q0, build_Minf(q0)};
}

namespace {

// gamma(t) = exp(lambda t M) gamma(0); an eigenvalue needs some gamma(0) in L0
// with the (tau, x) components of gamma(1) vanishing (the L1 constraints).
double shooting_det(const Matrix4& M, double lambda) {
  const Matrix4 B = Matrix4(lambda * M).exp();
  return B(0, 0) * B(2, 1) - B(2, 0) * B(0, 1);
}

std::vector<std::array<double, 2>> gaps_as_pairs(
    const std::vector<GapInterval>& gaps) {
  std::vector<std::array<double, 2>> out;
  out.reserve(gaps.size());
  for (const GapInterval& g : gaps) out.push_back({g.r - g.d, g.r + g.d});
  return out;
}

}  // namespace

SpectrumReport spectrum_shooting(const AsymptoticOperator& op, double lo, double hi,
                                 double bracket_step) {
  if (!(lo < hi) || bracket_step <= 0.0) fail("BadArgument", "bad search range");
  SpectrumReport rep;
  rep.method = "shooting";
  rep.q0 = op.q0;

  const int n_cells = static_cast<int>(std::ceil((hi - lo) / bracket_step));
  double prev_x = lo;
  double prev_f = shooting_det(op.M_inf, lo);
  for (int k = 1; k <= n_cells; ++k) {
    const double x = std::min(lo + k * bracket_step, hi);
    const double fx = shooting_det(op.M_inf, x);
    if (prev_f == 0.0) {
      rep.eigenvalues.push_back(prev_x);
    } else if (prev_f * fx < 0.0) {
      double a = prev_x, b = x, fa = prev_f;
      while (b - a > 1e-13) {
        const double m = 0.5 * (a + b);
        const double fm = shooting_det(op.M_inf, m);
        if (fm == 0.0) {
          a = b = m;
          break;
        }
        if (fa * fm < 0.0) {
          b = m;
        } else {
          a = m;
          fa = fm;
        }
      }
      rep.eigenvalues.push_back(0.5 * (a + b));
    }
    prev_x = x;
    prev_f = fx;
  }
  if (prev_f == 0.0) rep.eigenvalues.push_back(prev_x);
  std::sort(rep.eigenvalues.begin(), rep.eigenvalues.end());
  rep.multiplicities.assign(rep.eigenvalues.size(), 1);

  // every multiple of pi/2 in range must have been found
  for (long k = std::lround(std::ceil(lo / kHalfPi)); k * kHalfPi <= hi; ++k) {
    const double target = k * kHalfPi;
    bool found = false;
    for (double ev : rep.eigenvalues)
      if (std::abs(ev - target) < 0.1) found = true;
    if (!found) fail("RangeTooCoarse", "bracketing missed a spectrum candidate");
  }
  rep.gaps = gaps_as_pairs(spectral_gaps({rep.eigenvalues}, kHalfPi, lo, hi));
  return rep;
}

Eigen::MatrixXd fd_operator_matrix(const AsymptoticOperator& op, int n) {
  if (n < 16) fail("BadArgument", "FD grid too small");
  const double h = 1.0 / (n - 1);

  // free coordinates: node 0 drops x,y (L0); node n-1 drops tau,x (L1)
  std::vector<int> index(static_cast<size_t>(4) * n, -1);
  auto is_free = [n](int node, int comp) {
    if (node == 0) return comp == 0 || comp == 1;
    if (node == n - 1) return comp == 1 || comp == 3;
    return true;
  };
  int dim = 0;
  for (int node = 0; node < n; ++node)
    for (int comp = 0; comp < 4; ++comp)
      if (is_free(node, comp)) index[static_cast<size_t>(4) * node + comp] = dim++;

  const Matrix4 negM = -op.M_inf;
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(dim, dim);
  auto add = [&](int node_r, int comp_r, int node_c, int comp_c, double w) {
    const int col = index[static_cast<size_t>(4) * node_c + comp_c];
    if (col < 0) return;  // constrained entry is identically zero
    const int row = index[static_cast<size_t>(4) * node_r + comp_r];
    A(row, col) += w;
  };
  for (int node = 0; node < n; ++node) {
    // second-order d/dt stencil at this node
    std::array<std::pair<int, double>, 3> st;
    if (node == 0)
      st = {{{0, -1.5 / h}, {1, 2.0 / h}, {2, -0.5 / h}}};
    else if (node == n - 1)
      st = {{{n - 1, 1.5 / h}, {n - 2, -2.0 / h}, {n - 3, 0.5 / h}}};
    else
      st = {{{node - 1, -0.5 / h}, {node, 0.0}, {node + 1, 0.5 / h}}};
    for (int comp = 0; comp < 4; ++comp) {
      if (!is_free(node, comp)) continue;
      for (int m = 0; m < 4; ++m)
        for (const auto& [j, w] : st) add(node, comp, j, m, negM(comp, m) * w);
    }
  }
  return A;
}

SpectrumReport spectrum_fd(const AsymptoticOperator& op, int n, double lo,
                           double hi) {
  SpectrumReport rep;
  rep.method = "finite-difference";
  rep.q0 = op.q0;
  rep.n = n;

  Eigen::MatrixXd A = fd_operator_matrix(op, n);
  const int dim = static_cast<int>(A.rows());
  std::vector<double> wr(dim), wi(dim);
  // LAPACK wants column-major; A is self-owned scratch here
  Eigen::MatrixXd Acol = A;
  const int info =
      LAPACKE_dgeev(LAPACK_COL_MAJOR, 'N', 'N', dim, Acol.data(), dim, wr.data(),
                    wi.data(), nullptr, 1, nullptr, 1);
  if (info != 0) fail("EigensolverFailure", "dgeev returned nonzero info");

  // near-real eigenvalues in range; discretization artifacts have large |Im|
  const double imag_tol = 1e-6;
  std::vector<double> evs;
  for (int k = 0; k < dim; ++k)
    if (std::abs(wi[k]) <= imag_tol && wr[k] >= lo && wr[k] <= hi)
      evs.push_back(wr[k]);
  std::sort(evs.begin(), evs.end());
  for (double ev : evs) {
    if (!rep.eigenvalues.empty() && ev - rep.eigenvalues.back() < 1e-8) {
      ++rep.multiplicities.back();
    } else {
      rep.eigenvalues.push_back(ev);
      rep.multiplicities.push_back(1);
    }
  }
  rep.gaps = gaps_as_pairs(spectral_gaps({rep.eigenvalues}, kHalfPi, lo, hi));
  return rep;
}

Vector4 EigenvectorFn::operator()(double t) const {
  const double c = std::cos(lambda * t), s = std::sin(lambda * t);
  if (parity == Parity::even) return kappa * Vector4(0.0, c, -s, 0.0);
  return -kappa * Vector4(c, -q0 * c, 0.0, s);
}

Vector4 EigenvectorFn::deriv(double t) const {
  const double c = std::cos(lambda * t), s = std::sin(lambda * t);
  if (parity == Parity::even)
    return kappa * lambda * Vector4(0.0, -s, -c, 0.0);
  return -kappa * lambda * Vector4(-s, q0 * s, 0.0, c);
}

EigenvectorFn analytic_eigenvector(double lambda, double q0, double kappa) {
  if (kappa == 0.0) fail("BadArgument", "kappa must be nonzero");
  const long k = std::lround(lambda / kHalfPi);
  if (std::abs(lambda - k * kHalfPi) > 1e-9)
    fail("NotInSpectrum", "lambda is not a multiple of pi/2");
  EigenvectorFn e;
  e.lambda = lambda;
  e.kappa = kappa;
  e.q0 = q0;
  e.parity = (k % 2 == 0) ? EigenvectorFn::Parity::even : EigenvectorFn::Parity::odd;
  return e;
}

double eigen_ode_residual(const EigenvectorFn& e, const AsymptoticOperator& op,
                          int n) {
  double r = 0.0;
  for (int k = 0; k < n; ++k) {
    const double t = static_cast<double>(k) / (n - 1);
    const Vector4 res = e.deriv(t) - e.lambda * (op.M_inf * e(t));
    r = std::max(r, res.cwiseAbs().maxCoeff());
  }
  const Vector4 e0 = e(0.0), e1 = e(1.0);
  r = std::max({r, std::abs(e0(2)), std::abs(e0(3)), std::abs(e1(0)),
                std::abs(e1(2))});
  return r;
}

std::pair<double, double> kato_distance(const Eigen::MatrixXd& T_mat,
                                        const Eigen::MatrixXd& A0,
                                        double sym_tol) {
  auto check_sym = [sym_tol](const Eigen::MatrixXd& M, const char* name) {
    const double scale = std::max(1.0, M.cwiseAbs().maxCoeff());
    if ((M - Eigen::MatrixXd(M.transpose())).cwiseAbs().maxCoeff() >
        sym_tol * scale)
      fail("NotSymmetric", std::string(name) + " is not symmetric");
  };
  check_sym(T_mat, "T");
  check_sym(A0, "A0");
  if (T_mat.rows() != A0.rows()) fail("BadArgument", "dimension mismatch");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es1(T_mat,
                                                     Eigen::EigenvaluesOnly);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es2(T_mat + A0,
                                                     Eigen::EigenvaluesOnly);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> esA(A0, Eigen::EigenvaluesOnly);
  const auto& s1 = es1.eigenvalues();
  const auto& s2 = es2.eigenvalues();
  double hausdorff = 0.0;
  for (int i = 0; i < s1.size(); ++i) {
    double d1 = std::numeric_limits<double>::infinity();
    double d2 = std::numeric_limits<double>::infinity();
    for (int j = 0; j < s2.size(); ++j) {
      d1 = std::min(d1, std::abs(s1(i) - s2(j)));
      d2 = std::min(d2, std::abs(s2(i) - s1(j)));
    }
    hausdorff = std::max({hausdorff, d1, d2});
  }
  const double bound = esA.eigenvalues().cwiseAbs().maxCoeff();
  return {hausdorff, bound};
}

std::vector<GapInterval> spectral_gaps(
    const std::vector<std::vector<double>>& spectra, double L, double lo,
    double hi, double min_half_width) {
  if (L <= 0.0) fail("BadArgument", "L must be positive");
  std::vector<GapInterval> out;
  for (long n = std::lround(std::ceil(lo / L - 1e-12));
       (n + 1) * L <= hi + 1e-12; ++n) {
    const double a = n * L, b = (n + 1) * L;
    std::vector<double> pts;
    for (const auto& spec : spectra)
      for (double ev : spec)
        if (ev >= a && ev <= b) pts.push_back(ev);
    std::sort(pts.begin(), pts.end());
    double best_lo = a, best_hi = a;
    double cursor = a;
    for (double p : pts) {
      if (p - cursor > best_hi - best_lo) {
        best_lo = cursor;
        best_hi = p;
      }
      cursor = std::max(cursor, p);
    }
    if (b - cursor > best_hi - best_lo) {
      best_lo = cursor;
      best_hi = b;
    }
    const double d = 0.5 * (best_hi - best_lo);
    if (d <= min_half_width)
      fail("NoGap", "spectral interval fully covered; perturbation too large");
    out.push_back({0.5 * (best_lo + best_hi), d});
  }
  return out;
}

Trivialization build_trivialization(const StructureField& f, const FieldGrid& grid) {
  Trivialization out;
  out.T.reserve(grid.values.size());

  const Matrix4 J0 = (Matrix4() << 0, -1, 0, 0,
                                   1, 0, 0, 0,
                                   0, 0, 0, -1,
                                   0, 0, 1, 0).finished();

  auto frame_at = [&](const Vector4& v) -> Matrix4 {
    const ChartPoint p{v(0), v(1), v(2), v(3)};
    const Matrix4 M = eval_Jhat(p, f);
    const Matrix4 Om = eval_Omega_flat(p, f);
    const Matrix4 OM = Om * M;
    const Matrix4 G = 0.5 * (OM + Matrix4(OM.transpose()));

    const double q = f.q(p.theta);
    const Vector4 sigma(0.0, 1.0, 0.0, -(p.x + q * p.y));
    const double s2 = sigma.dot(G * sigma);
    if (!(s2 > 1e-12)) fail("FrameDegenerate", "surface generator degenerates");
    const Vector4 f2 = sigma / std::sqrt(s2);

    const Vector4 u(1.0, 0.0, 0.0, 0.0);
    const double cre = f2.dot(G * u);
    const double cim = f2.dot(Om * u);
    const Vector4 up = u - cre * f2 - cim * (M * f2);
    const double u2 = up.dot(G * up);
    if (!(u2 > 1e-12)) fail("FrameDegenerate", "frame loses rank");
    const Vector4 f1 = up / std::sqrt(u2);

    Matrix4 F;
    F.col(0) = f1;
    F.col(1) = M * f1;
    F.col(2) = f2;
    F.col(3) = M * f2;
    Eigen::FullPivLU<Matrix4> lu(F);
    if (!lu.isInvertible()) fail("FrameDegenerate", "frame not invertible");
    const Matrix4 T = lu.inverse();

    out.max_metric_defect = std::max(
        out.max_metric_defect, (Matrix4(T.transpose() * T) - OM).cwiseAbs().maxCoeff());
    out.max_complex_defect =
        std::max(out.max_complex_defect, (T * M - J0 * T).cwiseAbs().maxCoeff());
    out.max_implied_defect = std::max(
        out.max_implied_defect,
        (Matrix4(T.transpose() * J0 * T) + Om).cwiseAbs().maxCoeff());
    return T;
  };

  for (const Vector4& v : grid.values) out.T.push_back(frame_at(v));
  out.T_inf = frame_at(Vector4::Zero());
  return out;
}

}  // namespace striplab
