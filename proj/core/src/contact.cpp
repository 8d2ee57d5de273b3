#include "striplab/contact.hpp"

#include <cmath>

#include "striplab/errors.hpp"

namespace striplab {

StructureField StructureField::constant(double q0, double C) {
  StructureField f;
  f.q = [q0](double) { return q0; };
  f.q_prime = [](double) { return 0.0; };
  f.q_second = [](double) { return 0.0; };
  f.C = C;
  return f;
}

StructureField StructureField::from_profile(const SurfaceProfile& profile,
                                            double theta_lo, double theta_hi,
                                            double C) {
  StructureField f;
  f.q = [profile](double th) { return profile.q(th); };
  f.q_prime = [profile](double th) { return profile.dq(th); };
  f.C = C > 0.0 ? C : default_C(f.q, theta_lo, theta_hi);
  return f;
}

double StructureField::qss(double theta) const {
  if (q_second) return q_second(theta);
  const double h = 1e-5;
  return (q_prime(theta + h) - q_prime(theta - h)) / (2.0 * h);
}

double default_C(const std::function<double(double)>& q, double lo, double hi,
                 int n_samples) {
  double sup2 = 0.0;
  for (int i = 0; i < n_samples; ++i) {
    const double th = lo + (hi - lo) * i / (n_samples - 1);
    const double v = q(th);
    sup2 = std::max(sup2, v * v);
  }
  return 1.0 + 2.0 * sup2;
}

Vector4 eval_lambda_hat(const ChartPoint& p, const StructureField& f) {
  return Vector4(0.0, p.x + f.q(p.theta) * p.y, 0.0, 1.0);
}

Vector4 eval_reeb(const ChartPoint& p, const StructureField& f) {
  return Vector4(0.0, 0.0, -f.q(p.theta), 1.0);
}

Matrix4 eval_Jhat(const ChartPoint& p, const StructureField& f) {
  const double q = f.q(p.theta);
  const double qp = f.q_prime(p.theta);
  const double y = p.y;
  const double X = p.x + q * y;     // unflattened x
  const double P = X * q - y * qp;
  Matrix4 J;
  J << 0.0, -X, 0.0, -1.0,
       0.0, y * qp, 1.0, q,
       -q, -1.0 + y * qp * P, P, q * P,
       1.0, -X * y * qp, -X, -X * q;
  return J;
}

Matrix4 eval_Jhat_derivative(const ChartPoint& p, const StructureField& f,
                             const Vector4& dv) {
  const double q = f.q(p.theta);
  const double qp = f.q_prime(p.theta);
  const double qs = f.qss(p.theta);
  const double y = p.y;
  const double X = p.x + q * y;
  const double P = X * q - y * qp;

  const double dth = dv(1), dx = dv(2), dy = dv(3);
  const double dq = qp * dth;
  const double dqp = qs * dth;
  const double dX = qp * y * dth + dx + q * dy;
  const double dP = q * dX + X * dq - y * dqp - qp * dy;

  Matrix4 dJ;
  dJ << 0.0, -dX, 0.0, 0.0,
        0.0, dy * qp + y * dqp, 0.0, dq,
        -dq, dy * qp * P + y * dqp * P + y * qp * dP, dP, dq * P + q * dP,
        0.0, -(dX * y * qp + X * dy * qp + X * y * dqp), -dX, -(dX * q + X * dq);
  return dJ;
}

namespace {
Matrix4 skew_from_upper(double o12, double o13, double o14, double o23, double o24,
                        double o34) {
  Matrix4 O = Matrix4::Zero();
  O(0, 1) = o12;
  O(0, 2) = o13;
  O(0, 3) = o14;
  O(1, 2) = o23;
  O(1, 3) = o24;
  O(2, 3) = o34;
  return O - Matrix4(O.transpose());
}
}  // namespace

Matrix4 eval_Omega(const ChartPoint& p, const StructureField& f) {
  const double q = f.q(p.theta);
  return skew_from_upper(-p.x * f.C, -q, f.C, -1.0, q, 0.0);
}

Matrix4 eval_Omega_flat(const ChartPoint& p, const StructureField& f) {
  const double q = f.q(p.theta);
  const double qp = f.q_prime(p.theta);
  const double X = p.x + q * p.y;  // unflattened x
  return skew_from_upper(-(f.C * X + q * qp * p.y), -q, f.C - q * q, -1.0, 0.0, 0.0);
}

Matrix4 eval_J_simple(const ChartPoint& p) {
  Matrix4 J;
  J << 0.0, -p.x, 0.0, -1.0,
       0.0, 0.0, 1.0, 0.0,
       0.0, -1.0, 0.0, 0.0,
       1.0, 0.0, -p.x, 0.0;
  return J;
}

CompatReport compatibility_report(const StructureField& f,
                                  const std::vector<ChartPoint>& points) {
  CompatReport r;
  r.min_eig = std::numeric_limits<double>::infinity();
  const Matrix4 id = Matrix4::Identity();
  for (const ChartPoint& p : points) {
    const Matrix4 Js = eval_J_simple(p);
    const Matrix4 Jh = eval_Jhat(p, f);
    const Matrix4 Om = eval_Omega(p, f);

    r.max_jsq = std::max(r.max_jsq, (Js * Js + id).cwiseAbs().maxCoeff());
    r.max_jsq = std::max(r.max_jsq, (Jh * Jh + id).cwiseAbs().maxCoeff());

    const Matrix4 OJ = Om * Js;
    r.max_asym =
        std::max(r.max_asym, (OJ - Matrix4(OJ.transpose())).cwiseAbs().maxCoeff());
    r.max_conj = std::max(
        r.max_conj, (Js.transpose() * Om * Js - Om).cwiseAbs().maxCoeff());

    Eigen::SelfAdjointEigenSolver<Matrix4> es(0.5 * (OJ + Matrix4(OJ.transpose())));
    const double lam0 = es.eigenvalues().minCoeff();
    if (lam0 < r.min_eig) {
      r.min_eig = lam0;
      r.witness = p;
    }

    // omega vanishes on T(R x L): span{e1, e2} at the knot locus x = y = 0.
    ChartPoint knot = p;
    knot.x = knot.y = 0.0;
    r.max_lagrangian =
        std::max(r.max_lagrangian, std::abs(eval_Omega(knot, f)(0, 1)));
    // ... and on the surface tangent plane at (0, theta, q y, y).
    const double q = f.q(p.theta);
    const double qp = f.q_prime(p.theta);
    ChartPoint surf = p;
    surf.tau = 0.0;
    surf.x = q * p.y;
    const Matrix4 Os = eval_Omega(surf, f);
    const Vector4 u(0.0, 0.0, q, 1.0);
    const Vector4 w(0.0, 1.0, qp * p.y, 0.0);
    r.max_lagrangian = std::max(r.max_lagrangian, std::abs(u.dot(Os * w)));
  }
  if (!(r.min_eig > 0.0)) {
    fail("PositivityFailure",
         "Omega*J not positive definite at (tau,theta,x,y)=(" +
             std::to_string(r.witness.tau) + "," + std::to_string(r.witness.theta) +
             "," + std::to_string(r.witness.x) + "," + std::to_string(r.witness.y) +
             ")");
  }
  return r;
}

}  // namespace striplab
