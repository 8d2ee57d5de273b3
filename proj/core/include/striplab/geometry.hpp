#pragma once

#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace striplab {

// Coordinates (tau, theta, x, y) of the symplectisation chart around the knot.
struct ChartPoint {
  double tau = 0.0;
  double theta = 0.0;
  double x = 0.0;
  double y = 0.0;
};

// Periodic profile pair (a(theta), b(theta)), period 1, describing how the
// spanning surface wraps the knot.  Either closed-form with derivatives, or a
// uniform sample table evaluated through its trigonometric interpolant (so
// derivatives are exact for the interpolant).
class SurfaceProfile {
public:
  using Fn = std::function<double(double)>;

  static SurfaceProfile from_functions(Fn a, Fn da, Fn b, Fn db);
  // Samples at theta_j = j/N, j = 0..N-1.
  static SurfaceProfile from_samples(const std::vector<double>& a_samples,
                                     const std::vector<double>& b_samples);

  double a(double theta) const { return a_(theta); }
  double da(double theta) const { return da_(theta); }
  double b(double theta) const { return b_(theta); }
  double db(double theta) const { return db_(theta); }

  // q = a/b and its derivative; throws SingularAngle near zeros of b.
  double q(double theta, double tol = 1e-9) const;
  double dq(double theta, double tol = 1e-9) const;

private:
  SurfaceProfile() = default;
  Fn a_, da_, b_, db_;
};

enum class SingKind { elliptic, hyperbolic };
enum class SingSign { positive, negative };

struct SingularityInfo {
  double theta0;
  SingSign sign;
  SingKind kind;
  double c;  // b'(theta0) / a(theta0)
};

// Classify a zero of b.  Errors: NotASingularPoint, Degenerate.
SingularityInfo classify_singularity(const SurfaceProfile& profile, double theta0,
                                     double zero_tol = 1e-9);

// [[-c, -b], [0, 1+c]]: linearized foliation field at the singular point.
Eigen::Matrix2d linearization_matrix(double b_coeff, double c);

// Winding number of theta -> (a, b) about the origin.  residual_out (optional)
// receives |accumulated/2pi - nearest integer|.  Errors: LoopThroughOrigin.
int tb_degree(const SurfaceProfile& profile, int n_samples,
              double* residual_out = nullptr, double tol = 1e-9);

// Sum of sign(-delta * a'(theta)) over zeros of a with sign b = delta_sign.
// delta_sign is +1 or -1.  Errors: TangentZero.
int tb_signed_count(const SurfaceProfile& profile, int delta_sign,
                    int n_samples = 4096, double tol = 1e-9);

// Profile with b(theta) = -a(theta)(theta - theta_k)/2 for |theta-theta_k| <=
// window, tapered outside so that b stays periodic; the companion zero of the
// taper at theta_k + 1/2 is a nondegenerate hyperbolic point.
SurfaceProfile elliptic_normal_profile(double theta_k, SurfaceProfile::Fn a,
                                       SurfaceProfile::Fn da, double window);

// (tau, theta, x, y) -> (tau, theta, x - q(theta) y, y) and its inverse.
// Errors: SingularAngle.
ChartPoint flatten_point(const ChartPoint& p, const SurfaceProfile& profile,
                         double tol = 1e-9);
ChartPoint unflatten_point(const ChartPoint& p, const SurfaceProfile& profile,
                           double tol = 1e-9);

// CSV with header "theta,a,b", uniform grid over [0,1), >= 16 rows.
SurfaceProfile load_profile_csv(const std::string& path);

}  // namespace striplab
