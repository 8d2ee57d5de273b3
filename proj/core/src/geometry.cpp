#include "striplab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "striplab/errors.hpp"

namespace striplab {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_unit(double theta) {
  double w = std::fmod(theta, 1.0);
  return w < 0.0 ? w + 1.0 : w;
}
}  // namespace

SurfaceProfile SurfaceProfile::from_functions(Fn a, Fn da, Fn b, Fn db) {
  SurfaceProfile p;
  p.a_ = std::move(a);
  p.da_ = std::move(da);
  p.b_ = std::move(b);
  p.db_ = std::move(db);
  return p;
}

SurfaceProfile SurfaceProfile::from_samples(const std::vector<double>& a_samples,
                                            const std::vector<double>& b_samples) {
  if (a_samples.size() != b_samples.size() || a_samples.size() < 4)
    fail("BadProfileTable", "need matching sample vectors with >= 4 rows");
  const int n = static_cast<int>(a_samples.size());

  // Real trigonometric interpolant of n uniform samples: mean + K harmonics
  // (+ a pure-cosine Nyquist term when n is even).
  struct Coeffs {
    double mean = 0.0;
    std::vector<double> cosc, sinc;
    double nyquist = 0.0;
    int n = 0;
  };
  auto analyze = [n](const std::vector<double>& f) {
    Coeffs c;
    c.n = n;
    const int kmax = (n - 1) / 2;
    c.cosc.assign(kmax + 1, 0.0);
    c.sinc.assign(kmax + 1, 0.0);
    for (int j = 0; j < n; ++j) c.mean += f[j];
    c.mean /= n;
    for (int k = 1; k <= kmax; ++k) {
      double ck = 0.0, sk = 0.0;
      for (int j = 0; j < n; ++j) {
        const double ang = kTwoPi * k * j / n;
        ck += f[j] * std::cos(ang);
        sk += f[j] * std::sin(ang);
      }
      c.cosc[k] = 2.0 * ck / n;
      c.sinc[k] = 2.0 * sk / n;
    }
    if (n % 2 == 0) {
      double cn = 0.0;
      for (int j = 0; j < n; ++j) cn += f[j] * ((j % 2 == 0) ? 1.0 : -1.0);
      c.nyquist = cn / n;
    }
    return c;
  };

  auto value = [](const Coeffs& c, double theta) {
    double v = c.mean;
    const int kmax = (c.n - 1) / 2;
    for (int k = 1; k <= kmax; ++k) {
      const double ang = kTwoPi * k * theta;
      v += c.cosc[k] * std::cos(ang) + c.sinc[k] * std::sin(ang);
    }
    if (c.n % 2 == 0) v += c.nyquist * std::cos(kTwoPi * (c.n / 2) * theta);
    return v;
  };
  auto deriv = [](const Coeffs& c, double theta) {
    double v = 0.0;
    const int kmax = (c.n - 1) / 2;
    for (int k = 1; k <= kmax; ++k) {
      const double w = kTwoPi * k;
      const double ang = w * theta;
      v += w * (-c.cosc[k] * std::sin(ang) + c.sinc[k] * std::cos(ang));
    }
    if (c.n % 2 == 0) {
      const double w = kTwoPi * (c.n / 2);
      v += -c.nyquist * w * std::sin(w * theta);
    }
    return v;
  };

  auto ca = analyze(a_samples);
  auto cb = analyze(b_samples);
  SurfaceProfile p;
  p.a_ = [ca, value](double th) { return value(ca, th); };
  p.da_ = [ca, deriv](double th) { return deriv(ca, th); };
  p.b_ = [cb, value](double th) { return value(cb, th); };
  p.db_ = [cb, deriv](double th) { return deriv(cb, th); };
  return p;
}

double SurfaceProfile::q(double theta, double tol) const {
  const double bv = b_(theta);
  if (std::abs(bv) <= tol) fail("SingularAngle", "b vanishes at theta");
  return a_(theta) / bv;
}

double SurfaceProfile::dq(double theta, double tol) const {
  const double bv = b_(theta);
  if (std::abs(bv) <= tol) fail("SingularAngle", "b vanishes at theta");
  return (da_(theta) * bv - a_(theta) * db_(theta)) / (bv * bv);
}

SingularityInfo classify_singularity(const SurfaceProfile& profile, double theta0,
                                     double zero_tol) {
  const double bv = profile.b(theta0);
  if (std::abs(bv) > zero_tol)
    fail("NotASingularPoint", "b(theta0) outside zero tolerance");
  const double av = profile.a(theta0);
  if (std::abs(av) <= zero_tol)
    fail("Degenerate", "a(theta0) vanishes together with b");
  const double c = profile.db(theta0) / av;
  if (std::abs(c) <= zero_tol || std::abs(c + 1.0) <= zero_tol)
    fail("Degenerate", "c = b'/a lies in {-1, 0}");
  SingularityInfo info;
  info.theta0 = theta0;
  info.c = c;
  info.sign = av < 0.0 ? SingSign::positive : SingSign::negative;
  info.kind = (c > -1.0 && c < 0.0) ? SingKind::elliptic : SingKind::hyperbolic;
  return info;
}

Eigen::Matrix2d linearization_matrix(double b_coeff, double c) {
  Eigen::Matrix2d m;
  m << -c, -b_coeff, 0.0, 1.0 + c;
  return m;
}

namespace {

// Principal-branch angle increment from (a0,b0) to (a1,b1), bisecting the
// parameter interval whenever the step exceeds pi/2.
double angle_step(const SurfaceProfile& p, double t0, double t1, double tol,
                  double* min_radius, int depth = 0) {
  const double a0 = p.a(t0), b0 = p.b(t0);
  const double a1 = p.a(t1), b1 = p.b(t1);
  const double r0 = std::hypot(a0, b0), r1 = std::hypot(a1, b1);
  *min_radius = std::min(*min_radius, std::min(r0, r1));
  if (r0 <= tol || r1 <= tol) fail("LoopThroughOrigin", "profile loop hits the origin");
  double d = std::atan2(b1, a1) - std::atan2(b0, a0);
  if (d > std::numbers::pi) d -= kTwoPi;
  if (d < -std::numbers::pi) d += kTwoPi;
  if (std::abs(d) <= std::numbers::pi / 2.0 || depth >= 40) return d;
  const double tm = 0.5 * (t0 + t1);
  return angle_step(p, t0, tm, tol, min_radius, depth + 1) +
         angle_step(p, tm, t1, tol, min_radius, depth + 1);
}

}  // namespace

int tb_degree(const SurfaceProfile& profile, int n_samples, double* residual_out,
              double tol) {
  if (n_samples < 4) fail("BadArgument", "n_samples < 4");
  double total = 0.0;
  double min_radius = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n_samples; ++i) {
    const double t0 = static_cast<double>(i) / n_samples;
    const double t1 = static_cast<double>(i + 1) / n_samples;
    total += angle_step(profile, t0, t1, tol, &min_radius);
  }
  const double turns = total / kTwoPi;
  const long nearest = std::lround(turns);
  const double residual = std::abs(turns - static_cast<double>(nearest));
  if (residual_out) *residual_out = residual;
  if (residual >= 0.1) fail("LoopThroughOrigin", "winding residual >= 0.1");
  return static_cast<int>(nearest);
}

int tb_signed_count(const SurfaceProfile& profile, int delta_sign, int n_samples,
                    double tol) {
  if (delta_sign != 1 && delta_sign != -1) fail("BadArgument", "delta_sign must be +-1");
  int total = 0;
  for (int i = 0; i < n_samples; ++i) {
    double t0 = static_cast<double>(i) / n_samples;
    double t1 = static_cast<double>(i + 1) / n_samples;
    double a0 = profile.a(t0), a1 = profile.a(t1);
    if (a0 == 0.0) a0 = tol * 0.5;  // nudge exact grid hits into the bracket
    if (a0 * a1 > 0.0) continue;
    for (int it = 0; it < 200 && t1 - t0 > 1e-15; ++it) {
      const double tm = 0.5 * (t0 + t1);
      const double am = profile.a(tm);
      if (a0 * am <= 0.0) {
        t1 = tm;
        a1 = am;
      } else {
        t0 = tm;
        a0 = am;
      }
    }
    const double root = 0.5 * (t0 + t1);
    const double slope = profile.da(root);
    if (std::abs(slope) <= tol) fail("TangentZero", "a' vanishes at a zero of a");
    const double bval = profile.b(root);
    const int bsign = bval > 0.0 ? 1 : -1;
    if (bsign != delta_sign) continue;
    total += (-delta_sign * slope) > 0.0 ? 1 : -1;
  }
  return total;
}

SurfaceProfile elliptic_normal_profile(double theta_k, SurfaceProfile::Fn a,
                                       SurfaceProfile::Fn da, double window) {
  if (window > 0.45) fail("BadArgument", "window too wide for a periodic taper");
  const double w = std::clamp(window, 0.05, 0.45);

  // Odd 1-periodic taper g with g(d) = d for |d| <= w and a single companion
  // zero at d = 1/2; quintic smoothstep blend beyond the linear zone.
  const double half = 0.5;
  const double c1 = w / (half - w);
  auto g_half = [w, c1, half](double d, double* dg) {
    if (d <= w) {
      *dg = 1.0;
      return d;
    }
    const double u = (d - w) / (half - w);
    const double s = u * u * u * (10.0 + u * (-15.0 + 6.0 * u));
    const double ds = 30.0 * u * u * (1.0 - u) * (1.0 - u) / (half - w);
    const double target = c1 * (half - d);
    *dg = (1.0 - s) - ds * d + ds * target - s * c1;
    return (1.0 - s) * d + s * target;
  };
  auto g = [g_half](double d, double* dg) {
    d = d - std::floor(d + 0.5);  // wrap to [-1/2, 1/2)
    if (d >= 0.0) return g_half(d, dg);
    double dd;
    const double v = -g_half(-d, &dd);
    *dg = dd;
    return v;
  };

  auto b = [theta_k, a, g](double th) {
    double dg;
    return -0.5 * a(th) * g(th - theta_k, &dg);
  };
  auto db = [theta_k, a, da, g](double th) {
    double dg;
    const double gv = g(th - theta_k, &dg);
    return -0.5 * (da(th) * gv + a(th) * dg);
  };
  return SurfaceProfile::from_functions(a, da, b, db);
}

ChartPoint flatten_point(const ChartPoint& p, const SurfaceProfile& profile,
                         double tol) {
  ChartPoint out = p;
  out.x = p.x - profile.q(p.theta, tol) * p.y;
  return out;
}

ChartPoint unflatten_point(const ChartPoint& p, const SurfaceProfile& profile,
                           double tol) {
  ChartPoint out = p;
  out.x = p.x + profile.q(p.theta, tol) * p.y;
  return out;
}

SurfaceProfile load_profile_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("IoFailure", "cannot open profile CSV: " + path);
  std::string line;
  if (!std::getline(in, line)) fail("IoFailure", "empty profile CSV: " + path);
  // tolerate a UTF-8 BOM and whitespace in the header
  std::string hdr;
  for (char ch : line)
    if (!std::isspace(static_cast<unsigned char>(ch))) hdr += ch;
  if (hdr.size() >= 3 && hdr.compare(0, 3, "\xEF\xBB\xBF") == 0) hdr = hdr.substr(3);
  if (hdr != "theta,a,b") fail("IoFailure", "expected header theta,a,b in " + path);
  std::vector<double> thetas, as, bs;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string cell;
    double vals[3];
    for (double& v : vals) {
      if (!std::getline(row, cell, ',')) fail("IoFailure", "short row in " + path);
      v = std::stod(cell);
    }
    thetas.push_back(wrap_unit(vals[0]));
    as.push_back(vals[1]);
    bs.push_back(vals[2]);
  }
  const int n = static_cast<int>(thetas.size());
  if (n < 16) fail("IoFailure", "profile CSV needs >= 16 rows");
  for (int j = 0; j < n; ++j) {
    if (std::abs(thetas[j] - static_cast<double>(j) / n) > 1e-9)
      fail("IoFailure", "profile CSV grid must be uniform over [0,1)");
  }
  return SurfaceProfile::from_samples(as, bs);
}

}  // namespace striplab
