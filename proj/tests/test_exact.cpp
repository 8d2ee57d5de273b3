#include <doctest.h>

#include <cmath>
#include <numbers>

#include "striplab/contact.hpp"
#include "striplab/errors.hpp"
#include "striplab/exact.hpp"

using namespace striplab;

namespace {
constexpr double kPi = std::numbers::pi;

double residual_max(double eps, int ns, int nt) {
  const FieldGrid g = sample_strip_solution(eps, -4.0, 4.0, ns, nt);
  return cr_residual(g, [](const Vector4& v) {
           return eval_J_simple({v(0), v(1), v(2), v(3)});
         }).max_norm;
}
}  // namespace

TEST_SUITE("exact") {

TEST_CASE("biholomorphism maps the strip onto the upper half disk") {
  for (double s : {-5.0, -1.0, 0.0, 0.7, 6.0})
    for (double t : {0.0, 0.3, 1.0}) {
      const auto w = strip_to_halfdisk(s, t);
      CHECK(std::abs(w) <= 1.0 + 1e-12);
      CHECK(w.imag() >= -1e-12);
    }
  CHECK(std::abs(strip_to_halfdisk(0.0, 0.0)) <= 1e-15);   // center to center
  const auto edge = strip_to_halfdisk(50.0, 0.5);
  CHECK(std::abs(edge - std::complex<double>(1.0, 0.0)) <= 1e-15);
}

TEST_CASE("strip solution is the half-disk solution composed with the map") {
  const double eps = 0.2;
  for (double s : {-3.0, -0.5, 0.0, 1.2, 4.0})
    for (double t : {0.0, 0.25, 0.8, 1.0}) {
      const auto w = strip_to_halfdisk(s, t);
      const ChartPoint hd = halfdisk_solution(eps, w.real(), w.imag());
      const ChartPoint st = strip_solution(eps, s, t);
      CHECK(std::abs(hd.tau - st.tau) <= 1e-14);
      CHECK(std::abs(hd.theta - st.theta) <= 1e-14);
      CHECK(std::abs(hd.x - st.x) <= 1e-14);
      CHECK(std::abs(hd.y - st.y) <= 1e-14);
    }
}

TEST_CASE("half-disk solution rejects points outside its domain") {
  CHECK_THROWS_WITH_AS(halfdisk_solution(0.2, 0.9, 0.9),
                       doctest::Contains("OutsideDomain"), Error);
  CHECK_THROWS_WITH_AS(halfdisk_solution(0.2, 0.0, -0.1),
                       doctest::Contains("OutsideDomain"), Error);
}

TEST_CASE("discrete CR residual quarters when the grid is refined") {
  const double r1 = residual_max(0.2, 81, 11);
  const double r2 = residual_max(0.2, 161, 21);
  CHECK(r1 / r2 > 3.0);
  CHECK(r1 / r2 < 5.5);
}

TEST_CASE("boundary conditions hold to machine precision") {
  const FieldGrid g = sample_strip_solution(0.2, -5.0, 5.0, 101, 11);
  const ResidualReport rep = cr_residual(g, [](const Vector4& v) {
    return eval_J_simple({v(0), v(1), v(2), v(3)});
  });
  CHECK(rep.bc_t0_max <= 1e-14);
  CHECK(rep.bc_t1_tau_max <= 1e-14);
  CHECK(rep.bc_t1_surf_max <= 1e-14);
}

TEST_CASE("energy quadrature approaches the closed form") {
  const double eps = 0.2;
  const double exact = 0.5 * eps * eps * kPi;
  const double coarse = energy_dlambda(sample_halfdisk_polar(eps, 50, 50));
  const double fine = energy_dlambda(sample_halfdisk_polar(eps, 100, 100));
  CHECK(std::abs(fine - exact) <= 5e-5);
  CHECK(std::abs(coarse - exact) / std::abs(fine - exact) > 3.0);
}

TEST_CASE("hofer energy with the constant profile reproduces the d-lambda energy") {
  const FieldGrid g = sample_strip_solution(0.2, -6.0, 6.0, 101, 15);
  std::vector<PhiProfile> dict;
  dict.push_back({[](double) { return 1.0; }, [](double) { return 0.0; }});
  dict.push_back({[](double tau) { return 0.5 * (1.0 + std::tanh(tau)); },
                  [](double tau) { return 0.5 / std::pow(std::cosh(tau), 2); }});
  const EnergyBudget b = energy_hofer(g, dict);
  CHECK(b.hofer_energy_lb >= energy_dlambda(g) - 1e-12);
  CHECK(b.dlambda_energy == doctest::Approx(energy_dlambda(g)));

  std::vector<PhiProfile> bad;
  bad.push_back({[](double tau) { return -tau; }, [](double) { return -1.0; }});
  CHECK_THROWS_WITH_AS(energy_hofer(g, bad),
                       doctest::Contains("NonMonotoneProfile"), Error);
}

TEST_CASE("the solution family is separated and shrinks linearly in eps") {
  const SeparationReport rep =
      family_separation_check({0.1, 0.15, 0.2}, -5.0, 5.0, 40, 8);
  CHECK(rep.min_pair_distance > 0.0);
  CHECK(rep.sup_monotone);
  CHECK(rep.linear_bound_const <= 2.0);
  CHECK(rep.sup_norms.size() == 3);
}

TEST_CASE("flattened recentered solution satisfies the flat boundary conditions") {
  const double eps = 0.2;
  const FieldGrid g = sample_flattened_strip(eps, 3.0, 8.0, 41, 9);
  for (int i = 0; i < g.n_s; ++i) {
    CHECK(std::abs(g.at(i, 0)(2)) <= 1e-14);            // x' = 0 on the knot
    CHECK(std::abs(g.at(i, 0)(3)) <= 1e-14);            // y = 0 on the knot
    CHECK(std::abs(g.at(i, g.n_t - 1)(0)) <= 1e-14);    // tau = 0 on the surface
    CHECK(std::abs(g.at(i, g.n_t - 1)(2)) <= 1e-12);    // x' = 0 on the surface
  }
  // values decay toward the puncture
  double first = 0.0, last = 0.0;
  for (int j = 0; j < g.n_t; ++j) {
    first = std::max(first, g.at(0, j).cwiseAbs().maxCoeff());
    last = std::max(last, g.at(g.n_s - 1, j).cwiseAbs().maxCoeff());
  }
  CHECK(last < 0.01 * first);
}

TEST_CASE("flattened structure field derivatives are consistent") {
  const StructureField f = flattened_strip_field(0.2);
  const double h = 1e-6, th = -0.003;
  CHECK(f.q_prime(th) ==
        doctest::Approx((f.q(th + h) - f.q(th - h)) / (2 * h)).epsilon(1e-7));
  CHECK(f.qss(th) ==
        doctest::Approx((f.q_prime(th + h) - f.q_prime(th - h)) / (2 * h))
            .epsilon(1e-7));
  CHECK(f.C > f.q(0.0) * f.q(0.0));
}

}  // TEST_SUITE
