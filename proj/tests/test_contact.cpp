#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "striplab/contact.hpp"
#include "striplab/errors.hpp"

using namespace striplab;

namespace {
StructureField decaying_field() {
  StructureField f;
  f.q = [](double th) { return -10.0 + 3.0 * th; };
  f.q_prime = [](double) { return 3.0; };
  f.q_second = [](double) { return 0.0; };
  f.C = default_C(f.q, -0.1, 0.1);
  return f;
}
}  // namespace

TEST_SUITE("contact") {

TEST_CASE("default positivity constant") {
  auto q = [](double th) { return -2.0 + th; };
  // sup q^2 over [-1, 1] is 9
  CHECK(default_C(q, -1.0, 1.0) == doctest::Approx(19.0).epsilon(1e-9));
}

TEST_CASE("contact form and Reeb field are dual") {
  StructureField f = decaying_field();
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-0.2, 0.2);
  for (int k = 0; k < 20; ++k) {
    ChartPoint p{u(rng), u(rng), u(rng), u(rng)};
    const Vector4 lam = eval_lambda_hat(p, f);
    const Vector4 reeb = eval_reeb(p, f);
    CHECK(lam.dot(reeb) == doctest::Approx(1.0).epsilon(1e-13));
  }
}

TEST_CASE("J squares to minus the identity everywhere in the chart") {
  StructureField f = decaying_field();
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-0.2, 0.2);
  for (int k = 0; k < 50; ++k) {
    ChartPoint p{u(rng) * 5, u(rng), u(rng), u(rng)};
    const Matrix4 J = eval_Jhat(p, f);
    CHECK(((J * J + Matrix4::Identity()).cwiseAbs().maxCoeff()) <= 1e-12);
    const Matrix4 Js = eval_J_simple(p);
    CHECK(((Js * Js + Matrix4::Identity()).cwiseAbs().maxCoeff()) <= 1e-12);
  }
}

TEST_CASE("J at the chart origin is the constant-coefficient limit") {
  StructureField f = StructureField::constant(-10.0, 201.0);
  const Matrix4 J = eval_Jhat({0, 0, 0, 0}, f);
  Matrix4 M;
  M << 0, 0, 0, -1,  //
      0, 0, 1, -10,  //
      10, -1, 0, 0,  //
      1, 0, 0, 0;
  CHECK((J - M).cwiseAbs().maxCoeff() <= 1e-14);
  CHECK((M * M + Matrix4::Identity()).cwiseAbs().maxCoeff() <= 1e-14);
}

TEST_CASE("directional derivative of J matches finite differences") {
  StructureField f = decaying_field();
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-0.1, 0.1);
  for (int k = 0; k < 20; ++k) {
    ChartPoint p{u(rng), u(rng), u(rng), u(rng)};
    Vector4 d;
    for (int c = 0; c < 4; ++c) d(c) = u(rng) * 10;
    const double h = 1e-6;
    ChartPoint pp{p.tau + h * d(0), p.theta + h * d(1), p.x + h * d(2),
                  p.y + h * d(3)};
    ChartPoint pm{p.tau - h * d(0), p.theta - h * d(1), p.x - h * d(2),
                  p.y - h * d(3)};
    const Matrix4 fd = (eval_Jhat(pp, f) - eval_Jhat(pm, f)) / (2 * h);
    const Matrix4 an = eval_Jhat_derivative(p, f, d);
    CHECK((fd - an).cwiseAbs().maxCoeff() <= 1e-7);
  }
}

TEST_CASE("q'' falls back to finite differences when not supplied") {
  StructureField f;
  f.q = [](double th) { return std::sin(th); };
  f.q_prime = [](double th) { return std::cos(th); };
  CHECK(f.qss(0.3) == doctest::Approx(-std::sin(0.3)).epsilon(1e-6));
  f.q_second = [](double th) { return -std::sin(th); };
  CHECK(f.qss(0.3) == doctest::Approx(-std::sin(0.3)).epsilon(1e-14));
}

TEST_CASE("the two-forms are antisymmetric") {
  StructureField f = decaying_field();
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-0.2, 0.2);
  for (int k = 0; k < 20; ++k) {
    ChartPoint p{u(rng), u(rng), u(rng), u(rng)};
    const Matrix4 Om = eval_Omega(p, f);
    const Matrix4 Omf = eval_Omega_flat(p, f);
    CHECK((Om + Om.transpose()).cwiseAbs().maxCoeff() <= 1e-15);
    CHECK((Omf + Omf.transpose()).cwiseAbs().maxCoeff() <= 1e-15);
  }
}

TEST_CASE("compatibility identities are exact on the x = 0 slice") {
  StructureField f = StructureField::constant(-10.0, 201.0);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<ChartPoint> pts;
  for (int k = 0; k < 200; ++k)
    pts.push_back({u(rng), 0.5 * (u(rng) + 1.0), 0.0, 0.1 * u(rng)});
  const CompatReport rep = compatibility_report(f, pts);
  CHECK(rep.max_jsq <= 1e-12);
  CHECK(rep.max_asym <= 1e-12);
  CHECK(rep.max_conj <= 1e-12);
  CHECK(rep.max_lagrangian <= 1e-12);
  CHECK(rep.min_eig > 1e-8);
  CHECK(rep.pass());
}

TEST_CASE("off-slice symmetry defect grows linearly with slope 2C") {
  StructureField f = StructureField::constant(0.0, 2.0);
  for (double x : {1e-4, 1e-3, 1e-2}) {
    const CompatReport rep = compatibility_report(f, {{0.0, 0.5, x, 0.0}});
    CHECK(rep.max_asym == doctest::Approx(2.0 * f.C * x).epsilon(1e-9));
  }
}

TEST_CASE("positivity failure carries a witness") {
  // C below sup q^2 breaks positive definiteness of sym(Omega J)
  StructureField f = StructureField::constant(-10.0, 1.0);
  CHECK_THROWS_WITH_AS(
      compatibility_report(f, {{0.0, 0.5, 0.0, 0.0}}),
      doctest::Contains("PositivityFailure"), Error);
}

}  // TEST_SUITE
