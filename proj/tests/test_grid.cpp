#include <doctest.h>

#include <cstdio>

#include "striplab/errors.hpp"
#include "striplab/grid.hpp"

using namespace striplab;

TEST_SUITE("grid") {

TEST_CASE("construction and indexing") {
  FieldGrid g = FieldGrid::make(-1.0, 2.0, 7, 0.0, 1.0, 5);
  CHECK(g.hs() == doctest::Approx(0.5));
  CHECK(g.ht() == doctest::Approx(0.25));
  CHECK(g.s(4) == doctest::Approx(1.0));
  CHECK(g.t(3) == doctest::Approx(0.75));
  g.at(2, 3) = Vector4(1, 2, 3, 4);
  CHECK(g.values[2 * 5 + 3](1) == 2.0);
  CHECK(g.row(2)[3](3) == 4.0);
  CHECK_THROWS_WITH_AS(FieldGrid::make(0, 1, 2, 0, 1, 5),
                       doctest::Contains("GridTooShort"), Error);
}

TEST_CASE("finite differences are exact on quadratics, edges included") {
  FieldGrid g = FieldGrid::make(0.0, 1.0, 9, 0.0, 2.0, 7);
  for (int i = 0; i < g.n_s; ++i)
    for (int j = 0; j < g.n_t; ++j) {
      const double s = g.s(i), t = g.t(j);
      g.at(i, j) = Vector4(s * s, s * t, t * t, 1.0 + 2 * s - 3 * t);
    }
  for (int i : {0, 3, 8})
    for (int j : {0, 2, 6}) {
      const double s = g.s(i), t = g.t(j);
      const Vector4 ds = fd_s(g, i, j), dt = fd_t(g, i, j);
      CHECK(ds(0) == doctest::Approx(2 * s).epsilon(1e-12));
      CHECK(ds(1) == doctest::Approx(t).epsilon(1e-12));
      CHECK(ds(2) == doctest::Approx(0.0).epsilon(1e-12));
      CHECK(ds(3) == doctest::Approx(2.0).epsilon(1e-12));
      CHECK(dt(1) == doctest::Approx(s).epsilon(1e-12));
      CHECK(dt(2) == doctest::Approx(2 * t).epsilon(1e-12));
      CHECK(dt(3) == doctest::Approx(-3.0).epsilon(1e-12));
    }
}

TEST_CASE("CSV round trip preserves every value bit-exactly") {
  FieldGrid g = FieldGrid::make(-2.0, 3.0, 6, 0.0, 1.0, 4);
  for (int i = 0; i < g.n_s; ++i)
    for (int j = 0; j < g.n_t; ++j)
      g.at(i, j) = Vector4(0.1 * i - 0.2 * j, 1.0 / (i + 1), -3e-7 * j, i * j);
  const char* path = "grid_roundtrip_test.csv";
  save_grid_csv(g, path);
  FieldGrid h = load_grid_csv(path);
  std::remove(path);
  REQUIRE(h.n_s == g.n_s);
  REQUIRE(h.n_t == g.n_t);
  CHECK(h.s_min == g.s_min);
  CHECK(h.s_max == g.s_max);
  for (size_t k = 0; k < g.values.size(); ++k)
    CHECK((g.values[k] - h.values[k]).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("CSV loader rejects malformed input") {
  const char* path = "grid_bad_test.csv";
  std::FILE* fp = std::fopen(path, "w");
  std::fputs("wrong,header\n1,2,3,4,5,6\n", fp);
  std::fclose(fp);
  CHECK_THROWS_WITH_AS(load_grid_csv(path), doctest::Contains("IoFailure"),
                       Error);
  std::remove(path);
  CHECK_THROWS_WITH_AS(load_grid_csv("no_such_grid.csv"),
                       doctest::Contains("IoFailure"), Error);
}

}  // TEST_SUITE
