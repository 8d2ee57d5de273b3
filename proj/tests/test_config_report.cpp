#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "striplab/config.hpp"
#include "striplab/errors.hpp"
#include "striplab/report.hpp"

using namespace striplab;

TEST_SUITE("config_report") {

TEST_CASE("ini parsing with sections, comments and whitespace") {
  const RunConfig cfg = parse_run_config(
      "# leading comment\n"
      "[profile]\n"
      "  q0 = -10  ; trailing comment\n"
      "\n"
      "[grid]\n"
      "n_s=120\n"
      "s_min = 4.0\n");
  CHECK(cfg.get("profile", "q0") == "-10");
  CHECK(cfg.get_double("profile", "q0") == -10.0);
  CHECK(cfg.get_int("grid", "n_s") == 120);
  CHECK(cfg.get_double("grid", "s_min") == 4.0);
  CHECK(cfg.has("grid", "s_min"));
  CHECK(!cfg.has("grid", "s_max"));
  CHECK(cfg.get_double("grid", "s_max", 10.0) == 10.0);
  CHECK(cfg.get("output", "directory", "") == "");
}

TEST_CASE("ini errors carry the BadConfig code") {
  CHECK_THROWS_WITH_AS(parse_run_config("[grid\nn = 1\n"),
                       doctest::Contains("BadConfig"), Error);
  CHECK_THROWS_WITH_AS(parse_run_config("[grid]\njust a line\n"),
                       doctest::Contains("BadConfig"), Error);
  const RunConfig cfg = parse_run_config("[grid]\nn = x\n");
  CHECK_THROWS_WITH_AS(cfg.get_int("grid", "n"),
                       doctest::Contains("BadConfig"), Error);
  CHECK_THROWS_WITH_AS(cfg.get("grid", "missing"),
                       doctest::Contains("BadConfig"), Error);
  CHECK_THROWS_WITH_AS(load_run_config("no_such_config.ini"),
                       doctest::Contains("IoFailure"), Error);
}

TEST_CASE("config file round trip") {
  const char* path = "config_roundtrip_test.ini";
  {
    std::ofstream out(path);
    out << "[experiment]\nepsilon = 0.2\n";
  }
  const RunConfig cfg = load_run_config(path);
  std::remove(path);
  CHECK(cfg.get_double("experiment", "epsilon") == 0.2);
}

TEST_CASE("float formatting survives a JSON round trip") {
  for (double x : {0.1, -1.0 / 3.0, 6.2831853071795e-7, 1e300, 0.0}) {
    const nlohmann::json j = nlohmann::json::parse(format_double(x));
    CHECK(j.get<double>() == x);
  }
}

TEST_CASE("deterministic JSON dump sorts keys and is byte-stable") {
  nlohmann::json a;
  a["zeta"] = 1.0 / 3.0;
  a["alpha"] = std::vector<double>{1.5, -2.0};
  a["mid"] = "text";
  a["flag"] = true;
  a["count"] = 7;
  const std::string s1 = dump_json(a);
  nlohmann::json b;  // same content, different insertion order
  b["count"] = 7;
  b["flag"] = true;
  b["alpha"] = std::vector<double>{1.5, -2.0};
  b["mid"] = "text";
  b["zeta"] = 1.0 / 3.0;
  CHECK(s1 == dump_json(b));
  CHECK(s1.find("\"alpha\"") < s1.find("\"count\""));
  CHECK(s1.find("\"count\"") < s1.find("\"zeta\""));
  CHECK(nlohmann::json::parse(s1) == a);  // round trip
}

TEST_CASE("csv writers use the documented column orders") {
  AlphaTrace tr;
  tr.s = {1.0, 2.0};
  tr.alpha_logderiv = {-1.5, -1.6};
  tr.alpha_formula = {-1.51, -1.61};
  const std::string csv = alpha_trace_csv(tr);
  CHECK(csv.rfind("s,alpha_logderiv,alpha_formula\n", 0) == 0);
  CHECK(csv.find("\n1,-1.5,-1.51\n") != std::string::npos);

  const std::string log = solve_log_csv({{1, 0.5, 0.25}, {2, 1e-9, 1e-4}});
  CHECK(log.rfind("iter,residual,step_norm\n", 0) == 0);
  CHECK(log.find("\n1,0.5,0.25\n") != std::string::npos);
  CHECK(log.find("\n2,") != std::string::npos);
}

TEST_CASE("report writing failures carry the IoFailure code") {
  CHECK_THROWS_WITH_AS(write_text_file("x", "no_such_dir/out.txt"),
                       doctest::Contains("IoFailure"), Error);
}

}  // TEST_SUITE
