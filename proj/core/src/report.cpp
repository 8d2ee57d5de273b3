#include "striplab/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "striplab/errors.hpp"

namespace striplab {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

void dump_rec(const nlohmann::json& j, std::string& out) {
  switch (j.type()) {
    case nlohmann::json::value_t::object: {
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        out += nlohmann::json(it.key()).dump();
        out += ':';
        dump_rec(it.value(), out);
      }
      out += '}';
      break;
    }
    case nlohmann::json::value_t::array: {
      out += '[';
      bool first = true;
      for (const auto& v : j) {
        if (!first) out += ',';
        first = false;
        dump_rec(v, out);
      }
      out += ']';
      break;
    }
    case nlohmann::json::value_t::number_float:
      out += format_double(j.get<double>());
      break;
    default:
      out += j.dump();
  }
}

}  // namespace

std::string dump_json(const nlohmann::json& j) {
  std::string out;
  dump_rec(j, out);
  out += '\n';
  return out;
}

void write_text_file(const std::string& text, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail("IoFailure", "cannot open " + path + " for writing");
  out << text;
  if (!out) fail("IoFailure", "write failed for " + path);
}

void write_json_report(const nlohmann::json& j, const std::string& path) {
  write_text_file(dump_json(j), path);
}

nlohmann::json spectrum_report_json(const SpectrumReport& r) {
  nlohmann::json j;
  j["method"] = r.method;
  j["q0"] = r.q0;
  j["eigenvalues"] = r.eigenvalues;
  j["multiplicities"] = r.multiplicities;
  auto gaps = nlohmann::json::array();
  for (const auto& g : r.gaps) gaps.push_back({g[0], g[1]});
  j["gaps"] = gaps;
  return j;
}

nlohmann::json decay_report_json(const DecayReport& r) {
  nlohmann::json j;
  j["lambda"] = r.lambda;
  j["rho"] = r.rho;
  j["delta_alpha"] = r.delta_alpha;
  j["delta_remainder"] = r.delta_remainder;
  j["kappa"] = r.kappa;
  j["alpha_discrepancy_max"] = r.alpha_discrepancy_max;
  return j;
}

std::string alpha_trace_csv(const AlphaTrace& tr) {
  std::string out = "s,alpha_logderiv,alpha_formula\n";
  for (size_t i = 0; i < tr.s.size(); ++i) {
    out += format_double(tr.s[i]);
    out += ',';
    out += format_double(tr.alpha_logderiv[i]);
    out += ',';
    out += format_double(tr.alpha_formula[i]);
    out += '\n';
  }
  return out;
}

std::string solve_log_csv(const std::vector<SolveLogEntry>& log) {
  std::string out = "iter,residual,step_norm\n";
  for (const auto& e : log) {
    out += std::to_string(e.iter);
    out += ',';
    out += format_double(e.residual);
    out += ',';
    out += format_double(e.step_norm);
    out += '\n';
  }
  return out;
}

}  // namespace striplab
