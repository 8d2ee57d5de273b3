#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "striplab/decay.hpp"
#include "striplab/solver.hpp"
#include "striplab/spectral.hpp"

namespace striplab {

// %.17g, so round-trips exactly and identical inputs give identical bytes.
std::string format_double(double x);

// Deterministic JSON text: object keys sorted, floats via format_double,
// no locale dependence.  nlohmann::json (std::map-backed) already sorts keys.
std::string dump_json(const nlohmann::json& j);

// Errors: IoFailure.
void write_text_file(const std::string& text, const std::string& path);
void write_json_report(const nlohmann::json& j, const std::string& path);

nlohmann::json spectrum_report_json(const SpectrumReport& r);
nlohmann::json decay_report_json(const DecayReport& r);

// CSV "s,alpha_logderiv,alpha_formula".
std::string alpha_trace_csv(const AlphaTrace& tr);
// CSV "iter,residual,step_norm".
std::string solve_log_csv(const std::vector<SolveLogEntry>& log);

}  // namespace striplab
