#include "striplab/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "striplab/errors.hpp"

namespace striplab {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

bool RunConfig::has(const std::string& section, const std::string& key) const {
  auto it = sections.find(section);
  return it != sections.end() && it->second.count(key) > 0;
}

std::string RunConfig::get(const std::string& section,
                           const std::string& key) const {
  auto it = sections.find(section);
  if (it != sections.end()) {
    auto jt = it->second.find(key);
    if (jt != it->second.end()) return jt->second;
  }
  fail("BadConfig", "missing config key [" + section + "] " + key);
}

std::string RunConfig::get(const std::string& section, const std::string& key,
                           const std::string& fallback) const {
  return has(section, key) ? get(section, key) : fallback;
}

double RunConfig::get_double(const std::string& section,
                             const std::string& key) const {
  const std::string v = get(section, key);
  char* end = nullptr;
  const double x = std::strtod(v.c_str(), &end);
  if (end == v.c_str() || *end != '\0')
    fail("BadConfig", "not a number: [" + section + "] " + key + " = " + v);
  return x;
}

double RunConfig::get_double(const std::string& section, const std::string& key,
                             double fallback) const {
  return has(section, key) ? get_double(section, key) : fallback;
}

int RunConfig::get_int(const std::string& section,
                       const std::string& key) const {
  const std::string v = get(section, key);
  char* end = nullptr;
  const long x = std::strtol(v.c_str(), &end, 10);
  if (end == v.c_str() || *end != '\0')
    fail("BadConfig", "not an integer: [" + section + "] " + key + " = " + v);
  return static_cast<int>(x);
}

int RunConfig::get_int(const std::string& section, const std::string& key,
                       int fallback) const {
  return has(section, key) ? get_int(section, key) : fallback;
}

RunConfig parse_run_config(const std::string& text) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find_first_of("#;");
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        fail("BadConfig", "malformed section header at line " +
                              std::to_string(lineno));
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      fail("BadConfig", "expected key = value at line " + std::to_string(lineno));
    cfg.sections[section][trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return cfg;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("IoFailure", "cannot open config file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_run_config(buf.str());
}

}  // namespace striplab
