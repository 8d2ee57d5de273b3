#pragma once

#include <map>
#include <string>

namespace striplab {

// Line-based config: `key = value` pairs under `[section]` headers, `#` and
// `;` comments.  No nesting.
struct RunConfig {
  std::map<std::string, std::map<std::string, std::string>> sections;

  bool has(const std::string& section, const std::string& key) const;
  // Errors: BadConfig when the key is absent and no fallback is given.
  std::string get(const std::string& section, const std::string& key) const;
  std::string get(const std::string& section, const std::string& key,
                  const std::string& fallback) const;
  double get_double(const std::string& section, const std::string& key) const;
  double get_double(const std::string& section, const std::string& key,
                    double fallback) const;
  int get_int(const std::string& section, const std::string& key) const;
  int get_int(const std::string& section, const std::string& key,
              int fallback) const;
};

// Errors: IoFailure, BadConfig.
RunConfig load_run_config(const std::string& path);
RunConfig parse_run_config(const std::string& text);

}  // namespace striplab
