// Copyright 2026 The kss-spectra Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// CSV and JSON serialization of experiment reports and tables. Doubles are
// written with 17 significant digits; runtimes are omitted unless requested
// so that repeated runs produce identical bytes.

#ifndef KSS_REPORT_IO_HPP
#define KSS_REPORT_IO_HPP

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

#include "kss/experiments.hpp"

namespace kss {

inline constexpr const char* kSchemaName = "kss-spectra schema v1";
inline constexpr const char* kSchemaHeader = "# kss-spectra schema v1";

inline std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

/// Quotes a CSV cell when it contains a separator, quote or newline.
inline std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline const std::vector<std::string>& report_csv_columns() {
  static const std::vector<std::string> cols = {"name",  "m",      "n",         "q",      "l_n",
                                                "t_n",   "eps_n",  "eta_n",     "estimate",
                                                "std_error", "target", "pass",  "seed"};
  return cols;
}

struct ReportWriteOptions {
  bool timing = false;
};

inline void write_reports_csv(std::ostream& os, const std::vector<ExperimentReport>& reports,
                              const ReportWriteOptions& opt = {}) {
  const auto& cols = report_csv_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
  if (opt.timing) os << ",runtime_seconds";
  os << '\n';
  auto param = [](const ExperimentReport& r, const char* key) {
    auto it = r.parameters.find(key);
    return it == r.parameters.end() ? std::string() : format_double(it->second);
  };
  for (const auto& r : reports) {
    os << csv_cell(r.name);
    for (const char* key : {"m", "n", "q", "l_n", "t_n", "eps_n", "eta_n"}) os << ',' << param(r, key);
    os << ',' << format_double(r.estimate) << ',' << format_double(r.std_error) << ','
       << format_double(r.target) << ',' << to_string(r.verdict) << ',' << r.seed;
    if (opt.timing) os << ',' << format_double(r.runtime_seconds);
    os << '\n';
  }
}

inline nlohmann::ordered_json report_to_json(const ExperimentReport& r, const ReportWriteOptions& opt = {}) {
  nlohmann::ordered_json j;
  j["name"] = r.name;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.parameters) params[k] = v;
  j["parameters"] = params;
  j["estimate"] = r.estimate;
  j["std_error"] = r.std_error;
  j["target"] = r.target;
  j["tolerance_rule"] = r.tolerance_rule;
  j["pass"] = r.pass();
  j["verdict"] = r.verdict == Verdict::PreAsymptotic ? "pre-asymptotic" : (r.pass() ? "pass" : "fail");
  j["seed"] = r.seed;
  if (opt.timing) j["runtime_seconds"] = r.runtime_seconds;
  return j;
}

/// {"schema": ..., "reports": [one object per report]}
inline void write_reports_json(std::ostream& os, const std::vector<ExperimentReport>& reports,
                               const ReportWriteOptions& opt = {}) {
  nlohmann::ordered_json doc;
  doc["schema"] = kSchemaName;
  doc["reports"] = nlohmann::ordered_json::array();
  for (const auto& r : reports) doc["reports"].push_back(report_to_json(r, opt));
  os << doc.dump(2) << '\n';
}

}  // namespace kss

#endif  // KSS_REPORT_IO_HPP
