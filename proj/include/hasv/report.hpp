// Report emission. JSON reports have a fixed key order and omit wall times,
// so identical (suite, config) pairs serialize byte-identically; the
// markdown rendering carries anchors and timings for human readers.

#pragma once

#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "hasv/config.hpp"
#include "hasv/version.hpp"

namespace hasv {

struct CheckResult {
  std::string check_id;
  std::string suite;
  std::string paper_anchor;  // the identity being checked, or "plumbing"
  int points_tested = 0;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::int64_t wall_time_ms = 0;
};

inline nlohmann::ordered_json config_to_json(const SuiteConfig& cfg) {
  nlohmann::ordered_json j;
  j["samples"] = cfg.samples;
  j["seed"] = cfg.seed;
  j["tol_analytic"] = cfg.tol_analytic;
  j["tol_fd"] = cfg.tol_fd;
  j["fd_step"] = cfg.fd_step;
  j["z_region"] = {cfg.z_x_min, cfg.z_x_max, cfg.z_y_min, cfg.z_y_max};
  j["cone_region"] = {cfg.cone_x3_min, cfg.cone_x3_max, cfg.cone_radius_frac};
  j["degree_cap"] = cfg.degree_cap;
  return j;
}

inline nlohmann::ordered_json report_json(const SuiteConfig& cfg,
                                          const std::vector<CheckResult>& results) {
  if (results.empty()) throw std::invalid_argument("report_json: no results");
  nlohmann::ordered_json j;
  j["version"] = std::string(kVersion);
  j["config"] = config_to_json(cfg);
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : results) {
    nlohmann::ordered_json e;
    e["check_id"] = r.check_id;
    e["paper_anchor"] = r.paper_anchor;
    e["points_tested"] = r.points_tested;
    e["max_residual"] = r.max_residual;
    e["tolerance"] = r.tolerance;
    e["pass"] = r.pass;
    arr.push_back(std::move(e));
  }
  j["results"] = std::move(arr);
  return j;
}

inline std::string emit_json(const SuiteConfig& cfg, const std::vector<CheckResult>& results) {
  return report_json(cfg, results).dump(2) + "\n";
}

inline std::string emit_markdown(const SuiteConfig& cfg, const std::vector<CheckResult>& results) {
  if (results.empty()) throw std::invalid_argument("emit_markdown: no results");
  std::ostringstream out;
  out << "# Verification report (v" << kVersion << ")\n\n";
  out << "samples=" << cfg.samples << " seed=" << cfg.seed << " tol=" << cfg.tol_analytic
      << " fd_tol=" << cfg.tol_fd << " fd_step=" << cfg.fd_step << "\n";

  std::string current_suite;
  for (const auto& r : results) {
    if (r.suite != current_suite) {
      current_suite = r.suite;
      out << "\n## " << current_suite << "\n\n";
      out << "| check | anchor | points | max residual | tolerance | pass | ms |\n";
      out << "|---|---|---|---|---|---|---|\n";
    }
    out << "| " << r.check_id << " | " << r.paper_anchor << " | " << r.points_tested << " | "
        << nlohmann::ordered_json(r.max_residual).dump() << " | "
        << nlohmann::ordered_json(r.tolerance).dump() << " | " << (r.pass ? "yes" : "NO") << " | "
        << r.wall_time_ms << " |\n";
  }
  return out.str();
}

}  // namespace hasv
