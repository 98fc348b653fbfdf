// verify <suite> -- runs a verification suite and emits a JSON or markdown
// report. Exit code 0 when every check passes, 1 on any failing check,
// 2 on usage or configuration errors.
//
// Option precedence: defaults < config file < VERIFY_* environment < flags.

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "hasv/checks.hpp"
#include "hasv/config.hpp"
#include "hasv/report.hpp"

int main(int argc, char** argv) {
  CLI::App app{"pointwise verification of hyperbolic affine sphere geometry"};

  std::string suite;
  std::string suites_help;
  for (const auto& s : hasv::suite_names()) suites_help += s + " ";
  app.add_option("suite", suite, "suite to run: " + suites_help)->required();

  std::string config_path, output = "json", out_path;
  long long samples = 0;
  std::string seed_str, tol_str, fd_step_str;
  app.add_option("--config", config_path, "flat key=value config file");
  auto* samples_opt = app.add_option("--samples", samples, "sample points per check");
  app.add_option("--seed", seed_str, "master seed (64-bit)");
  app.add_option("--tol", tol_str, "analytic-path tolerance scale (default 1e-9)");
  app.add_option("--fd-step", fd_step_str, "central-difference step (default 1e-5)");
  auto* output_opt = app.add_option("--output", output, "report format: json | md")
                         ->check(CLI::IsMember({"json", "md"}));
  auto* out_opt = app.add_option("--out", out_path, "write the report to this path instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  // environment fills in flags that were not given explicitly
  if (output_opt->count() == 0) {
    if (const char* v = std::getenv("VERIFY_OUTPUT")) output = v;
    if (output != "json" && output != "md") {
      std::cerr << "config error: VERIFY_OUTPUT must be json or md\n";
      return 2;
    }
  }
  if (out_opt->count() == 0) {
    if (const char* v = std::getenv("VERIFY_OUT")) out_path = v;
  }

  hasv::SuiteConfig cfg;
  try {
    if (!config_path.empty()) hasv::load_config_file(cfg, config_path);
    hasv::apply_env_overrides(cfg);
    if (samples_opt->count() > 0) cfg.samples = static_cast<int>(samples);
    if (!seed_str.empty()) cfg.seed = std::stoull(seed_str);
    if (!tol_str.empty()) cfg.tol_analytic = std::stod(tol_str);
    if (!fd_step_str.empty()) cfg.fd_step = std::stod(fd_step_str);
    cfg.validate();
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }

  std::vector<hasv::CheckResult> results;
  try {
    results = hasv::run_suite(suite, cfg);
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  const std::string report =
      output == "md" ? hasv::emit_markdown(cfg, results) : hasv::emit_json(cfg, results);
  if (out_path.empty()) {
    std::cout << report;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot write '" << out_path << "'\n";
      return 2;
    }
    out << report;
  }

  int failures = 0;
  for (const auto& r : results)
    if (!r.pass) ++failures;
  std::cerr << (results.size() - static_cast<std::size_t>(failures)) << "/" << results.size()
            << " checks passed\n";
  return failures == 0 ? 0 : 1;
}
