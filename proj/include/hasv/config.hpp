// Suite configuration: sample counts, master seed, tolerances, the
// finite-difference step, sampling regions, and the polynomial degree cap.
// Sources in increasing precedence: built-in defaults, config file
// (flat key=value), environment (VERIFY_*), command-line flags.

#pragma once

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace hasv {

struct SuiteConfig {
  int samples = 100;
  std::uint64_t seed = 1729;
  double tol_analytic = 1e-9;
  double tol_fd = 1e-6;
  double fd_step = 1e-5;
  // half-plane sampling rectangle; y_min stays away from the 1/y^2 blowup
  double z_x_min = -3.0, z_x_max = 3.0;
  double z_y_min = 0.2, z_y_max = 5.0;
  // cone sampling: x3 in [min, max], x1^2 + x2^2 <= radius_frac x3^2
  double cone_x3_min = 1.0, cone_x3_max = 5.0;
  double cone_radius_frac = 0.8;
  int degree_cap = 4;

  void validate() const {
    if (samples <= 0) throw std::invalid_argument("config: samples must be positive");
    if (!(tol_analytic > 0.0) || !(tol_fd > 0.0)) throw std::invalid_argument("config: tolerances must be positive");
    if (!(fd_step > 0.0)) throw std::invalid_argument("config: fd_step must be positive");
    if (!(z_x_min < z_x_max) || !(z_y_min < z_y_max)) throw std::invalid_argument("config: empty z region");
    if (!(z_y_min > 0.0)) throw std::invalid_argument("config: z region must satisfy y > 0");
    // five-point stencils reach two steps below the sampled point
    if (!(z_y_min - 2.0 * fd_step > 0.0))
      throw std::invalid_argument("config: z region too close to y = 0 for fd_step");
    if (!(cone_x3_min < cone_x3_max) || !(cone_x3_min > 0.0)) throw std::invalid_argument("config: empty cone region");
    if (!(cone_radius_frac > 0.0) || !(cone_radius_frac < 1.0))
      throw std::invalid_argument("config: cone_radius_frac must lie in (0,1)");
    if (degree_cap < 0) throw std::invalid_argument("config: degree_cap must be nonnegative");
  }
};

namespace detail {
inline void apply_config_key(SuiteConfig& cfg, const std::string& key, const std::string& value) {
  try {
    if (key == "samples") cfg.samples = std::stoi(value);
    else if (key == "seed") cfg.seed = std::stoull(value);
    else if (key == "tol") cfg.tol_analytic = std::stod(value);
    else if (key == "fd_tol") cfg.tol_fd = std::stod(value);
    else if (key == "fd_step") cfg.fd_step = std::stod(value);
    else if (key == "z_x_min") cfg.z_x_min = std::stod(value);
    else if (key == "z_x_max") cfg.z_x_max = std::stod(value);
    else if (key == "z_y_min") cfg.z_y_min = std::stod(value);
    else if (key == "z_y_max") cfg.z_y_max = std::stod(value);
    else if (key == "cone_x3_min") cfg.cone_x3_min = std::stod(value);
    else if (key == "cone_x3_max") cfg.cone_x3_max = std::stod(value);
    else if (key == "cone_radius_frac") cfg.cone_radius_frac = std::stod(value);
    else if (key == "degree_cap") cfg.degree_cap = std::stoi(value);
    else if (key == "output" || key == "out") { /* handled by the CLI layer */ }
    else throw std::invalid_argument("config: unknown key '" + key + "'");
  } catch (const std::invalid_argument&) {
    throw;
  } catch (const std::exception&) {
    throw std::invalid_argument("config: bad value for '" + key + "'");
  }
}
}  // namespace detail

// Flat key=value file; '#' starts a comment.
inline void load_config_file(SuiteConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open '" + path + "'");
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::string trimmed;
    for (char c : line)
      if (!std::isspace(static_cast<unsigned char>(c))) trimmed += c;
    if (trimmed.empty()) continue;
    const auto eq = trimmed.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("config: expected key=value, got '" + line + "'");
    detail::apply_config_key(cfg, trimmed.substr(0, eq), trimmed.substr(eq + 1));
  }
}

// VERIFY_SAMPLES, VERIFY_SEED, VERIFY_TOL, VERIFY_FD_TOL, VERIFY_FD_STEP
inline void apply_env_overrides(SuiteConfig& cfg) {
  const char* keys[] = {"samples", "seed", "tol", "fd_tol", "fd_step"};
  for (const char* key : keys) {
    std::string env = "VERIFY_";
    for (const char* c = key; *c; ++c) env += static_cast<char>(std::toupper(static_cast<unsigned char>(*c)));
    if (const char* v = std::getenv(env.c_str())) detail::apply_config_key(cfg, key, v);
  }
}

}  // namespace hasv
