// Randomized sample generators for the verification suites. All draws go
// through the per-check Rng stream, so any (seed, check id) pair replays
// the same points.

#pragma once

#include <cmath>

#include "hasv/config.hpp"
#include "hasv/forms.hpp"
#include "hasv/linalg.hpp"
#include "hasv/rep.hpp"
#include "hasv/rng.hpp"
#include "hasv/types.hpp"

namespace hasv {

inline ConePoint sample_cone(Rng& rng, const SuiteConfig& cfg) {
  const double x3 = rng.uniform(cfg.cone_x3_min, cfg.cone_x3_max);
  const double r = x3 * std::sqrt(cfg.cone_radius_frac * rng.uniform());
  const double th = rng.uniform(0.0, 6.283185307179586);
  return ConePoint(r * std::cos(th), r * std::sin(th), x3);
}

inline HalfPlanePoint sample_halfplane(Rng& rng, const SuiteConfig& cfg) {
  return HalfPlanePoint(rng.uniform(cfg.z_x_min, cfg.z_x_max), rng.uniform(cfg.z_y_min, cfg.z_y_max));
}

// stays off the boundary circle, where the closed forms degenerate
inline DiskPoint sample_disk(Rng& rng) {
  const double r = 0.95 * std::sqrt(rng.uniform());
  const double th = rng.uniform(0.0, 6.283185307179586);
  return DiskPoint(r * std::cos(th), r * std::sin(th));
}

inline Sl2Element sample_sl2(Rng& rng, double scale = 1.0) {
  return {rng.uniform(-scale, scale), rng.uniform(-scale, scale), rng.uniform(-scale, scale)};
}

inline RMat2 sample_sl2_group(Rng& rng, double scale = 1.0) {
  return exp_sl2(sample_sl2(rng, scale));
}

inline RMat3 sample_sl3(Rng& rng, double scale = 1.0) {
  RMat3 m;
  for (int k = 0; k < 9; ++k) m.a[static_cast<std::size_t>(k)] = rng.uniform(-scale, scale);
  const double t = trace(m) / 3.0;
  m(0, 0) -= t;
  m(1, 1) -= t;
  m(2, 2) -= t;
  return m;
}

inline Polynomial sample_polynomial(Rng& rng, int degree_cap) {
  const int deg = static_cast<int>(rng.uniform(0.0, degree_cap + 1.0));
  std::vector<cplx> c(static_cast<std::size_t>(deg) + 1);
  for (auto& v : c) v = cplx(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
  return Polynomial(std::move(c));
}

}  // namespace hasv
