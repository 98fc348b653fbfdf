// Domain points: the forward Lorentz cone, the Klein disk, and the upper
// half-plane. Constructors validate the defining inequalities and throw
// std::domain_error on violation; degenerate near-boundary input is rejected
// rather than clamped because the closed forms genuinely blow up there.

#pragma once

#include <complex>
#include <stdexcept>

#include "hasv/linalg.hpp"

namespace hasv {

// x inside C = {x3^2 > x1^2 + x2^2, x3 > 0}
struct ConePoint {
  double x1 = 0.0, x2 = 0.0, x3 = 1.0;

  ConePoint() = default;
  ConePoint(double a, double b, double c) : x1(a), x2(b), x3(c) {
    if (!(x3 > 0.0)) throw std::domain_error("ConePoint: x3 must be positive");
    if (!(gap() > 1e-12)) throw std::domain_error("ConePoint: point not strictly inside the cone");
  }
  explicit ConePoint(const RVec3& v) : ConePoint(v[0], v[1], v[2]) {}

  // t = x3^2 - x1^2 - x2^2
  double gap() const { return x3 * x3 - x1 * x1 - x2 * x2; }

  RVec3 vec() const { return {x1, x2, x3}; }
};

// (t1, t2) in the open unit disk
struct DiskPoint {
  double t1 = 0.0, t2 = 0.0;

  DiskPoint() = default;
  DiskPoint(double a, double b) : t1(a), t2(b) {
    if (!(t1 * t1 + t2 * t2 < 1.0)) throw std::domain_error("DiskPoint: outside the open unit disk");
  }
};

// z = x + iy with y > 0
struct HalfPlanePoint {
  double x = 0.0, y = 1.0;

  HalfPlanePoint() = default;
  HalfPlanePoint(double re, double im) : x(re), y(im) {
    if (!(y > 0.0)) throw std::domain_error("HalfPlanePoint: y must be positive");
  }
  explicit HalfPlanePoint(cplx w) : HalfPlanePoint(w.real(), w.imag()) {}

  cplx z() const { return {x, y}; }
};

}  // namespace hasv
