// Charts on the hyperboloid H = {x3^2 - x1^2 - x2^2 = 1}:
//
//   F  : Klein disk -> upper half-plane,
//        F(t1,t2) = t1/(1-t2) + i sqrt(1-t1^2-t2^2)/(1-t2)
//   f  : upper half-plane -> H,
//        f(z) = ( x/y, (x^2+y^2-1)/2y, (x^2+y^2+1)/2y )
//
// f is a conformal parametrisation: the induced (Blaschke) metric is
// (1/y^2)|dz|^2, and (f, y f_x, y f_y) is orthonormal for the Cheng-Yau
// metric. First and second derivatives of f are hand-derived closed forms;
// the finite-difference path is kept as an independent cross-check.

#pragma once

#include <algorithm>
#include <cmath>

#include "hasv/cone.hpp"
#include "hasv/linalg.hpp"
#include "hasv/types.hpp"

namespace hasv {

inline HalfPlanePoint klein_to_halfplane(const DiskPoint& q) {
  const double w = 1.0 - q.t1 * q.t1 - q.t2 * q.t2;
  const double d = 1.0 - q.t2;
  return HalfPlanePoint(q.t1 / d, std::sqrt(w) / d);
}

inline DiskPoint halfplane_to_klein(const HalfPlanePoint& z) {
  const double s = z.x * z.x + z.y * z.y + 1.0;
  return DiskPoint(2.0 * z.x / s, 1.0 - 2.0 / s);
}

// Jacobian d(x,y)/d(t1,t2) of F, rows (dx, dy).
inline RMat2 klein_jacobian(const DiskPoint& q) {
  const double w = 1.0 - q.t1 * q.t1 - q.t2 * q.t2;
  const double rw = std::sqrt(w);
  const double d = 1.0 - q.t2;
  RMat2 j;
  j.a = 1.0 / d;
  j.b = q.t1 / (d * d);
  j.c = -q.t1 / (d * rw);
  j.d = (1.0 - q.t1 * q.t1 - q.t2) / (d * d * rw);
  return j;
}

// Blaschke metric -(1/u) u_ij dt^i dt^j on the disk, u = -sqrt(1-t1^2-t2^2).
inline RMat2 blaschke_metric_klein(const DiskPoint& q) {
  const double w = 1.0 - q.t1 * q.t1 - q.t2 * q.t2;
  const double s = 1.0 / (w * w);
  RMat2 g;
  g.a = (1.0 - q.t2 * q.t2) * s;
  g.b = g.c = q.t1 * q.t2 * s;
  g.d = (1.0 - q.t1 * q.t1) * s;
  return g;
}

inline ConePoint parametrize_hyperboloid(const HalfPlanePoint& z) {
  const double r2 = z.x * z.x + z.y * z.y;
  return ConePoint(z.x / z.y, (r2 - 1.0) / (2.0 * z.y), (r2 + 1.0) / (2.0 * z.y));
}

// f with its first derivatives and the conformal factor e^psi = 1/y^2.
struct BlaschkeFrame {
  HalfPlanePoint point;
  double conformal_factor = 1.0;  // e^psi
  RVec3 f{}, f_x{}, f_y{};

  // columns (f, y f_x, y f_y); satisfies A^T h A = I
  RMat3 orthonormal_columns() const {
    return RMat3::from_cols(f, f_x * point.y, f_y * point.y);
  }
};

inline BlaschkeFrame frame_at(const HalfPlanePoint& z) {
  const double x = z.x, y = z.y;
  const double r2 = x * x + y * y;
  BlaschkeFrame fr;
  fr.point = z;
  fr.conformal_factor = 1.0 / (y * y);
  fr.f = {x / y, (r2 - 1.0) / (2.0 * y), (r2 + 1.0) / (2.0 * y)};
  fr.f_x = {1.0 / y, x / y, x / y};
  fr.f_y = {-x / (y * y), (y * y - x * x + 1.0) / (2.0 * y * y), (y * y - x * x - 1.0) / (2.0 * y * y)};
  return fr;
}

struct SecondDerivatives {
  RVec3 f_xx{}, f_xy{}, f_yy{};
};

inline SecondDerivatives second_derivatives_at(const HalfPlanePoint& z) {
  const double x = z.x, y = z.y;
  const double y2 = y * y, y3 = y2 * y;
  SecondDerivatives d;
  d.f_xx = {0.0, 1.0 / y, 1.0 / y};
  d.f_xy = {-1.0 / y2, -x / y2, -x / y2};
  d.f_yy = {2.0 * x / y3, (x * x - 1.0) / y3, (x * x + 1.0) / y3};
  return d;
}

enum class DerivativePath { analytic, finite_difference };

// Residual of D_X Y = nabla_X Y + g(X,Y) f over (X,Y) in {dx,dy}^2, with
// nabla the Levi-Civita connection of (1/y^2)|dz|^2:
//   Gamma^y_xx = 1/y,  Gamma^x_xy = -1/y,  Gamma^y_yy = -1/y.
// A vanishing residual certifies the structure equation with zero Pick form.
inline double structure_equation_residual(const HalfPlanePoint& z,
                                          DerivativePath path = DerivativePath::analytic,
                                          double step = 1e-5) {
  const BlaschkeFrame fr = frame_at(z);
  const double y = z.y;

  SecondDerivatives d;
  if (path == DerivativePath::analytic) {
    d = second_derivatives_at(z);
  } else {
    if (!(z.y - 2.0 * step > 0.0)) throw std::domain_error("structure_equation_residual: stencil exits chart");
    // difference the closed-form first derivatives once, five-point stencil
    const BlaschkeFrame xp = frame_at({z.x + step, z.y});
    const BlaschkeFrame xm = frame_at({z.x - step, z.y});
    const BlaschkeFrame xpp = frame_at({z.x + 2.0 * step, z.y});
    const BlaschkeFrame xmm = frame_at({z.x - 2.0 * step, z.y});
    const BlaschkeFrame yp = frame_at({z.x, z.y + step});
    const BlaschkeFrame ym = frame_at({z.x, z.y - step});
    const BlaschkeFrame ypp = frame_at({z.x, z.y + 2.0 * step});
    const BlaschkeFrame ymm = frame_at({z.x, z.y - 2.0 * step});
    const double c1 = 8.0 / (12.0 * step), c2 = 1.0 / (12.0 * step);
    d.f_xx = (xp.f_x - xm.f_x) * c1 - (xpp.f_x - xmm.f_x) * c2;
    d.f_xy = (yp.f_x - ym.f_x) * c1 - (ypp.f_x - ymm.f_x) * c2;
    d.f_yy = (yp.f_y - ym.f_y) * c1 - (ypp.f_y - ymm.f_y) * c2;
  }

  const double epsi = fr.conformal_factor;
  const RVec3 r_xx = d.f_xx - fr.f_y * (1.0 / y) - fr.f * epsi;
  const RVec3 r_xy = d.f_xy + fr.f_x * (1.0 / y);
  const RVec3 r_yy = d.f_yy + fr.f_y * (1.0 / y) - fr.f * epsi;
  return std::max({norm(r_xx), norm(r_xy), norm(r_yy)});
}

}  // namespace hasv
