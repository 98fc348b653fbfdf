// The fiber metric l = h (x) h* on sl(3,R) and its sesquilinear extension
// to sl(3,C). Under the standard identification A = sum A_ij e_i (x) e^j,
//
//   l_p(A, B) = tr(A^T h B h^{-1}),      l_p(A, B) = tr(A^T h conj(B) h^{-1})
//
// with h the Cheng-Yau matrix at p. This is the realization that reproduces
// the evaluated pairing constants downstream (the 4/y^2 sharp coefficients,
// the 16 y^2 norm, the factor 32); the transposed-index variant
// tr(A^T h^{-1} B h) swaps the conformal weights and does not.
//
// Internally the trace is evaluated through the Cholesky factor h = L L^T
// as the Frobenius pairing of L^T A L^{-T} and L^T B L^{-T}, which is the
// same number but keeps rounding proportional to sqrt(cond h) instead of
// cond h far from the apex.

#pragma once

#include <cmath>

#include "hasv/chart.hpp"
#include "hasv/cone.hpp"
#include "hasv/linalg.hpp"
#include "hasv/rep.hpp"
#include "hasv/types.hpp"

namespace hasv {

struct FiberMetricContext {
  HalfPlanePoint z;
  ConePoint p;
  MetricTensor3 h, h_inv;
  RMat3 chol, chol_inv;  // h = chol chol^T
};

inline FiberMetricContext fiber_context_at_point(const HalfPlanePoint& z, const ConePoint& p) {
  FiberMetricContext ctx;
  ctx.z = z;
  ctx.p = p;
  ctx.h = cheng_yau_metric(p);
  ctx.h_inv = cheng_yau_metric_inverse(p);
  ctx.chol = cholesky(ctx.h);
  ctx.chol_inv = lower_tri_inverse(ctx.chol);
  return ctx;
}

inline FiberMetricContext fiber_context(const HalfPlanePoint& z) {
  return fiber_context_at_point(z, parametrize_hyperboloid(z));
}

namespace detail {
// X -> L^T X L^{-T}; Frobenius pairings of transported matrices realize l
inline RMat3 l_transport(const FiberMetricContext& ctx, const RMat3& x) {
  return transpose(ctx.chol) * x * transpose(ctx.chol_inv);
}
inline CMat3 l_transport(const FiberMetricContext& ctx, const CMat3& x) {
  return to_complex(transpose(ctx.chol)) * x * to_complex(transpose(ctx.chol_inv));
}
}  // namespace detail

inline double fiber_metric(const FiberMetricContext& ctx, const RMat3& a, const RMat3& b) {
  const RMat3 at = detail::l_transport(ctx, a);
  const RMat3 bt = detail::l_transport(ctx, b);
  double s = 0.0;
  for (int k = 0; k < 9; ++k) s += at.a[static_cast<std::size_t>(k)] * bt.a[static_cast<std::size_t>(k)];
  return s;
}

// conjugate-linear in the second argument; restricts to fiber_metric on
// real arguments
inline cplx fiber_metric_complex(const FiberMetricContext& ctx, const CMat3& a, const CMat3& b) {
  const CMat3 at = detail::l_transport(ctx, a);
  const CMat3 bt = detail::l_transport(ctx, b);
  cplx s = 0.0;
  for (int k = 0; k < 9; ++k)
    s += at.a[static_cast<std::size_t>(k)] * std::conj(bt.a[static_cast<std::size_t>(k)]);
  return s;
}

// Phi([[-z, z^2], [-1, z]]) = z^2 E1 - E3 - 2z E2, the sl(3,C) value whose
// l-norm squared is 16 y^2.
inline CMat3 holomorphic_tangent_matrix(cplx z) {
  const cplx z2 = z * z;
  CMat3 m;
  m(0, 1) = -z2 - 1.0;
  m(0, 2) = z2 - 1.0;
  m(1, 0) = z2 + 1.0;
  m(1, 2) = -2.0 * z;
  m(2, 0) = z2 - 1.0;
  m(2, 1) = -2.0 * z;
  return m;
}

// Gram matrix of the frame (f, f_x, f_y) in the Cheng-Yau metric at f(z),
// accumulated in long double: the metric entries grow like x3(z)^2 and the
// frame like x3(z), so a double-precision contraction leaves ~1e-9 noise at
// the sampling-region corner, right at the tolerance of the splitting
// checks. Expected value: diag(1, 1/y^2, 1/y^2).
inline RMat3 hyperboloid_frame_gram(const HalfPlanePoint& z) {
  using ld = long double;
  const ld x = static_cast<ld>(z.x), y = static_cast<ld>(z.y);
  const ld r2 = x * x + y * y;
  const Vec3<ld> f{x / y, (r2 - 1) / (2 * y), (r2 + 1) / (2 * y)};
  const Vec3<ld> fx{1 / y, x / y, x / y};
  const Vec3<ld> fy{-x / (y * y), (y * y - x * x + 1) / (2 * y * y),
                    (y * y - x * x - 1) / (2 * y * y)};
  const ld t = f[2] * f[2] - f[0] * f[0] - f[1] * f[1];
  Mat3<ld> h;
  h(0, 0) = 2 * f[0] * f[0] + t;
  h(1, 1) = 2 * f[1] * f[1] + t;
  h(2, 2) = 2 * f[2] * f[2] - t;
  h(0, 1) = h(1, 0) = 2 * f[0] * f[1];
  h(0, 2) = h(2, 0) = -2 * f[0] * f[2];
  h(1, 2) = h(2, 1) = -2 * f[1] * f[2];
  const ld s = 1 / (t * t);
  const Vec3<ld> frame[3] = {f, fx, fy};
  RMat3 g;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) g(i, j) = static_cast<double>(dot(frame[i], h * frame[j]) * s);
  return g;
}

// Cheng-Yau matrix and its inverse written directly in half-plane
// coordinates through p = f(z); used as an independent route against the
// ConePoint formula.
inline MetricTensor3 halfplane_cheng_yau(const HalfPlanePoint& z) {
  const double x = z.x, y = z.y;
  const double y2 = y * y;
  const double r2 = x * x + y2;
  MetricTensor3 h;
  h(0, 0) = 2.0 * x * x / y2 + 1.0;
  h(0, 1) = h(1, 0) = x * (r2 - 1.0) / y2;
  h(0, 2) = h(2, 0) = -x * (r2 + 1.0) / y2;
  h(1, 1) = (r2 - 1.0) * (r2 - 1.0) / (2.0 * y2) + 1.0;
  h(1, 2) = h(2, 1) = -(r2 - 1.0) * (r2 + 1.0) / (2.0 * y2);
  h(2, 2) = (r2 + 1.0) * (r2 + 1.0) / (2.0 * y2) - 1.0;
  return h;
}

inline MetricTensor3 halfplane_cheng_yau_inverse(const HalfPlanePoint& z) {
  MetricTensor3 h = halfplane_cheng_yau(z);
  h(0, 2) = h(2, 0) = -h(0, 2);
  h(1, 2) = h(2, 1) = -h(1, 2);
  return h;
}

}  // namespace hasv
