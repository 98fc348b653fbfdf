// The forward Lorentz cone C = {x3^2 > x1^2 + x2^2, x3 > 0}.
//
// Its characteristic function is k(x) = t^{-3/2} with t = x3^2 - x1^2 - x2^2,
// which is also the solution sigma of the cone Monge-Ampere equation
// det((1/3) Hess log sigma) = sigma^2. The Cheng-Yau metric is
// h = (1/3) Hess(log sigma) = -(1/2) Hess(log t), with the closed form
//
//        1  ( 2 x1^2 + t   2 x1 x2     -2 x1 x3  )
//  h = ----- ( 2 x1 x2     2 x2^2 + t  -2 x2 x3  )
//       t^2  ( -2 x1 x3    -2 x2 x3    2 x3^2 - t)
//
// and the Koszul-Vinberg metric Hess(log k) is exactly 3h.

#pragma once

#include <cmath>

#include "hasv/linalg.hpp"
#include "hasv/types.hpp"

namespace hasv {

// MetricTensor3 values are symmetric positive definite by construction on
// the cone; tests probe both properties.
using MetricTensor3 = RMat3;

inline double characteristic_function(const ConePoint& p) {
  return std::pow(p.gap(), -1.5);
}

// sigma = k on the Lorentz cone.
inline double cheng_yau_potential(const ConePoint& p) { return characteristic_function(p); }

// Gradient of (1/3) log sigma = -(1/2) log t. Used by the finite-difference
// Hessian cross-check, which differences this gradient once instead of the
// potential twice (double differencing at step 1e-5 sits below the double
// precision noise floor).
inline RVec3 cheng_yau_log_gradient(const ConePoint& p) {
  const double t = p.gap();
  return {p.x1 / t, p.x2 / t, -p.x3 / t};
}

inline MetricTensor3 cheng_yau_metric(const ConePoint& p) {
  const double t = p.gap();
  const double s = 1.0 / (t * t);
  MetricTensor3 h;
  h(0, 0) = (2.0 * p.x1 * p.x1 + t) * s;
  h(1, 1) = (2.0 * p.x2 * p.x2 + t) * s;
  h(2, 2) = (2.0 * p.x3 * p.x3 - t) * s;
  h(0, 1) = h(1, 0) = 2.0 * p.x1 * p.x2 * s;
  h(0, 2) = h(2, 0) = -2.0 * p.x1 * p.x3 * s;
  h(1, 2) = h(2, 1) = -2.0 * p.x2 * p.x3 * s;
  return h;
}

// h^{-1} = 2 p p^T - t eta in closed form: with w = eta p one has
// t^2 h = 2 w w^T - t eta and (2 w w^T - t eta)(2 p p^T - t eta) = t^2 I.
// Far from the apex this is far better conditioned than inverting h.
inline MetricTensor3 cheng_yau_metric_inverse(const ConePoint& p) {
  const double t = p.gap();
  MetricTensor3 m;
  m(0, 0) = 2.0 * p.x1 * p.x1 + t;
  m(1, 1) = 2.0 * p.x2 * p.x2 + t;
  m(2, 2) = 2.0 * p.x3 * p.x3 - t;
  m(0, 1) = m(1, 0) = 2.0 * p.x1 * p.x2;
  m(0, 2) = m(2, 0) = 2.0 * p.x1 * p.x3;
  m(1, 2) = m(2, 1) = 2.0 * p.x2 * p.x3;
  return m;
}

inline MetricTensor3 koszul_vinberg_metric(const ConePoint& p) {
  return cheng_yau_metric(p) * 3.0;
}

// m: Omega -> C, [p] -> k(p)^{1/3} p. Lifts (t1,t2) to (t1,t2,1) and scales
// onto the level set k = 1, i.e. the hyperboloid t = 1.
inline ConePoint normalize_to_level_set(const DiskPoint& q) {
  const double w = 1.0 - q.t1 * q.t1 - q.t2 * q.t2;
  const double s = 1.0 / std::sqrt(w);
  return ConePoint(q.t1 * s, q.t2 * s, s);
}

}  // namespace hasv
