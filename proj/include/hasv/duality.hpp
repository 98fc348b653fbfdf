// Conormal duality. nu(p) is the covector with nu(p)(p) = 1 and
// nu(p)|_{T_p H} = 0, computed by a 3x3 linear solve; R_3 is identified
// with R^3 through the standard inner product. The dual Cheng-Yau matrix
// satisfies h*_{nu(p)} = h_p^{-1} = A A^T for A = (f, y f_x, y f_y), and
// the dual fiber metric l* built from h* makes X -> -X^T an isometry:
// l*(-A^T, -B^T) = l(A, B).

#pragma once

#include <cmath>

#include "hasv/bundle.hpp"
#include "hasv/chart.hpp"
#include "hasv/cone.hpp"
#include "hasv/forms.hpp"
#include "hasv/linalg.hpp"
#include "hasv/types.hpp"

namespace hasv {

struct DualFrame {
  BlaschkeFrame frame;
  RVec3 nu{}, nu_x{}, nu_y{};
};

namespace detail {
inline RVec3 conormal_solve(const HalfPlanePoint& z) {
  const BlaschkeFrame fr = frame_at(z);
  const RMat3 rows = RMat3::from_rows(fr.f, fr.f_x, fr.f_y);
  return solve3(rows, RVec3{1.0, 0.0, 0.0});
}
}  // namespace detail

// nu plus nu_x, nu_y by central differences of the solve (five-point).
inline DualFrame conormal_at(const HalfPlanePoint& z, double step = 1e-5) {
  if (!(z.y - 2.0 * step > 0.0)) throw std::domain_error("conormal_at: stencil exits chart");
  DualFrame d;
  d.frame = frame_at(z);
  d.nu = detail::conormal_solve(z);
  const double c1 = 8.0 / (12.0 * step), c2 = 1.0 / (12.0 * step);
  d.nu_x = (detail::conormal_solve({z.x + step, z.y}) - detail::conormal_solve({z.x - step, z.y})) * c1 -
           (detail::conormal_solve({z.x + 2.0 * step, z.y}) - detail::conormal_solve({z.x - 2.0 * step, z.y})) * c2;
  d.nu_y = (detail::conormal_solve({z.x, z.y + step}) - detail::conormal_solve({z.x, z.y - step})) * c1 -
           (detail::conormal_solve({z.x, z.y + 2.0 * step}) - detail::conormal_solve({z.x, z.y - 2.0 * step})) * c2;
  return d;
}

// max violation of nu(f) = 1, nu(f_x) = nu(f_y) = 0 and the tangent-map
// pairings nu_x(f_x) = -e^psi, nu_x(f_y) = 0, nu_x(f) = 0 (same for nu_y),
// measured relative to the pairing scale max(1, e^psi).
inline double conormal_pairing_residual(const DualFrame& d) {
  const auto& fr = d.frame;
  const double epsi = fr.conformal_factor;
  const double scale = std::max(1.0, epsi);
  double r = 0.0;
  r = std::max(r, std::abs(dot(d.nu, fr.f) - 1.0));
  r = std::max(r, std::abs(dot(d.nu, fr.f_x)));
  r = std::max(r, std::abs(dot(d.nu, fr.f_y)));
  r = std::max(r, std::abs(dot(d.nu_x, fr.f_x) + epsi) / scale);
  r = std::max(r, std::abs(dot(d.nu_x, fr.f_y)) / scale);
  r = std::max(r, std::abs(dot(d.nu_x, fr.f)) / scale);
  r = std::max(r, std::abs(dot(d.nu_y, fr.f_x)) / scale);
  r = std::max(r, std::abs(dot(d.nu_y, fr.f_y) + epsi) / scale);
  r = std::max(r, std::abs(dot(d.nu_y, fr.f)) / scale);
  return r;
}

// || (nu; -e^{-psi/2} nu_x; -e^{-psi/2} nu_y) A - I ||
inline double conormal_row_stack_residual(const DualFrame& d) {
  const double y = d.frame.point.y;  // e^{-psi/2}
  const RMat3 rows = RMat3::from_rows(d.nu, -(d.nu_x * y), -(d.nu_y * y));
  return max_abs(rows * d.frame.orthonormal_columns() - RMat3::identity());
}

struct DualMetricResiduals {
  double h_star_vs_h_inv = 0.0;  // || h*(nu) - h^{-1} ||
  double aat_vs_h_inv = 0.0;     // || A A^T - h^{-1} ||
  double frame_identity = 0.0;   // || A^T h A - I ||
  double nu_level_set = 0.0;     // | sigma*(nu) - 1 |
};

inline DualMetricResiduals verify_dual_metric(const HalfPlanePoint& z, double step = 1e-5) {
  const DualFrame d = conormal_at(z, step);
  const ConePoint p = parametrize_hyperboloid(z);
  const ConePoint nu_pt(d.nu);  // the Lorentz cone is self-dual
  const MetricTensor3 h_inv = cheng_yau_metric_inverse(p);
  const MetricTensor3 h_star = cheng_yau_metric(nu_pt);
  const RMat3 a = d.frame.orthonormal_columns();
  DualMetricResiduals r;
  r.h_star_vs_h_inv = max_abs(h_star - h_inv);
  r.aat_vs_h_inv = max_abs(a * transpose(a) - h_inv);
  r.nu_level_set = std::abs(cheng_yau_potential(nu_pt) - 1.0);
  // A^T h A - I from the extended-precision frame Gram
  const RMat3 g = hyperboloid_frame_gram(z);
  const double y = z.y;
  RMat3 q;
  q(0, 0) = g(0, 0);
  q(0, 1) = q(1, 0) = y * g(0, 1);
  q(0, 2) = q(2, 0) = y * g(0, 2);
  q(1, 1) = y * y * g(1, 1);
  q(2, 2) = y * y * g(2, 2);
  q(1, 2) = q(2, 1) = y * y * g(1, 2);
  r.frame_identity = max_abs(q - RMat3::identity());
  return r;
}

// Fiber metric context on the dual side: the Cheng-Yau matrix evaluated at
// nu(f(z)) in dual coordinates.
inline FiberMetricContext dual_fiber_context(const HalfPlanePoint& z) {
  const ConePoint nu_pt(detail::conormal_solve(z));
  return fiber_context_at_point(z, nu_pt);
}

// | l*(-A^T, -B^T) - l(A, B) | / max(1, |l(A,B)|)
inline double dual_fiber_metric_isometry(const HalfPlanePoint& z, const RMat3& a, const RMat3& b) {
  const double l = fiber_metric(fiber_context(z), a, b);
  const double ls = fiber_metric(dual_fiber_context(z), -transpose(a), -transpose(b));
  return std::abs(ls - l) / std::max(1.0, std::abs(l));
}

// tau_* on forms: sigma tensor phi -> sigma tensor (-phi^T) coefficientwise.
inline LieValuedOneForm dual_transport(const LieValuedOneForm& om) {
  auto cdz = om.coeff_dz;
  auto cdzb = om.coeff_dzbar;
  return {[cdz](const HalfPlanePoint& w) { return -transpose(cdz(w)); },
          [cdzb](const HalfPlanePoint& w) { return -transpose(cdzb(w)); }};
}

// d and delta* residuals of the transported harmonic family at z, where
// delta* is built from l* (the Cheng-Yau matrix at the conormal image).
inline HarmonicityResiduals dual_transport_residuals(const Polynomial& phi, const HalfPlanePoint& z,
                                                     double step) {
  return detail::family_residuals(phi, z, step, MetricSide::dual);
}

// Pointwise pairing-preservation: the Loftin integrand of the transported
// pair under l* equals the integrand of the original pair under l.
// Residual is relative to max(1, |integrand|).
inline double pairing_preservation_residual(const Polynomial& phi, const Polynomial& psi,
                                            const HalfPlanePoint& z) {
  const cplx prod = 2.0 * phi(z.z()) * std::conj(psi(z.z()));
  const CMat3 t = holomorphic_tangent_matrix(z.z());
  const cplx l = fiber_metric_complex(fiber_context(z), t, t);
  const cplx ls = fiber_metric_complex(dual_fiber_context(z), -transpose(t), -transpose(t));
  const double lhs = (prod * l).real();
  const double rhs = (prod * ls).real();
  return std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs));
}

}  // namespace hasv
