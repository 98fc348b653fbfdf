// The irreducible embedding Phi of PSL(2,R) into SL(3,R), with image
// SO(2,1) for the form eta = diag(-1,-1,1), and its Lie algebra version
// sl(2,R) -> so(2,1). The parametrisation f of the hyperboloid intertwines
// the Moebius action on the half-plane with Phi: f(A.z) = Phi(A) f(z).

#pragma once

#include <cmath>
#include <stdexcept>

#include "hasv/chart.hpp"
#include "hasv/linalg.hpp"
#include "hasv/types.hpp"

namespace hasv {

using GroupElement3 = RMat3;

// [[a,b],[c,-a]]
struct Sl2Element {
  double a = 0.0, b = 0.0, c = 0.0;
};

inline RMat3 eta() {
  RMat3 e;
  e(0, 0) = -1.0;
  e(1, 1) = -1.0;
  e(2, 2) = 1.0;
  return e;
}

inline GroupElement3 phi_group(const RMat2& m) {
  if (std::abs(det(m) - 1.0) > 1e-9) throw std::invalid_argument("phi_group: input must have det 1");
  const double a = m.a, b = m.b, c = m.c, d = m.d;
  GroupElement3 g;
  g(0, 0) = a * d + b * c;
  g(0, 1) = a * c - b * d;
  g(0, 2) = a * c + b * d;
  g(1, 0) = a * b - c * d;
  g(1, 1) = 0.5 * (a * a - b * b - c * c + d * d);
  g(1, 2) = 0.5 * (a * a + b * b - c * c - d * d);
  g(2, 0) = a * b + c * d;
  g(2, 1) = 0.5 * (a * a - b * b + c * c - d * d);
  g(2, 2) = 0.5 * (a * a + b * b + c * c + d * d);
  return g;
}

inline RMat3 phi_algebra(const Sl2Element& x) {
  RMat3 m;
  m(0, 1) = x.c - x.b;
  m(0, 2) = x.c + x.b;
  m(1, 0) = x.b - x.c;
  m(1, 2) = 2.0 * x.a;
  m(2, 0) = x.b + x.c;
  m(2, 1) = 2.0 * x.a;
  return m;
}

// E1 = Phi(e), E2 = Phi(h/2), E3 = Phi(f) for the standard sl2 triple.
inline const RMat3& basis_e1() {
  static const RMat3 m = phi_algebra({0.0, 1.0, 0.0});
  return m;
}
inline const RMat3& basis_e2() {
  static const RMat3 m = phi_algebra({0.5, 0.0, 0.0});
  return m;
}
inline const RMat3& basis_e3() {
  static const RMat3 m = phi_algebra({0.0, 0.0, 1.0});
  return m;
}

// exp of [[a,b],[c,-a]] via Cayley-Hamilton: X^2 = (a^2+bc) I.
inline RMat2 exp_sl2(const Sl2Element& x) {
  const double mu2 = x.a * x.a + x.b * x.c;
  double ch, sh;  // cosh(mu), sinh(mu)/mu for mu^2 = mu2 of either sign
  if (mu2 > 1e-24) {
    const double mu = std::sqrt(mu2);
    ch = std::cosh(mu);
    sh = std::sinh(mu) / mu;
  } else if (mu2 < -1e-24) {
    const double om = std::sqrt(-mu2);
    ch = std::cos(om);
    sh = std::sin(om) / om;
  } else {
    ch = 1.0;
    sh = 1.0;
  }
  return {ch + sh * x.a, sh * x.b, sh * x.c, ch - sh * x.a};
}

inline cplx mobius(const RMat2& m, cplx z) {
  const cplx den = m.c * z + m.d;
  if (std::abs(den) < 1e-12) throw std::domain_error("mobius: cz + d vanishes");
  return (m.a * z + m.b) / den;
}

// || M^T eta M - eta ||
inline double so21_defect(const RMat3& m) {
  return max_abs(transpose(m) * eta() * m - eta());
}

// |f(A.z) - Phi(A) f(z)| in R^3
inline double equivariance_residual(const RMat2& a, const HalfPlanePoint& z) {
  const cplx w = mobius(a, z.z());
  if (!(w.imag() > 1e-12)) throw std::domain_error("equivariance_residual: image leaves the chart guard");
  const RVec3 lhs = parametrize_hyperboloid(HalfPlanePoint(w)).vec();
  const RVec3 rhs = phi_group(a) * parametrize_hyperboloid(z).vec();
  return norm(lhs - rhs);
}

}  // namespace hasv
