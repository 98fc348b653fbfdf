// sl(3,C)-valued 1-forms on a half-plane chart, written as
// omega = C(z) dz + D(z) dzbar with matrix-valued coefficients.
//
// Operators:
//   * (Hodge star)  conformally invariant on 1-forms, extended to complex
//                   coefficients antilinearly: *(phi dz) = i conj(phi) dzbar,
//                   *(psi dzbar) = -i conj(psi) dz
//   sharp           v -> sum_i l(v, E_i) E_i^* over a fixed basis of sl(3,R)
//   d               numeric (central differences); everything else is closed
//                   form, so d residuals carry only the differencing error
//   delta           -(sharp)^{-1} *^{-1} d * (sharp); since * and sharp are
//                   pointwise invertible, delta omega = 0 iff d*(sharp omega)
//                   vanishes, which is what codifferential_residual measures
//
// Basis note: E1, E2, E3 are the so(2,1) images of the standard sl2 triple,
// E4 = e12, E5 = e13, E8 = e23. The remaining two slots are completed with
// the diagonal traceless matrices E6 = e11 - e22, E7 = e22 - e33; only
// E1..E5 and E8 coordinates enter the closed-form sharp expansions.

#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "hasv/bundle.hpp"
#include "hasv/linalg.hpp"
#include "hasv/rep.hpp"
#include "hasv/types.hpp"

namespace hasv {

// ---------------------------------------------------------------------------
// Polynomial test family for holomorphic quadratic differentials phi(z) dz^2.
// The representation is a coefficient list in z, so anti-holomorphic input
// is unrepresentable by construction.
// ---------------------------------------------------------------------------

struct Polynomial {
  std::vector<cplx> coeff;  // coeff[k] z^k

  Polynomial() = default;
  Polynomial(std::initializer_list<cplx> c) : coeff(c) {}
  explicit Polynomial(std::vector<cplx> c) : coeff(std::move(c)) {}

  cplx operator()(cplx z) const {
    cplx v = 0.0;
    for (std::size_t k = coeff.size(); k-- > 0;) v = v * z + coeff[k];
    return v;
  }
  int degree() const { return static_cast<int>(coeff.size()) - 1; }
};

using QuadraticDifferentialSample = Polynomial;

// ---------------------------------------------------------------------------
// Basis of sl(3,R) and coordinates
// ---------------------------------------------------------------------------

inline const std::array<RMat3, 8>& sl3_basis() {
  static const std::array<RMat3, 8> basis = [] {
    std::array<RMat3, 8> b{};
    b[0] = basis_e1();
    b[1] = basis_e2();
    b[2] = basis_e3();
    b[3](0, 1) = 1.0;                      // E4 = e12
    b[4](0, 2) = 1.0;                      // E5 = e13
    b[5](0, 0) = 1.0; b[5](1, 1) = -1.0;   // E6
    b[6](1, 1) = 1.0; b[6](2, 2) = -1.0;   // E7
    b[7](1, 2) = 1.0;                      // E8 = e23
    return b;
  }();
  return basis;
}

namespace detail {
inline const std::array<std::array<double, 8>, 8>& basis_frobenius_gram() {
  static const std::array<std::array<double, 8>, 8> g = [] {
    std::array<std::array<double, 8>, 8> m{};
    const auto& b = sl3_basis();
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j) {
        double s = 0.0;
        for (int k = 0; k < 9; ++k)
          s += b[static_cast<std::size_t>(i)].a[static_cast<std::size_t>(k)] *
               b[static_cast<std::size_t>(j)].a[static_cast<std::size_t>(k)];
        m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = s;
      }
    return m;
  }();
  return g;
}
}  // namespace detail

// Coordinates of a traceless matrix over sl3_basis(), via the Frobenius
// normal equations (exact on the span).
template <class T>
inline std::array<T, 8> basis_coordinates(const Mat3<T>& m) {
  const auto& b = sl3_basis();
  std::array<T, 8> rhs{};
  for (int i = 0; i < 8; ++i) {
    T s{};
    for (int k = 0; k < 9; ++k)
      s += m.a[static_cast<std::size_t>(k)] * b[static_cast<std::size_t>(i)].a[static_cast<std::size_t>(k)];
    rhs[static_cast<std::size_t>(i)] = s;
  }
  return solve_dense<8, T>(detail::basis_frobenius_gram(), rhs);
}

template <class T>
inline Mat3<T> matrix_from_coordinates(const std::array<T, 8>& c) {
  Mat3<T> m;
  const auto& b = sl3_basis();
  for (int i = 0; i < 8; ++i)
    for (int k = 0; k < 9; ++k)
      m.a[static_cast<std::size_t>(k)] += c[static_cast<std::size_t>(i)] *
                                          b[static_cast<std::size_t>(i)].a[static_cast<std::size_t>(k)];
  return m;
}

// ---------------------------------------------------------------------------
// One-forms
// ---------------------------------------------------------------------------

struct LieValuedOneForm {
  std::function<CMat3(const HalfPlanePoint&)> coeff_dz;
  std::function<CMat3(const HalfPlanePoint&)> coeff_dzbar;

  static LieValuedOneForm zero() {
    return {[](const HalfPlanePoint&) { return CMat3::zero(); },
            [](const HalfPlanePoint&) { return CMat3::zero(); }};
  }
  static LieValuedOneForm dz_form(std::function<CMat3(const HalfPlanePoint&)> c) {
    return {std::move(c), [](const HalfPlanePoint&) { return CMat3::zero(); }};
  }
  // a dx + b dy with constant matrix coefficients
  static LieValuedOneForm dx_dy_form(const CMat3& cx, const CMat3& cy) {
    const cplx half(0.5, 0.0), mihalf(0.0, -0.5);
    CMat3 cdz = cx * half + cy * mihalf;         // (cx - i cy)/2
    CMat3 cdzb = cx * half - cy * mihalf;        // (cx + i cy)/2
    return {[cdz](const HalfPlanePoint&) { return cdz; },
            [cdzb](const HalfPlanePoint&) { return cdzb; }};
  }
};

// phi(z) dz tensor Phi([[-z, z^2], [-1, z]])
inline LieValuedOneForm harmonic_family(const Polynomial& phi) {
  return LieValuedOneForm::dz_form([phi](const HalfPlanePoint& w) {
    return holomorphic_tangent_matrix(w.z()) * phi(w.z());
  });
}

inline LieValuedOneForm hodge_star_oneform(const LieValuedOneForm& om) {
  auto cdz = om.coeff_dz;
  auto cdzb = om.coeff_dzbar;
  const cplx i_unit(0.0, 1.0);
  return {[cdzb, i_unit](const HalfPlanePoint& w) { return conjugate(cdzb(w)) * (-i_unit); },
          [cdz, i_unit](const HalfPlanePoint& w) { return conjugate(cdz(w)) * i_unit; }};
}

// ---------------------------------------------------------------------------
// sharp
// ---------------------------------------------------------------------------

// coefficients l(A, E_i) of sharp(A) over the dual basis; complex-linear in A
// (the E_i are real, so the sesquilinear and linear extensions agree here)
inline std::array<cplx, 8> sharp_coefficients(const FiberMetricContext& ctx, const CMat3& a) {
  const CMat3 at = detail::l_transport(ctx, a);
  std::array<cplx, 8> out{};
  const auto& basis = sl3_basis();
  for (int i = 0; i < 8; ++i) {
    const RMat3 bt = detail::l_transport(ctx, basis[static_cast<std::size_t>(i)]);
    cplx s = 0.0;
    for (int k = 0; k < 9; ++k) s += at.a[static_cast<std::size_t>(k)] * bt.a[static_cast<std::size_t>(k)];
    out[static_cast<std::size_t>(i)] = s;
  }
  return out;
}

inline std::array<double, 8> sharp_coefficients(const FiberMetricContext& ctx, const RMat3& a) {
  std::array<double, 8> out{};
  const auto& basis = sl3_basis();
  for (int i = 0; i < 8; ++i) out[static_cast<std::size_t>(i)] = fiber_metric(ctx, a, basis[static_cast<std::size_t>(i)]);
  return out;
}

// Gram matrix l(E_i, E_j) at a chart point.
inline std::array<std::array<double, 8>, 8> sharp_gram(const FiberMetricContext& ctx) {
  std::array<std::array<double, 8>, 8> g{};
  const auto& basis = sl3_basis();
  std::array<RMat3, 8> bt;
  for (int i = 0; i < 8; ++i) bt[static_cast<std::size_t>(i)] = detail::l_transport(ctx, basis[static_cast<std::size_t>(i)]);
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) {
      double s = 0.0;
      for (int k = 0; k < 9; ++k)
        s += bt[static_cast<std::size_t>(i)].a[static_cast<std::size_t>(k)] *
             bt[static_cast<std::size_t>(j)].a[static_cast<std::size_t>(k)];
      g[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = s;
    }
  return g;
}

// sharp^{-1}: recover A from the coefficient vector by solving the Gram
// system, diagonally equilibrated (the raw Gram carries the squared
// conformal weights of the basis and is needlessly ill-scaled), with one
// step of extended-precision iterative refinement.
inline CMat3 sharp_invert(const FiberMetricContext& ctx, const std::array<cplx, 8>& coeff) {
  const auto g0 = sharp_gram(ctx);
  auto g = g0;
  std::array<double, 8> d{};
  for (std::size_t i = 0; i < 8; ++i) d[i] = std::sqrt(g[i][i]);
  std::array<cplx, 8> rhs{};
  for (std::size_t i = 0; i < 8; ++i) {
    rhs[i] = coeff[i] / d[i];
    for (std::size_t j = 0; j < 8; ++j) g[i][j] /= d[i] * d[j];
  }
  auto scaled = solve_dense<8, cplx>(g, rhs);
  std::array<cplx, 8> coords{};
  for (std::size_t i = 0; i < 8; ++i) coords[i] = scaled[i] / d[i];

  using cld = std::complex<long double>;
  std::array<cplx, 8> res{};
  for (std::size_t i = 0; i < 8; ++i) {
    cld acc(coeff[i].real(), coeff[i].imag());
    for (std::size_t j = 0; j < 8; ++j)
      acc -= static_cast<long double>(g0[i][j]) * cld(coords[j].real(), coords[j].imag());
    res[i] = cplx(static_cast<double>(acc.real()), static_cast<double>(acc.imag())) / d[i];
  }
  const auto corr = solve_dense<8, cplx>(g, res);
  for (std::size_t i = 0; i < 8; ++i) coords[i] += corr[i] / d[i];
  return matrix_from_coordinates(coords);
}

// Closed-form expansions of sharp(E1), sharp(E2), sharp(E3) at f(z) in the
// dual coordinates (E1*,...,E8*); the E6*, E7* slots vanish identically.
inline std::array<double, 8> sharp_e1_closed(const HalfPlanePoint& z) {
  const double x = z.x, y2 = z.y * z.y;
  return {4.0 / y2, 4.0 * x / y2, -4.0 * x * x / y2,
          (-1.0 - x * x) / y2, (1.0 - x * x) / y2, 0.0, 0.0, 2.0 * x / y2};
}

inline std::array<double, 8> sharp_e2_closed(const HalfPlanePoint& z) {
  const double x = z.x, y2 = z.y * z.y;
  const double r2 = x * x + y2;
  return {4.0 * x / y2, 4.0 * (x * x + 0.5 * y2) / y2, -4.0 * x * r2 / y2,
          (-x * x * x - x - x * y2) / y2, (-x * x * x + x - x * y2) / y2, 0.0, 0.0,
          2.0 * x * x / y2 + 1.0};
}

// The E8* coefficient here is -2x(x^2+y^2)/y^2; the factor (x^2+y^2) is
// required both by the definitional trace computation and by the downstream
// cancellation to -2z phi(z), whose printed source drops it.
inline std::array<double, 8> sharp_e3_closed(const HalfPlanePoint& z) {
  const double x = z.x, y2 = z.y * z.y;
  const double r2 = x * x + y2;
  return {-4.0 * x * x / y2, -4.0 * x * r2 / y2, 4.0 * r2 * r2 / y2,
          (r2 * r2 + x * x) / y2, (r2 * r2 - x * x) / y2, 0.0, 0.0, -2.0 * x * r2 / y2};
}

// ---------------------------------------------------------------------------
// Numeric exterior derivative and the codifferential residual
// ---------------------------------------------------------------------------

// dx dy coefficient of d omega at z: d_x(coeff_y) - d_y(coeff_x) by central
// differences (five-point fourth-order stencil, so the truncation error
// stays below the rounding floor even near y = y_min where the third
// derivatives of the coefficients blow up).
inline CMat3 exterior_derivative_numeric(const LieValuedOneForm& om, const HalfPlanePoint& z,
                                         double step) {
  if (!(z.y - 2.0 * step > 0.0)) throw std::domain_error("exterior_derivative_numeric: stencil exits chart");
  const cplx i_unit(0.0, 1.0);
  auto coeff_x = [&](const HalfPlanePoint& w) { return om.coeff_dz(w) + om.coeff_dzbar(w); };
  auto coeff_y = [&](const HalfPlanePoint& w) { return (om.coeff_dz(w) - om.coeff_dzbar(w)) * i_unit; };
  const cplx c1(8.0 / (12.0 * step)), c2(1.0 / (12.0 * step));
  const CMat3 dxy = (coeff_y({z.x + step, z.y}) - coeff_y({z.x - step, z.y})) * c1 -
                    (coeff_y({z.x + 2.0 * step, z.y}) - coeff_y({z.x - 2.0 * step, z.y})) * c2;
  const CMat3 dyx = (coeff_x({z.x, z.y + step}) - coeff_x({z.x, z.y - step})) * c1 -
                    (coeff_x({z.x, z.y + 2.0 * step}) - coeff_x({z.x, z.y - 2.0 * step})) * c2;
  return dxy - dyx;
}

using MetricProvider = std::function<FiberMetricContext(const HalfPlanePoint&)>;

namespace detail {
// x/y coefficients (in the 8 dual coordinates) of *(sharp omega) at w
inline std::pair<std::array<cplx, 8>, std::array<cplx, 8>> star_sharp_xy(
    const LieValuedOneForm& om, const HalfPlanePoint& w, const MetricProvider& metric) {
  const FiberMetricContext ctx = metric(w);
  const std::array<cplx, 8> a = sharp_coefficients(ctx, om.coeff_dz(w));
  const std::array<cplx, 8> b = sharp_coefficients(ctx, om.coeff_dzbar(w));
  const cplx i_unit(0.0, 1.0);
  std::pair<std::array<cplx, 8>, std::array<cplx, 8>> out;
  for (std::size_t i = 0; i < 8; ++i) {
    const cplx sdz = -i_unit * std::conj(b[i]);  // dz part of the starred form
    const cplx sdzb = i_unit * std::conj(a[i]);  // dzbar part
    out.first[i] = sdz + sdzb;
    out.second[i] = i_unit * (sdz - sdzb);
  }
  return out;
}
}  // namespace detail

// Euclidean norm over the 8 dual coordinates of the dx dy coefficient of
// d(*(sharp omega)) at z; zero iff delta omega = 0 at z.
inline double codifferential_residual(const LieValuedOneForm& om, const HalfPlanePoint& z,
                                      double step, const MetricProvider& metric) {
  if (!(z.y - 2.0 * step > 0.0)) throw std::domain_error("codifferential_residual: stencil exits chart");
  const auto xp = detail::star_sharp_xy(om, {z.x + step, z.y}, metric);
  const auto xm = detail::star_sharp_xy(om, {z.x - step, z.y}, metric);
  const auto xpp = detail::star_sharp_xy(om, {z.x + 2.0 * step, z.y}, metric);
  const auto xmm = detail::star_sharp_xy(om, {z.x - 2.0 * step, z.y}, metric);
  const auto yp = detail::star_sharp_xy(om, {z.x, z.y + step}, metric);
  const auto ym = detail::star_sharp_xy(om, {z.x, z.y - step}, metric);
  const auto ypp = detail::star_sharp_xy(om, {z.x, z.y + 2.0 * step}, metric);
  const auto ymm = detail::star_sharp_xy(om, {z.x, z.y - 2.0 * step}, metric);
  const double c1 = 8.0 / (12.0 * step), c2 = 1.0 / (12.0 * step);
  double s = 0.0;
  for (std::size_t i = 0; i < 8; ++i) {
    const cplx dxy = (xp.second[i] - xm.second[i]) * c1 - (xpp.second[i] - xmm.second[i]) * c2;
    const cplx dyx = (yp.first[i] - ym.first[i]) * c1 - (ypp.first[i] - ymm.first[i]) * c2;
    s += std::norm(dxy - dyx);
  }
  return std::sqrt(s);
}

inline double codifferential_residual(const LieValuedOneForm& om, const HalfPlanePoint& z,
                                      double step) {
  return codifferential_residual(om, z, step, [](const HalfPlanePoint& w) { return fiber_context(w); });
}

struct HarmonicityResiduals {
  double closed = 0.0;    // |d omega|
  double coclosed = 0.0;  // |d * sharp omega|
};

enum class MetricSide { primary, dual };

namespace detail {
// Extended-precision evaluation of the harmonic-family residuals.
//
// The differenced sharp components pass through h, whose conditioning
// reaches ~x3(z)^4 at the sampling-region corner; rounding jitter in their
// pointwise values, divided by the step, would swamp a 1e-6 tolerance in
// plain double (and barely miss in long double). Everything here is
// rational arithmetic -- the frame, the closed-form h and h^{-1}, the
// conormal solve, and the trace contractions -- so the evaluation runs in
// quad precision without needing any math-library support.
#if defined(__SIZEOF_FLOAT128__)
using Quad = __float128;
#else
using Quad = long double;
#endif

inline Quad quad_abs(Quad v) { return v < Quad(0) ? -v : v; }

struct QC {  // minimal complex in Quad
  Quad re{}, im{};
  QC() = default;
  QC(Quad r, Quad i) : re(r), im(i) {}
  QC operator+(const QC& o) const { return {re + o.re, im + o.im}; }
  QC operator-(const QC& o) const { return {re - o.re, im - o.im}; }
  QC operator*(const QC& o) const { return {re * o.re - im * o.im, re * o.im + im * o.re}; }
  QC operator*(Quad s) const { return {re * s, im * s}; }
  QC conj() const { return {re, -im}; }
  double norm2() const { return static_cast<double>(re * re + im * im); }
};

using QMat3 = Mat3<Quad>;
using QVec3 = Vec3<Quad>;

inline QVec3 quad_solve3(QMat3 m, QVec3 b) {
  for (int col = 0; col < 2; ++col) {
    int piv = col;
    for (int r = col + 1; r < 3; ++r)
      if (quad_abs(m(r, col)) > quad_abs(m(piv, col))) piv = r;
    if (piv != col) {
      for (int j = 0; j < 3; ++j) std::swap(m(col, j), m(piv, j));
      std::swap(b[col], b[piv]);
    }
    for (int r = col + 1; r < 3; ++r) {
      const Quad f = m(r, col) / m(col, col);
      for (int j = col; j < 3; ++j) m(r, j) -= f * m(col, j);
      b[r] -= f * b[col];
    }
  }
  QVec3 x;
  x[2] = b[2] / m(2, 2);
  x[1] = (b[1] - m(1, 2) * x[2]) / m(1, 1);
  x[0] = (b[0] - m(0, 1) * x[1] - m(0, 2) * x[2]) / m(0, 0);
  return x;
}

inline QMat3 quad_cheng_yau(const QVec3& v, bool inverse_form) {
  const Quad t = v[2] * v[2] - v[0] * v[0] - v[1] * v[1];
  const Quad s = inverse_form ? Quad(1) : Quad(1) / (t * t);
  const Quad sign = inverse_form ? Quad(1) : Quad(-1);
  QMat3 h;
  h(0, 0) = (2 * v[0] * v[0] + t) * s;
  h(1, 1) = (2 * v[1] * v[1] + t) * s;
  h(2, 2) = (2 * v[2] * v[2] - t) * s;
  h(0, 1) = h(1, 0) = 2 * v[0] * v[1] * s;
  h(0, 2) = h(2, 0) = sign * 2 * v[0] * v[2] * s;
  h(1, 2) = h(2, 1) = sign * 2 * v[1] * v[2] * s;
  return h;
}

// pairing tables at one chart point: g[m][i] = l(E_{m+1}, E_i) on the
// primary side, or tr(E_{m+1} H* E_i H*^{-1}) on the dual side (the
// transposed first argument that the transported coefficient needs)
struct QuadTable {
  std::array<std::array<QC, 8>, 3> g{};
  QC c[3];  // coordinates of phi(z) Phi(-z,z^2;-1,z) over E1, E2, E3
};

inline QuadTable quad_table_at(const Polynomial& phi, Quad x, Quad y, MetricSide side) {
  // frame and evaluation point
  const Quad r2 = x * x + y * y;
  const QVec3 f{x / y, (r2 - 1) / (2 * y), (r2 + 1) / (2 * y)};
  QVec3 p = f;
  if (side == MetricSide::dual) {
    const QVec3 fx{1 / y, x / y, x / y};
    const QVec3 fy{-x / (y * y), (y * y - x * x + 1) / (2 * y * y),
                   (y * y - x * x - 1) / (2 * y * y)};
    p = quad_solve3(QMat3::from_rows(f, fx, fy), QVec3{Quad(1), Quad(0), Quad(0)});
  }
  const QMat3 h = quad_cheng_yau(p, false);
  const QMat3 h_inv = quad_cheng_yau(p, true);

  QuadTable out;
  const auto& basis = sl3_basis();
  for (int i = 0; i < 8; ++i) {
    QMat3 e;
    for (int k = 0; k < 9; ++k)
      e.a[static_cast<std::size_t>(k)] =
          Quad(basis[static_cast<std::size_t>(i)].a[static_cast<std::size_t>(k)]);
    const QMat3 m = h * e * h_inv;
    for (int mm = 0; mm < 3; ++mm) {
      const RMat3& em = mm == 0 ? basis_e1() : (mm == 1 ? basis_e2() : basis_e3());
      Quad s = 0;
      for (int r = 0; r < 3; ++r)
        for (int cidx = 0; cidx < 3; ++cidx) {
          const double w = side == MetricSide::primary ? em(r, cidx) : em(cidx, r);
          if (w != 0.0) s += Quad(w) * m(r, cidx);
        }
      out.g[static_cast<std::size_t>(mm)][static_cast<std::size_t>(i)] = QC(s, 0);
    }
  }

  // phi(z) in quad, then coordinates z^2 phi, -2z phi, -phi
  const QC z(x, y);
  QC pv(0, 0);
  for (std::size_t k = phi.coeff.size(); k-- > 0;)
    pv = pv * z + QC(Quad(phi.coeff[k].real()), Quad(phi.coeff[k].imag()));
  out.c[0] = z * z * pv;
  out.c[1] = (z * QC(-2, 0)) * pv;
  out.c[2] = QC(-1, 0) * pv;
  return out;
}

// the 8 sharp components a_i(w) of the (transported) family, and the 3
// basis coordinates of its matrix coefficient
struct QuadPointEval {
  std::array<QC, 8> a{};
  QC c[3];
};

inline QuadPointEval quad_eval(const Polynomial& phi, Quad x, Quad y, MetricSide side) {
  const QuadTable t = quad_table_at(phi, x, y, side);
  QuadPointEval out;
  const Quad sgn = side == MetricSide::primary ? Quad(1) : Quad(-1);
  for (std::size_t i = 0; i < 8; ++i)
    out.a[i] = (t.c[0] * t.g[0][i] + t.c[1] * t.g[1][i] + t.c[2] * t.g[2][i]) * sgn;
  for (int m = 0; m < 3; ++m) out.c[m] = t.c[m];
  return out;
}

inline HarmonicityResiduals family_residuals(const Polynomial& phi, const HalfPlanePoint& z,
                                             double step, MetricSide side) {
  if (!(z.y - 2.0 * step > 0.0)) throw std::domain_error("family_residuals: stencil exits chart");
  const Quad x = Quad(z.x), y = Quad(z.y), h = Quad(step);
  const Quad c1 = Quad(8) / (Quad(12) * h), c2 = Quad(1) / (Quad(12) * h);

  const QuadPointEval xp = quad_eval(phi, x + h, y, side);
  const QuadPointEval xm = quad_eval(phi, x - h, y, side);
  const QuadPointEval xpp = quad_eval(phi, x + 2 * h, y, side);
  const QuadPointEval xmm = quad_eval(phi, x - 2 * h, y, side);
  const QuadPointEval yp = quad_eval(phi, x, y + h, side);
  const QuadPointEval ym = quad_eval(phi, x, y - h, side);
  const QuadPointEval ypp = quad_eval(phi, x, y + 2 * h, side);
  const QuadPointEval ymm = quad_eval(phi, x, y - 2 * h, side);

  // closed: d(sum_m c_m E_m dz) = sum_m (i dx(c_m) - dy(c_m)) E_m dx dy;
  // transposing the E_m (dual side) does not change the Frobenius norm
  const QC i_unit(Quad(0), Quad(1));
  CMat3 dmat;
  for (int m = 0; m < 3; ++m) {
    const QC dx = (xp.c[m] - xm.c[m]) * c1 - (xpp.c[m] - xmm.c[m]) * c2;
    const QC dy = (yp.c[m] - ym.c[m]) * c1 - (ypp.c[m] - ymm.c[m]) * c2;
    const QC s = i_unit * dx - dy;
    const cplx sd(static_cast<double>(s.re), static_cast<double>(s.im));
    const RMat3& em = m == 0 ? basis_e1() : (m == 1 ? basis_e2() : basis_e3());
    for (int k = 0; k < 9; ++k)
      dmat.a[static_cast<std::size_t>(k)] += sd * em.a[static_cast<std::size_t>(k)];
  }
  const double closed = frobenius_norm(dmat);

  // coclosed: star maps a_i dz to i conj(a_i) dzbar, whose x/y coefficients
  // are (i conj a_i, conj a_i); then the dx dy coefficient of d
  double s2 = 0.0;
  for (std::size_t i = 0; i < 8; ++i) {
    const QC bx_dx = (xp.a[i].conj() - xm.a[i].conj()) * c1 - (xpp.a[i].conj() - xmm.a[i].conj()) * c2;
    const QC bx_dy = (yp.a[i].conj() - ym.a[i].conj()) * c1 - (ypp.a[i].conj() - ymm.a[i].conj()) * c2;
    // d(i conj(a) dzbar) coefficient: dx(conj a) - dy(i conj a)
    const QC d = bx_dx - i_unit * bx_dy;
    s2 += d.norm2();
  }
  return {closed, std::sqrt(s2)};
}
}  // namespace detail

inline HarmonicityResiduals harmonicity_check(const Polynomial& phi, const HalfPlanePoint& z,
                                              double step) {
  return detail::family_residuals(phi, z, step, MetricSide::primary);
}

// l(E_m, E_i) for m = 1, 2, 3 over the full basis, evaluated at f(z) in quad
// precision; the reference values for the closed-form sharp expansions.
inline std::array<std::array<double, 8>, 3> sharp_basis_pairings(const HalfPlanePoint& z) {
  const detail::QuadTable t =
      detail::quad_table_at(Polynomial{{1.0}}, detail::Quad(z.x), detail::Quad(z.y), MetricSide::primary);
  std::array<std::array<double, 8>, 3> out{};
  for (std::size_t m = 0; m < 3; ++m)
    for (std::size_t i = 0; i < 8; ++i) out[m][i] = static_cast<double>(t.g[m][i].re);
  return out;
}

// || sharp^{-1}(sharp A) - A || / max(1, ||A||) with the whole chain in quad
// precision. Measures invertibility of sharp at f(z) without the double
// precision Gram-solve noise that dominates near the region corner.
inline double sharp_round_trip_residual(const HalfPlanePoint& z, const RMat3& a) {
  using detail::Quad;
  const Quad x = Quad(z.x), y = Quad(z.y);
  const Quad r2 = x * x + y * y;
  const detail::QVec3 p{x / y, (r2 - 1) / (2 * y), (r2 + 1) / (2 * y)};
  const detail::QMat3 h = detail::quad_cheng_yau(p, false);
  const detail::QMat3 h_inv = detail::quad_cheng_yau(p, true);

  const auto& basis = sl3_basis();
  std::array<detail::QMat3, 8> m{};
  for (std::size_t i = 0; i < 8; ++i) {
    detail::QMat3 e;
    for (int k = 0; k < 9; ++k)
      e.a[static_cast<std::size_t>(k)] = Quad(basis[i].a[static_cast<std::size_t>(k)]);
    m[i] = h * e * h_inv;
  }
  std::array<std::array<Quad, 8>, 8> gram{};
  std::array<Quad, 8> coeff{};
  for (std::size_t i = 0; i < 8; ++i) {
    for (std::size_t j = 0; j < 8; ++j) {
      Quad s = 0;
      for (int k = 0; k < 9; ++k)
        s += Quad(basis[i].a[static_cast<std::size_t>(k)]) * m[j].a[static_cast<std::size_t>(k)];
      gram[i][j] = s;
    }
    Quad s = 0;
    for (int k = 0; k < 9; ++k) s += Quad(a.a[static_cast<std::size_t>(k)]) * m[i].a[static_cast<std::size_t>(k)];
    coeff[i] = s;
  }
  // Gaussian elimination with partial pivoting in quad
  for (std::size_t col = 0; col + 1 < 8; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < 8; ++r)
      if (detail::quad_abs(gram[r][col]) > detail::quad_abs(gram[piv][col])) piv = r;
    if (piv != col) {
      std::swap(gram[col], gram[piv]);
      std::swap(coeff[col], coeff[piv]);
    }
    for (std::size_t r = col + 1; r < 8; ++r) {
      const Quad f = gram[r][col] / gram[col][col];
      for (std::size_t j = col; j < 8; ++j) gram[r][j] -= f * gram[col][j];
      coeff[r] -= f * coeff[col];
    }
  }
  std::array<Quad, 8> coords{};
  for (std::size_t i = 8; i-- > 0;) {
    Quad s = coeff[i];
    for (std::size_t j = i + 1; j < 8; ++j) s -= coords[j] * gram[i][j];
    coords[i] = s / gram[i][i];
  }
  RMat3 back{};
  for (std::size_t i = 0; i < 8; ++i)
    for (int k = 0; k < 9; ++k)
      back.a[static_cast<std::size_t>(k)] +=
          static_cast<double>(coords[i]) * basis[i].a[static_cast<std::size_t>(k)];
  return max_abs(back - a) / std::max(1.0, max_abs(a));
}

// ---------------------------------------------------------------------------
// Pairing identities
// ---------------------------------------------------------------------------

// | alpha wedge *beta - <alpha,beta> dvol | on dx dy coefficients, for real
// scalar 1-forms alpha = a1 dx + a2 dy, beta = b1 dx + b2 dy in the metric
// e^psi |dz|^2 with e^psi = 1/y^2.
inline double wedge_dvol_residual(double a1, double a2, double b1, double b2,
                                  const HalfPlanePoint& z) {
  const double lhs = a1 * b1 + a2 * b2;  // alpha wedge (b1 dy - b2 dx)
  const double epsi = 1.0 / (z.y * z.y);
  const double rhs = (z.y * z.y) * (a1 * b1 + a2 * b2) * epsi;
  return std::abs(lhs - rhs);
}

// [Loftin integrand] / [Weil-Petersson integrand] at z, both as dx dy
// coefficients. The Loftin side is Re[(phi dz wedge *(psi dz)) l(T,T)] with
// T the holomorphic tangent matrix; the WP side is Re(phi conj(psi)) y^2.
// Returns nothing when the WP integrand is (numerically) zero.
inline std::optional<double> wp_integrand_ratio(const Polynomial& phi, const Polynomial& psi,
                                                const HalfPlanePoint& z) {
  const cplx pv = phi(z.z());
  const cplx qv = psi(z.z());
  const cplx prod = pv * std::conj(qv);
  if (std::abs(prod.real()) <= 1e-8 * std::abs(prod)) return std::nullopt;

  const FiberMetricContext ctx = fiber_context(z);
  const CMat3 t = holomorphic_tangent_matrix(z.z());
  const cplx l = fiber_metric_complex(ctx, t, t);
  // phi dz wedge (i conj(psi) dzbar) = 2 phi conj(psi) dx dy
  const double loftin = (2.0 * prod * l).real();
  const double wp = prod.real() * z.y * z.y;
  return loftin / wp;
}

}  // namespace hasv
