// Small fixed-size real/complex linear algebra: 2x2 and 3x3 matrices,
// 3-vectors, NxN dense solves. Everything here is value-semantic and
// allocation-free; matrices are row-major.

#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>

namespace hasv {

using cplx = std::complex<double>;

namespace detail {
inline double conj_of(double v) { return v; }
inline cplx conj_of(const cplx& v) { return std::conj(v); }
inline long double conj_of(long double v) { return v; }
inline std::complex<long double> conj_of(const std::complex<long double>& v) { return std::conj(v); }
inline double abs_of(double v) { return std::abs(v); }
inline double abs_of(const cplx& v) { return std::abs(v); }
inline double abs_of(long double v) { return static_cast<double>(std::abs(v)); }
inline double abs_of(const std::complex<long double>& v) { return static_cast<double>(std::abs(v)); }
}  // namespace detail

// ---------------------------------------------------------------------------
// Vec3
// ---------------------------------------------------------------------------

template <class T>
struct Vec3 {
  std::array<T, 3> v{};

  T& operator[](int i) { return v[static_cast<std::size_t>(i)]; }
  const T& operator[](int i) const { return v[static_cast<std::size_t>(i)]; }

  Vec3 operator+(const Vec3& o) const { return {v[0] + o.v[0], v[1] + o.v[1], v[2] + o.v[2]}; }
  Vec3 operator-(const Vec3& o) const { return {v[0] - o.v[0], v[1] - o.v[1], v[2] - o.v[2]}; }
  Vec3 operator*(T s) const { return {v[0] * s, v[1] * s, v[2] * s}; }
  Vec3 operator-() const { return {-v[0], -v[1], -v[2]}; }
};

using RVec3 = Vec3<double>;
using CVec3 = Vec3<cplx>;

template <class T>
inline T dot(const Vec3<T>& a, const Vec3<T>& b) {
  return a.v[0] * b.v[0] + a.v[1] * b.v[1] + a.v[2] * b.v[2];
}

template <class T>
inline double norm(const Vec3<T>& a) {
  using detail::abs_of;
  const double x = abs_of(a.v[0]), y = abs_of(a.v[1]), z = abs_of(a.v[2]);
  return std::sqrt(x * x + y * y + z * z);
}

// ---------------------------------------------------------------------------
// Mat3
// ---------------------------------------------------------------------------

template <class T>
struct Mat3 {
  std::array<T, 9> a{};

  T& operator()(int i, int j) { return a[static_cast<std::size_t>(3 * i + j)]; }
  const T& operator()(int i, int j) const { return a[static_cast<std::size_t>(3 * i + j)]; }

  static Mat3 zero() { return {}; }
  static Mat3 identity() {
    Mat3 m;
    m(0, 0) = T(1);
    m(1, 1) = T(1);
    m(2, 2) = T(1);
    return m;
  }
  static Mat3 from_rows(const Vec3<T>& r0, const Vec3<T>& r1, const Vec3<T>& r2) {
    Mat3 m;
    for (int j = 0; j < 3; ++j) {
      m(0, j) = r0[j];
      m(1, j) = r1[j];
      m(2, j) = r2[j];
    }
    return m;
  }
  static Mat3 from_cols(const Vec3<T>& c0, const Vec3<T>& c1, const Vec3<T>& c2) {
    Mat3 m;
    for (int i = 0; i < 3; ++i) {
      m(i, 0) = c0[i];
      m(i, 1) = c1[i];
      m(i, 2) = c2[i];
    }
    return m;
  }

  Mat3 operator+(const Mat3& o) const {
    Mat3 r;
    for (std::size_t k = 0; k < 9; ++k) r.a[k] = a[k] + o.a[k];
    return r;
  }
  Mat3 operator-(const Mat3& o) const {
    Mat3 r;
    for (std::size_t k = 0; k < 9; ++k) r.a[k] = a[k] - o.a[k];
    return r;
  }
  Mat3 operator-() const {
    Mat3 r;
    for (std::size_t k = 0; k < 9; ++k) r.a[k] = -a[k];
    return r;
  }
  Mat3 operator*(T s) const {
    Mat3 r;
    for (std::size_t k = 0; k < 9; ++k) r.a[k] = a[k] * s;
    return r;
  }
  Mat3 operator*(const Mat3& o) const {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        T s{};
        for (int k = 0; k < 3; ++k) s += (*this)(i, k) * o(k, j);
        r(i, j) = s;
      }
    return r;
  }
  Vec3<T> operator*(const Vec3<T>& x) const {
    Vec3<T> r;
    for (int i = 0; i < 3; ++i) r[i] = (*this)(i, 0) * x[0] + (*this)(i, 1) * x[1] + (*this)(i, 2) * x[2];
    return r;
  }
};

using RMat3 = Mat3<double>;
using CMat3 = Mat3<cplx>;

template <class T>
inline Mat3<T> transpose(const Mat3<T>& m) {
  Mat3<T> r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r(i, j) = m(j, i);
  return r;
}

template <class T>
inline Mat3<T> conjugate(const Mat3<T>& m) {
  Mat3<T> r;
  for (std::size_t k = 0; k < 9; ++k) r.a[k] = detail::conj_of(m.a[k]);
  return r;
}

template <class T>
inline T trace(const Mat3<T>& m) {
  return m(0, 0) + m(1, 1) + m(2, 2);
}

template <class T>
inline T det(const Mat3<T>& m) {
  return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
         m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
         m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
}

template <class T>
inline Mat3<T> inverse(const Mat3<T>& m) {
  const T d = det(m);
  if (detail::abs_of(d) < 1e-300) throw std::domain_error("inverse: singular 3x3 matrix");
  Mat3<T> adj;
  adj(0, 0) = m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1);
  adj(0, 1) = m(0, 2) * m(2, 1) - m(0, 1) * m(2, 2);
  adj(0, 2) = m(0, 1) * m(1, 2) - m(0, 2) * m(1, 1);
  adj(1, 0) = m(1, 2) * m(2, 0) - m(1, 0) * m(2, 2);
  adj(1, 1) = m(0, 0) * m(2, 2) - m(0, 2) * m(2, 0);
  adj(1, 2) = m(0, 2) * m(1, 0) - m(0, 0) * m(1, 2);
  adj(2, 0) = m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0);
  adj(2, 1) = m(0, 1) * m(2, 0) - m(0, 0) * m(2, 1);
  adj(2, 2) = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  return adj * (T(1) / d);
}

template <class T>
inline double frobenius_norm(const Mat3<T>& m) {
  double s = 0.0;
  for (std::size_t k = 0; k < 9; ++k) {
    const double x = detail::abs_of(m.a[k]);
    s += x * x;
  }
  return std::sqrt(s);
}

template <class T>
inline double max_abs(const Mat3<T>& m) {
  double s = 0.0;
  for (std::size_t k = 0; k < 9; ++k) s = std::max(s, detail::abs_of(m.a[k]));
  return s;
}

inline CMat3 to_complex(const RMat3& m) {
  CMat3 r;
  for (std::size_t k = 0; k < 9; ++k) r.a[k] = cplx(m.a[k], 0.0);
  return r;
}

inline CVec3 to_complex(const RVec3& v) { return {cplx(v.v[0]), cplx(v.v[1]), cplx(v.v[2])}; }

// Lower-triangular Cholesky factor of a symmetric positive definite matrix.
template <class F>
inline Mat3<F> cholesky(const Mat3<F>& m) {
  Mat3<F> l = Mat3<F>::zero();
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j <= i; ++j) {
      F s = m(i, j);
      for (int k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      if (i == j) {
        if (!(s > F(0))) throw std::domain_error("cholesky: matrix not positive definite");
        l(i, i) = std::sqrt(s);
      } else {
        l(i, j) = s / l(j, j);
      }
    }
  }
  return l;
}

// inverse of a lower-triangular matrix
template <class F>
inline Mat3<F> lower_tri_inverse(const Mat3<F>& l) {
  Mat3<F> r = Mat3<F>::zero();
  r(0, 0) = F(1) / l(0, 0);
  r(1, 1) = F(1) / l(1, 1);
  r(2, 2) = F(1) / l(2, 2);
  r(1, 0) = -l(1, 0) * r(0, 0) / l(1, 1);
  r(2, 1) = -l(2, 1) * r(1, 1) / l(2, 2);
  r(2, 0) = -(l(2, 0) * r(0, 0) + l(2, 1) * r(1, 0)) / l(2, 2);
  return r;
}

// Solves A x = b by Gaussian elimination with partial pivoting.
template <class F>
inline Vec3<F> solve3(Mat3<F> m, Vec3<F> b) {
  for (int col = 0; col < 2; ++col) {
    int piv = col;
    for (int r = col + 1; r < 3; ++r)
      if (std::abs(m(r, col)) > std::abs(m(piv, col))) piv = r;
    if (piv != col) {
      for (int j = 0; j < 3; ++j) std::swap(m(col, j), m(piv, j));
      std::swap(b[col], b[piv]);
    }
    if (std::abs(m(col, col)) < F(1e-300)) throw std::domain_error("solve3: singular system");
    for (int r = col + 1; r < 3; ++r) {
      const F f = m(r, col) / m(col, col);
      for (int j = col; j < 3; ++j) m(r, j) -= f * m(col, j);
      b[r] -= f * b[col];
    }
  }
  if (std::abs(m(2, 2)) < F(1e-300)) throw std::domain_error("solve3: singular system");
  Vec3<F> x;
  x[2] = b[2] / m(2, 2);
  x[1] = (b[1] - m(1, 2) * x[2]) / m(1, 1);
  x[0] = (b[0] - m(0, 1) * x[1] - m(0, 2) * x[2]) / m(0, 0);
  return x;
}

// ---------------------------------------------------------------------------
// Mat2, stored [[a,b],[c,d]]
// ---------------------------------------------------------------------------

template <class T>
struct Mat2 {
  T a{}, b{}, c{}, d{};

  static Mat2 identity() { return {T(1), T(0), T(0), T(1)}; }

  Mat2 operator*(const Mat2& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
  }
  Mat2 operator+(const Mat2& o) const { return {a + o.a, b + o.b, c + o.c, d + o.d}; }
  Mat2 operator-(const Mat2& o) const { return {a - o.a, b - o.b, c - o.c, d - o.d}; }
  Mat2 operator*(T s) const { return {a * s, b * s, c * s, d * s}; }
  Mat2 operator-() const { return {-a, -b, -c, -d}; }
};

using RMat2 = Mat2<double>;

template <class T>
inline T det(const Mat2<T>& m) {
  return m.a * m.d - m.b * m.c;
}

template <class T>
inline double max_abs(const Mat2<T>& m) {
  using detail::abs_of;
  return std::max(std::max(abs_of(m.a), abs_of(m.b)), std::max(abs_of(m.c), abs_of(m.d)));
}

// ---------------------------------------------------------------------------
// Dense NxN solve with a real matrix and real or complex right-hand side.
// ---------------------------------------------------------------------------

template <std::size_t N, class T>
inline std::array<T, N> solve_dense(std::array<std::array<double, N>, N> m, std::array<T, N> b) {
  std::array<std::size_t, N> order{};
  for (std::size_t i = 0; i < N; ++i) order[i] = i;
  for (std::size_t col = 0; col + 1 < N; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < N; ++r)
      if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
    if (piv != col) {
      std::swap(m[col], m[piv]);
      std::swap(b[col], b[piv]);
    }
    if (std::abs(m[col][col]) < 1e-300) throw std::domain_error("solve_dense: singular system");
    for (std::size_t r = col + 1; r < N; ++r) {
      const double f = m[r][col] / m[col][col];
      for (std::size_t j = col; j < N; ++j) m[r][j] -= f * m[col][j];
      b[r] -= b[col] * f;
    }
  }
  std::array<T, N> x{};
  for (std::size_t i = N; i-- > 0;) {
    T s = b[i];
    for (std::size_t j = i + 1; j < N; ++j) s -= x[j] * m[i][j];
    if (std::abs(m[i][i]) < 1e-300) throw std::domain_error("solve_dense: singular system");
    x[i] = s * (1.0 / m[i][i]);
  }
  return x;
}

}  // namespace hasv
