// Lorentz cone: characteristic function, Cheng-Yau / Koszul-Vinberg metrics,
// level-set normalization. Oracles here are test-local: a quadrature of the
// defining dual-cone integral for k, and finite-difference Hessians along
// two independent routes.

#include <doctest.h>

#include <cmath>

#include "hasv/bundle.hpp"
#include "hasv/chart.hpp"
#include "hasv/cone.hpp"
#include "hasv/rep.hpp"
#include "hasv/rng.hpp"

using namespace hasv;

namespace {

constexpr double kTwoPi = 6.283185307179586476;

// 16-point Gauss-Legendre nodes/weights on [0, 1]
struct Gl16 {
  std::array<double, 16> x{}, w{};
  Gl16() {
    const double xs[8] = {0.0950125098376374, 0.2816035507792589, 0.4580167776572274,
                          0.6178762444026438, 0.7554044083550030, 0.8656312023878318,
                          0.9445750230732326, 0.9894009349916499};
    const double ws[8] = {0.1894506104550685, 0.1826034150449236, 0.1691565193950025,
                          0.1495959888165767, 0.1246289712555339, 0.0951585116824928,
                          0.0622535239386479, 0.0271524594117541};
    for (int k = 0; k < 8; ++k) {
      x[static_cast<std::size_t>(2 * k)] = 0.5 * (1.0 - xs[k]);
      x[static_cast<std::size_t>(2 * k + 1)] = 0.5 * (1.0 + xs[k]);
      w[static_cast<std::size_t>(2 * k)] = 0.5 * ws[k];
      w[static_cast<std::size_t>(2 * k + 1)] = 0.5 * ws[k];
    }
  }
};

// Quadrature of the dual-cone integral int_{C*} e^{-psi(x)} dpsi over the
// truncated region {0 <= y3 <= S}, in polar slices y = (r cos th, r sin th, y3),
// r <= y3. The Lorentz cone is self-dual. The raw integral carries the
// normalization constant 2 pi relative to t^{-3/2} (its value at (0,0,1) is
// int e^{-y3} pi y3^2 dy3 = 2 pi).
double kv_integral(const ConePoint& p, int y3_panels, int w_panels, int n_theta) {
  const double rho = std::hypot(p.x1, p.x2);
  const double decay = p.x3 - rho;  // integrand <= e^{-decay y3}
  const double s_max = 45.0 / decay;
  static const Gl16 gl;

  double total = 0.0;
  for (int py = 0; py < y3_panels; ++py) {
    const double y0 = s_max * py / y3_panels;
    const double dy = s_max / y3_panels;
    for (int iy = 0; iy < 16; ++iy) {
      const double y3 = y0 + dy * gl.x[static_cast<std::size_t>(iy)];
      const double wy = dy * gl.w[static_cast<std::size_t>(iy)];
      double slice = 0.0;  // int_0^1 w int_0^{2pi} exp(...) dth dw
      for (int pw = 0; pw < w_panels; ++pw) {
        for (int iw = 0; iw < 16; ++iw) {
          const double w = (pw + gl.x[static_cast<std::size_t>(iw)]) / w_panels;
          const double ww = gl.w[static_cast<std::size_t>(iw)] / w_panels;
          double theta_sum = 0.0;
          for (int it = 0; it < n_theta; ++it) {
            const double th = kTwoPi * it / n_theta;
            theta_sum += std::exp(-y3 * (p.x3 + w * (p.x1 * std::cos(th) + p.x2 * std::sin(th))));
          }
          slice += ww * w * (kTwoPi / n_theta) * theta_sum;
        }
      }
      total += wy * y3 * y3 * slice;
    }
  }
  return total;
}

RMat3 fd_hessian_from_gradient(const ConePoint& p, double h) {
  RMat3 m;
  for (int i = 0; i < 3; ++i) {
    RVec3 xp = p.vec(), xm = p.vec();
    xp[i] += h;
    xm[i] -= h;
    const RVec3 gp = cheng_yau_log_gradient(ConePoint(xp));
    const RVec3 gm = cheng_yau_log_gradient(ConePoint(xm));
    for (int j = 0; j < 3; ++j) m(i, j) = (gp[j] - gm[j]) / (2.0 * h);
  }
  return (m + transpose(m)) * 0.5;
}

// second route: double central differences of the potential itself
RMat3 fd_hessian_from_potential(const ConePoint& p, double h) {
  auto f = [](const RVec3& x) {
    return (1.0 / 3.0) * std::log(cheng_yau_potential(ConePoint(x)));
  };
  RMat3 m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      RVec3 pp = p.vec(), pm = p.vec(), mp = p.vec(), mm = p.vec();
      pp[i] += h; pp[j] += h;
      pm[i] += h; pm[j] -= h;
      mp[i] -= h; mp[j] += h;
      mm[i] -= h; mm[j] -= h;
      m(i, j) = (f(pp) - f(pm) - f(mp) + f(mm)) / (4.0 * h * h);
    }
  return m;
}

ConePoint random_cone_point(Rng& rng) {
  const double x3 = rng.uniform(1.0, 5.0);
  const double r = x3 * std::sqrt(0.8 * rng.uniform());
  const double th = rng.uniform(0.0, kTwoPi);
  return ConePoint(r * std::cos(th), r * std::sin(th), x3);
}

}  // namespace

TEST_CASE("characteristic function values") {
  CHECK(characteristic_function(ConePoint(0, 0, 1)) == doctest::Approx(1.0));
  CHECK(characteristic_function(ConePoint(1, 1, 2)) ==
        doctest::Approx(0.35355339059327373).epsilon(1e-14));
  // scaling law applied to the apex
  CHECK(characteristic_function(ConePoint(0, 0, 2)) == doctest::Approx(0.125).epsilon(1e-14));
  CHECK(characteristic_function(ConePoint(0, 0, 4)) == doctest::Approx(0.015625).epsilon(1e-14));
}

TEST_CASE("characteristic function matches the dual-cone integral") {
  for (const ConePoint& p : {ConePoint(0, 0, 1), ConePoint(1, 1, 2)}) {
    const double quad = kv_integral(p, 24, 6, 192) / kTwoPi;
    CHECK(quad == doctest::Approx(characteristic_function(p)).epsilon(1e-4));
  }
}

TEST_CASE("cone point invariants are enforced") {
  CHECK_THROWS_AS(ConePoint(0, 0, -1), std::domain_error);
  CHECK_THROWS_AS(ConePoint(1, 0, 1), std::domain_error);
  CHECK_THROWS_AS(ConePoint(1, 1, std::sqrt(2.0 + 1e-13)), std::domain_error);
  CHECK_THROWS_AS(DiskPoint(1, 0), std::domain_error);
  CHECK_THROWS_AS(HalfPlanePoint(0, 0), std::domain_error);
}

TEST_CASE("cheng-yau metric at the apex is the identity") {
  CHECK(max_abs(cheng_yau_metric(ConePoint(0, 0, 1)) - RMat3::identity()) == 0.0);
  CHECK(max_abs(koszul_vinberg_metric(ConePoint(0, 0, 1)) - RMat3::identity() * 3.0) == 0.0);
}

TEST_CASE("closed-form hessian against finite differences") {
  Rng rng(101);
  for (int n = 0; n < 100; ++n) {
    const ConePoint p = random_cone_point(rng);
    const RMat3 h = cheng_yau_metric(p);
    const RMat3 fd = fd_hessian_from_gradient(p, 1e-5);
    CHECK(max_abs(h - fd) / max_abs(h) < 1e-6);
  }
  // potential route at mild fixed points, wider step, looser bound
  for (const ConePoint& p : {ConePoint(0.3, -0.2, 1.2), ConePoint(0.5, 0.5, 1.5)}) {
    const RMat3 h = cheng_yau_metric(p);
    const RMat3 fd = fd_hessian_from_potential(p, 1e-4);
    CHECK(max_abs(h - fd) / max_abs(h) < 1e-4);
  }
}

TEST_CASE("monge-ampere identity det((1/3) Hess log sigma) = sigma^2") {
  Rng rng(102);
  for (int n = 0; n < 200; ++n) {
    const ConePoint p = random_cone_point(rng);
    const double lhs = det(cheng_yau_metric(p));
    const double rhs = std::pow(cheng_yau_potential(p), 2.0);
    CHECK(std::abs(lhs - rhs) / rhs < 1e-9);
  }
}

TEST_CASE("koszul-vinberg is exactly three times cheng-yau") {
  Rng rng(103);
  for (int n = 0; n < 50; ++n) {
    const ConePoint p = random_cone_point(rng);
    CHECK(max_abs(koszul_vinberg_metric(p) - cheng_yau_metric(p) * 3.0) == 0.0);
  }
}

TEST_CASE("k and h are SO(2,1)-invariant") {
  Rng rng(104);
  for (int n = 0; n < 100; ++n) {
    const ConePoint p = random_cone_point(rng);
    const RMat3 g = phi_group(exp_sl2({rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)}));
    const ConePoint gp(g * p.vec());
    CHECK(std::abs(characteristic_function(gp) / characteristic_function(p) - 1.0) < 1e-9);
    CHECK(max_abs(transpose(g) * cheng_yau_metric(gp) * g - cheng_yau_metric(p)) < 1e-9);
  }
}

TEST_CASE("normalization onto the hyperboloid") {
  const ConePoint apex = normalize_to_level_set(DiskPoint(0, 0));
  CHECK(apex.x1 == 0.0);
  CHECK(apex.x2 == 0.0);
  CHECK(apex.x3 == 1.0);

  Rng rng(105);
  for (int n = 0; n < 100; ++n) {
    const double r = 0.95 * std::sqrt(rng.uniform());
    const double th = rng.uniform(0.0, kTwoPi);
    const DiskPoint q(r * std::cos(th), r * std::sin(th));
    const ConePoint m = normalize_to_level_set(q);
    CHECK(std::abs(characteristic_function(m) - 1.0) < 1e-12);
    // radial graph of -1/u with u = -sqrt(1 - t1^2 - t2^2)
    const double u = -std::sqrt(1.0 - q.t1 * q.t1 - q.t2 * q.t2);
    CHECK(norm(m.vec() - RVec3{q.t1, q.t2, 1.0} * (-1.0 / u)) < 1e-12);
  }
}

TEST_CASE("metric splitting along the hyperboloid") {
  Rng rng(106);
  for (int n = 0; n < 100; ++n) {
    const HalfPlanePoint z{rng.uniform(-3.0, 3.0), rng.uniform(0.2, 5.0)};
    const double epsi = 1.0 / (z.y * z.y);
    const RMat3 g = hyperboloid_frame_gram(z);
    CHECK(std::abs(g(0, 0) - 1.0) < 1e-9);
    CHECK(std::abs(g(0, 1)) < 1e-9);
    CHECK(std::abs(g(0, 2)) < 1e-9);
    CHECK(std::abs(g(1, 1) - epsi) < 1e-9);
    CHECK(std::abs(g(2, 2) - epsi) < 1e-9);
    CHECK(std::abs(g(1, 2)) < 1e-9);

    // the same products through the double-precision Cholesky route stay
    // within the finite-difference family tolerance
    const BlaschkeFrame fr = frame_at(z);
    const RMat3 lt = transpose(cholesky(cheng_yau_metric(parametrize_hyperboloid(z))));
    const RVec3 uf = lt * fr.f, ux = lt * fr.f_x, uy = lt * fr.f_y;
    CHECK(std::abs(dot(uf, uf) - 1.0) < 1e-6);
    CHECK(std::abs(dot(ux, ux) - epsi) < 1e-6);
    CHECK(std::abs(dot(uy, uy) - epsi) < 1e-6);
  }
}
