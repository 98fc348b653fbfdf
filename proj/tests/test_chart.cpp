// Klein disk <-> half-plane <-> hyperboloid charts and the affine-sphere
// structure equation. Frame derivatives are cross-checked against
// test-local central differences of f itself.

#include <doctest.h>

#include <cmath>

#include "hasv/chart.hpp"
#include "hasv/rng.hpp"

using namespace hasv;

namespace {
HalfPlanePoint random_z(Rng& rng) {
  return {rng.uniform(-3.0, 3.0), rng.uniform(0.2, 5.0)};
}
DiskPoint random_q(Rng& rng) {
  const double r = 0.95 * std::sqrt(rng.uniform());
  const double th = rng.uniform(0.0, 6.283185307179586);
  return DiskPoint(r * std::cos(th), r * std::sin(th));
}
}  // namespace

TEST_CASE("klein_to_halfplane pinned values") {
  const HalfPlanePoint z0 = klein_to_halfplane(DiskPoint(0, 0));
  CHECK(z0.x == doctest::Approx(0.0));
  CHECK(z0.y == doctest::Approx(1.0));

  const HalfPlanePoint z1 = klein_to_halfplane(DiskPoint(0.5, 0.0));
  CHECK(z1.x == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(z1.y == doctest::Approx(0.8660254037844386).epsilon(1e-14));
}

TEST_CASE("halfplane_to_klein pinned values") {
  const DiskPoint q0 = halfplane_to_klein(HalfPlanePoint(0, 1));
  CHECK(q0.t1 == doctest::Approx(0.0));
  CHECK(q0.t2 == doctest::Approx(0.0));

  const DiskPoint q1 = halfplane_to_klein(HalfPlanePoint(1, 1));
  CHECK(q1.t1 == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  CHECK(q1.t2 == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("round trips") {
  Rng rng(201);
  for (int n = 0; n < 200; ++n) {
    const HalfPlanePoint z = random_z(rng);
    const HalfPlanePoint z2 = klein_to_halfplane(halfplane_to_klein(z));
    CHECK(std::abs(z2.z() - z.z()) < 1e-12);

    const DiskPoint q = random_q(rng);
    const DiskPoint q2 = halfplane_to_klein(klein_to_halfplane(q));
    CHECK(std::hypot(q2.t1 - q.t1, q2.t2 - q.t2) < 1e-12);

    // range assertion
    CHECK(q2.t1 * q2.t1 + q2.t2 * q2.t2 < 1.0);
  }
}

TEST_CASE("parametrize_hyperboloid pinned values and level set") {
  const ConePoint p0 = parametrize_hyperboloid(HalfPlanePoint(0, 1));
  CHECK(p0.x1 == doctest::Approx(0.0));
  CHECK(p0.x2 == doctest::Approx(0.0));
  CHECK(p0.x3 == doctest::Approx(1.0));

  const ConePoint p1 = parametrize_hyperboloid(HalfPlanePoint(1, 1));
  CHECK(p1.x1 == doctest::Approx(1.0));
  CHECK(p1.x2 == doctest::Approx(0.5));
  CHECK(p1.x3 == doctest::Approx(1.5));
  CHECK(p1.x3 * p1.x3 - p1.x1 * p1.x1 - p1.x2 * p1.x2 == doctest::Approx(1.0));

  Rng rng(202);
  for (int n = 0; n < 200; ++n) {
    const ConePoint p = parametrize_hyperboloid(random_z(rng));
    CHECK(std::abs(p.gap() - 1.0) < 1e-12);
  }
}

TEST_CASE("frame at i") {
  const BlaschkeFrame fr = frame_at(HalfPlanePoint(0, 1));
  CHECK(norm(fr.f - RVec3{0, 0, 1}) == 0.0);
  CHECK(norm(fr.f_x - RVec3{1, 0, 0}) == 0.0);
  CHECK(norm(fr.f_y - RVec3{0, 1, 0}) == 0.0);
  CHECK(fr.conformal_factor == 1.0);
  // h = I at the apex, so A^T h A = I reduces to A^T A
  const RMat3 a = fr.orthonormal_columns();
  CHECK(max_abs(transpose(a) * a - RMat3::identity()) == 0.0);
}

TEST_CASE("closed-form frame derivatives match central differences of f") {
  Rng rng(203);
  const double h = 1e-5;
  for (int n = 0; n < 100; ++n) {
    const HalfPlanePoint z = random_z(rng);
    const BlaschkeFrame fr = frame_at(z);
    const RVec3 fdx = (parametrize_hyperboloid({z.x + h, z.y}).vec() -
                       parametrize_hyperboloid({z.x - h, z.y}).vec()) *
                      (1.0 / (2.0 * h));
    const RVec3 fdy = (parametrize_hyperboloid({z.x, z.y + h}).vec() -
                       parametrize_hyperboloid({z.x, z.y - h}).vec()) *
                      (1.0 / (2.0 * h));
    const double scale = std::max(1.0, std::max(norm(fr.f_x), norm(fr.f_y)));
    CHECK(norm(fr.f_x - fdx) / scale < 1e-6);
    CHECK(norm(fr.f_y - fdy) / scale < 1e-6);
  }
}

TEST_CASE("second derivatives match central differences of the first") {
  Rng rng(204);
  const double h = 1e-5;
  for (int n = 0; n < 100; ++n) {
    const HalfPlanePoint z = random_z(rng);
    const SecondDerivatives d = second_derivatives_at(z);
    const BlaschkeFrame xp = frame_at({z.x + h, z.y}), xm = frame_at({z.x - h, z.y});
    const BlaschkeFrame yp = frame_at({z.x, z.y + h}), ym = frame_at({z.x, z.y - h});
    const double inv2h = 1.0 / (2.0 * h);
    CHECK(norm(d.f_xx - (xp.f_x - xm.f_x) * inv2h) < 1e-5);
    CHECK(norm(d.f_xy - (yp.f_x - ym.f_x) * inv2h) < 1e-5);
    CHECK(norm(d.f_xy - (xp.f_y - xm.f_y) * inv2h) < 1e-5);
    CHECK(norm(d.f_yy - (yp.f_y - ym.f_y) * inv2h) < 1e-5);
  }
}

TEST_CASE("structure equation at i, componentwise") {
  // f_xx = (0,1,1) = (1/y) f_y + e^psi f with y = 1
  const SecondDerivatives d = second_derivatives_at(HalfPlanePoint(0, 1));
  CHECK(norm(d.f_xx - RVec3{0, 1, 1}) == 0.0);
  const BlaschkeFrame fr = frame_at(HalfPlanePoint(0, 1));
  CHECK(norm(d.f_xx - (fr.f_y + fr.f)) == 0.0);
  // off-diagonal: f_xy - Gamma^x_xy f_x = 0 since g(dx, dy) = 0
  CHECK(norm(d.f_xy + fr.f_x) == 0.0);
}

TEST_CASE("structure equation residuals") {
  Rng rng(205);
  for (int n = 0; n < 100; ++n) {
    const HalfPlanePoint z = random_z(rng);
    CHECK(structure_equation_residual(z) < 1e-10);
    CHECK(structure_equation_residual(z, DerivativePath::finite_difference, 1e-5) < 1e-6);
  }
}

TEST_CASE("pullback of the hyperbolic metric is the Blaschke metric on the disk") {
  Rng rng(206);
  for (int n = 0; n < 200; ++n) {
    const DiskPoint q = random_q(rng);
    const HalfPlanePoint z = klein_to_halfplane(q);
    const RMat2 j = klein_jacobian(q);
    const double epsi = 1.0 / (z.y * z.y);
    RMat2 pull;
    pull.a = epsi * (j.a * j.a + j.c * j.c);
    pull.b = pull.c = epsi * (j.a * j.b + j.c * j.d);
    pull.d = epsi * (j.b * j.b + j.d * j.d);
    CHECK(max_abs(pull - blaschke_metric_klein(q)) < 1e-9);
  }
}

TEST_CASE("jacobian of F matches central differences") {
  Rng rng(207);
  const double h = 1e-6;
  for (int n = 0; n < 50; ++n) {
    const DiskPoint q = random_q(rng);
    if (q.t1 * q.t1 + q.t2 * q.t2 > 0.9 * 0.9) continue;
    const RMat2 j = klein_jacobian(q);
    const HalfPlanePoint zp1 = klein_to_halfplane(DiskPoint(q.t1 + h, q.t2));
    const HalfPlanePoint zm1 = klein_to_halfplane(DiskPoint(q.t1 - h, q.t2));
    const HalfPlanePoint zp2 = klein_to_halfplane(DiskPoint(q.t1, q.t2 + h));
    const HalfPlanePoint zm2 = klein_to_halfplane(DiskPoint(q.t1, q.t2 - h));
    CHECK(j.a == doctest::Approx((zp1.x - zm1.x) / (2 * h)).epsilon(1e-5));
    CHECK(j.b == doctest::Approx((zp2.x - zm2.x) / (2 * h)).epsilon(1e-5));
    CHECK(j.c == doctest::Approx((zp1.y - zm1.y) / (2 * h)).epsilon(1e-5));
    CHECK(j.d == doctest::Approx((zp2.y - zm2.y) / (2 * h)).epsilon(1e-5));
  }
}

TEST_CASE("chart guards") {
  CHECK_THROWS_AS(structure_equation_residual(HalfPlanePoint(0.0, 1e-6),
                                              DerivativePath::finite_difference, 1e-5),
                  std::domain_error);
}
