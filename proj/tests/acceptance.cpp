// Acceptance gate: one pass/fail line per criterion, each implemented
// directly against the library at its stated sample count and tolerance.
// Exit code is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "hasv/checks.hpp"
#include "hasv/cocycle.hpp"
#include "hasv/duality.hpp"
#include "hasv/report.hpp"

using namespace hasv;

namespace {

constexpr std::uint64_t kSeed = 0xACCE97ull;

int failures = 0;

void report(int idx, bool pass, const std::string& what) {
  std::printf("[%s] %02d %s\n", pass ? "PASS" : "FAIL", idx, what.c_str());
  if (!pass) ++failures;
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3e", v);
  return buf;
}

HalfPlanePoint draw_z(Rng& rng) {
  return {rng.uniform(-3.0, 3.0), rng.uniform(0.2, 5.0)};
}

ConePoint draw_cone(Rng& rng) {
  const double x3 = rng.uniform(1.0, 5.0);
  const double r = x3 * std::sqrt(0.8 * rng.uniform());
  const double th = rng.uniform(0.0, 6.283185307179586);
  return ConePoint(r * std::cos(th), r * std::sin(th), x3);
}

RMat3 draw_sl3(Rng& rng) {
  RMat3 m;
  for (int k = 0; k < 9; ++k) m.a[static_cast<std::size_t>(k)] = rng.uniform(-1.0, 1.0);
  const double t = trace(m) / 3.0;
  m(0, 0) -= t;
  m(1, 1) -= t;
  m(2, 2) -= t;
  return m;
}

RMat2 draw_sl2_group(Rng& rng, double scale = 1.0) {
  return exp_sl2({rng.uniform(-scale, scale), rng.uniform(-scale, scale), rng.uniform(-scale, scale)});
}

std::vector<Polynomial> differential_family() {
  return {Polynomial{{1.0}}, Polynomial{{0.0, 1.0}}, Polynomial{{0.0, 0.0, 1.0}},
          Polynomial{{0.0, 0.0, 0.0, 1.0}}, Polynomial{{2.0, 3.0}}};
}

void criterion_01_monge_ampere() {
  Rng rng(kSeed, "acc.monge_ampere");
  const auto start = std::chrono::steady_clock::now();
  double worst_closed = 0.0, worst_fd = 0.0;
  for (int n = 0; n < 100; ++n) {
    const ConePoint p = draw_cone(rng);
    const double sigma2 = std::pow(cheng_yau_potential(p), 2.0);
    worst_closed = std::max(worst_closed, std::abs(det(cheng_yau_metric(p)) - sigma2) / sigma2);
    worst_fd = std::max(worst_fd,
                        std::abs(det(checks::fd_cheng_yau_hessian(p, 1e-5)) - sigma2) / sigma2);
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  report(1, worst_closed < 1e-9 && worst_fd < 1e-5 && secs < 1.0,
         "Monge-Ampere det((1/3)Hess log sigma) = sigma^2: closed " + sci(worst_closed) +
             " < 1e-9, fd " + sci(worst_fd) + " < 1e-5, " + sci(secs) + " s < 1 s");
}

void criterion_02_kv_and_equivariance() {
  Rng rng(kSeed, "acc.kv");
  double worst = 0.0;
  for (int n = 0; n < 100; ++n) {
    const ConePoint p = draw_cone(rng);
    worst = std::max(worst, max_abs(koszul_vinberg_metric(p) - cheng_yau_metric(p) * 3.0));
    const GroupElement3 g = phi_group(draw_sl2_group(rng));
    const ConePoint gp(g * p.vec());
    worst = std::max(worst,
                     std::abs(characteristic_function(gp) / characteristic_function(p) - 1.0));
  }
  report(2, worst < 1e-9, "KV = 3 CY and k(gamma p) = k(p): residual " + sci(worst) + " < 1e-9");
}

void criterion_03_isometry_chain() {
  Rng rng(kSeed, "acc.chain");
  double worst_metric = 0.0, worst_round = 0.0;
  for (int n = 0; n < 100; ++n) {
    // disk -> half-plane pullback against the Blaschke matrix
    const double r = 0.95 * std::sqrt(rng.uniform());
    const double th = rng.uniform(0.0, 6.283185307179586);
    const DiskPoint q(r * std::cos(th), r * std::sin(th));
    const HalfPlanePoint zq = klein_to_halfplane(q);
    const RMat2 j = klein_jacobian(q);
    const double epsi = 1.0 / (zq.y * zq.y);
    RMat2 pull;
    pull.a = epsi * (j.a * j.a + j.c * j.c);
    pull.b = pull.c = epsi * (j.a * j.b + j.c * j.d);
    pull.d = epsi * (j.b * j.b + j.d * j.d);
    worst_metric = std::max(worst_metric, max_abs(pull - blaschke_metric_klein(q)));

    // half-plane -> hyperboloid pullback of the Cheng-Yau restriction
    const HalfPlanePoint z = draw_z(rng);
    const double ez = 1.0 / (z.y * z.y);
    const RMat3 g = hyperboloid_frame_gram(z);
    worst_metric = std::max({worst_metric, std::abs(g(1, 1) - ez), std::abs(g(2, 2) - ez),
                             std::abs(g(1, 2))});

    worst_round = std::max(worst_round, std::abs(klein_to_halfplane(halfplane_to_klein(z)).z() - z.z()));
    const DiskPoint q2 = halfplane_to_klein(klein_to_halfplane(q));
    worst_round = std::max(worst_round, std::hypot(q2.t1 - q.t1, q2.t2 - q.t2));
  }
  report(3, worst_metric < 1e-9 && worst_round < 1e-12,
         "isometry chain: metric pullbacks " + sci(worst_metric) +
             " < 1e-9, round trips " + sci(worst_round) + " < 1e-12");
}

void criterion_04_rep() {
  Rng rng(kSeed, "acc.rep");
  double worst = 0.0;
  for (int n = 0; n < 200; ++n) {
    const RMat2 a = draw_sl2_group(rng), b = draw_sl2_group(rng);
    worst = std::max(worst, max_abs(phi_group(a * b) - phi_group(a) * phi_group(b)));
    worst = std::max(worst, so21_defect(phi_group(a)));
  }
  for (int n = 0; n < 100; ++n) {
    worst = std::max(worst, equivariance_residual(draw_sl2_group(rng), draw_z(rng)));
  }
  report(4, worst < 1e-9,
         "Phi homomorphism into SO(2,1) and f equivariance: residual " + sci(worst) +
             " < 1e-9");
}

void criterion_05_norm16y2() {
  Rng rng(kSeed, "acc.norm");
  const FiberMetricContext apex = fiber_context(HalfPlanePoint(0, 1));
  const CMat3 ti = holomorphic_tangent_matrix(cplx(0, 1));
  double worst_apex = std::abs(fiber_metric_complex(apex, ti, ti) - cplx(16.0));
  double worst = 0.0;
  for (int n = 0; n < 100; ++n) {
    const HalfPlanePoint z = draw_z(rng);
    const CMat3 t = holomorphic_tangent_matrix(z.z());
    const cplx l = fiber_metric_complex(fiber_context(z), t, t);
    worst = std::max(worst, std::abs(l - 16.0 * z.y * z.y) / (16.0 * z.y * z.y));
  }
  report(5, worst < 1e-10 && worst_apex < 1e-10,
         "l(Phi(-z,z^2;-1,z), same) = 16 y^2: relative " + sci(worst) +
             " < 1e-10, value at i within " + sci(worst_apex) + " of 16");
}

void criterion_06_harmonicity() {
  Rng rng(kSeed, "acc.harmonic");
  double worst = 0.0;
  for (const Polynomial& phi : differential_family()) {
    for (int n = 0; n < 50; ++n) {
      const auto r = harmonicity_check(phi, draw_z(rng), 1e-5);
      worst = std::max({worst, r.closed, r.coclosed});
    }
  }
  const LieValuedOneForm probe = LieValuedOneForm::dz_form(
      [](const HalfPlanePoint& w) { return to_complex(basis_e1()) * std::conj(w.z()); });
  const double probe_d =
      frobenius_norm(exterior_derivative_numeric(probe, HalfPlanePoint(0, 1), 1e-5));
  report(6, worst < 1e-6 && probe_d > 1e-2,
         "harmonic family d, delta residuals " + sci(worst) +
             " < 1e-6; zbar dz probe detected at " + sci(probe_d) + " > 1e-2");
}

void criterion_07_sharp_closed_forms() {
  Rng rng(kSeed, "acc.sharp");
  constexpr std::size_t coords[6] = {0, 1, 2, 3, 4, 7};
  double worst = 0.0;
  for (int n = 0; n < 50; ++n) {
    const HalfPlanePoint z = draw_z(rng);
    const auto defn = sharp_basis_pairings(z);
    const std::array<std::array<double, 8>, 3> closed = {sharp_e1_closed(z), sharp_e2_closed(z),
                                                         sharp_e3_closed(z)};
    for (std::size_t m = 0; m < 3; ++m)
      for (std::size_t i : coords) worst = std::max(worst, std::abs(defn[m][i] - closed[m][i]));
  }
  report(7, worst < 1e-9,
         "sharp(E1), sharp(E2), sharp(E3) closed forms: coefficientwise " + sci(worst) +
             " < 1e-9");
}

void criterion_08_wp_constant() {
  Rng rng(kSeed, "acc.wp");
  const Polynomial one{{1.0}}, zp{{0.0, 1.0}}, z2{{0, 0, 1.0}}, z3{{0, 0, 0, 1.0}}, aff{{2.0, 3.0}};
  const std::pair<Polynomial, Polynomial> pairs[5] = {
      {one, one}, {zp, zp}, {one, z2}, {z3, aff}, {aff, zp}};
  double worst = 0.0;
  int evaluated = 0;
  for (const auto& [phi, psi] : pairs) {
    for (int n = 0; n < 50; ++n) {
      if (const auto ratio = wp_integrand_ratio(phi, psi, draw_z(rng))) {
        worst = std::max(worst, std::abs(*ratio - 32.0) / 32.0);
        ++evaluated;
      }
    }
  }
  report(8, worst < 1e-9 && evaluated > 200,
         "Loftin/WP integrand ratio = 32: relative " + sci(worst) + " < 1e-9 at " +
             std::to_string(evaluated) + " points");
}

void criterion_09_duality() {
  Rng rng(kSeed, "acc.duality");
  double worst = 0.0;
  for (int n = 0; n < 100; ++n) {
    const HalfPlanePoint z = draw_z(rng);
    const DualFrame d = conormal_at(z);
    const auto r = verify_dual_metric(z);
    worst = std::max({worst, conormal_pairing_residual(d), r.frame_identity, r.aat_vs_h_inv,
                      r.h_star_vs_h_inv,
                      dual_fiber_metric_isometry(z, draw_sl3(rng), draw_sl3(rng))});
  }
  report(9, worst < 1e-8,
         "duality: A^T h A = I, A A^T = h^{-1}, nu pairings, l* = l: residual " +
             sci(worst) + " < 1e-8");
}

void criterion_10_cocycles() {
  Rng rng(kSeed, "acc.cocycle");
  double worst = 0.0, worst_path = 0.0;
  for (int n = 0; n < 100; ++n) {
    Cocycle c;
    c.rho_a = phi_group(draw_sl2_group(rng, 0.3));
    c.rho_b = phi_group(draw_sl2_group(rng, 0.3));
    c.u_a = draw_sl3(rng);
    c.u_b = draw_sl3(rng);

    FreeGroupWord x, y;
    const int lx = static_cast<int>(rng.uniform(0.0, 9.0)), ly = static_cast<int>(rng.uniform(0.0, 9.0));
    for (int i = 0; i < lx; ++i) x.append(static_cast<Letter>(rng.next_u64() % 4));
    for (int i = 0; i < ly; ++i) y.append(static_cast<Letter>(rng.next_u64() % 4));

    const RMat3 rx = rho_of_word(c, x);
    worst = std::max(worst, max_abs(evaluate_cocycle(c, x.concat(y)) - evaluate_cocycle(c, x) -
                                    rx * evaluate_cocycle(c, y) * inverse(rx)));

    const Cocycle dd = dual_cocycle(dual_cocycle(c));
    worst = std::max({worst, max_abs(dd.u_a - c.u_a), max_abs(dd.rho_a - c.rho_a)});

    const RMat3 v = draw_sl3(rng);
    const Cocycle cob = coboundary_cocycle(v, c.rho_a, c.rho_b);
    const Cocycle dual_cob = dual_cocycle(cob);
    const Cocycle cob_dual = coboundary_cocycle(-transpose(v), inverse(transpose(c.rho_a)),
                                                inverse(transpose(c.rho_b)));
    worst = std::max({worst, max_abs(dual_cob.u_a - cob_dual.u_a), max_abs(dual_cob.u_b - cob_dual.u_b)});

    worst = std::max(worst, max_abs(evaluate_cocycle(dual_cocycle(c), x) +
                                    transpose(evaluate_cocycle(c, x))));
  }
  const RMat2 shift{1.0, 1.0, 0.0, 1.0};
  for (int n = 0; n < 20; ++n) {
    const LieValuedOneForm om = harmonic_family(Polynomial{{cplx(rng.uniform(-1, 1), 0), 0.0, 1.0}});
    const HalfPlanePoint z0{rng.uniform(-2, 2), rng.uniform(0.3, 4)};
    const HalfPlanePoint z1{z0.x + 1.0, z0.y};
    const HalfPlanePoint mid{rng.uniform(-3, 3), rng.uniform(0.3, 4)};
    const CMat3 direct = integrate_form_to_cocycle(om, {z0, z1}, shift);
    const CMat3 detour = integrate_form_to_cocycle(om, {z0, mid, z1}, shift);
    worst_path = std::max(worst_path, max_abs(direct - detour) / std::max(1.0, max_abs(direct)));
  }
  report(10, worst < 1e-10 && worst_path < 1e-6,
         "cocycle identity, involution, coboundary, word duality " + sci(worst) +
             " < 1e-10; path independence " + sci(worst_path) + " < 1e-6");
}

void criterion_11_runner() {
  SuiteConfig cfg;  // defaults
  const auto start = std::chrono::steady_clock::now();
  const auto results_a = run_suite("all", cfg);
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const std::string json_a = emit_json(cfg, results_a);
  const std::string json_b = emit_json(cfg, run_suite("all", cfg));
  bool all_pass = true;
  for (const auto& r : results_a) all_pass = all_pass && r.pass;
  report(11, secs < 30.0 && json_a == json_b && all_pass,
         "verify all: " + sci(secs) + " s < 30 s, byte-identical JSON reports, all " +
             std::to_string(results_a.size()) + " checks green");
}

}  // namespace

int main() {
  criterion_01_monge_ampere();
  criterion_02_kv_and_equivariance();
  criterion_03_isometry_chain();
  criterion_04_rep();
  criterion_05_norm16y2();
  criterion_06_harmonicity();
  criterion_07_sharp_closed_forms();
  criterion_08_wp_constant();
  criterion_09_duality();
  criterion_10_cocycles();
  criterion_11_runner();
  std::printf("%d criterion(s) failed\n", failures);
  return failures;
}
