// Group 1-cocycles on the rank-2 free group <a, b> with values in sl(3,R):
// u(xy) = u(x) + Ad(rho(x)) u(y), the dual cocycle
// rho*(g) = (rho(g)^T)^{-1}, u*(g) = -u(g)^T, and numerical integration of
// Lie-valued 1-forms along half-plane polylines (16-point Gauss-Legendre
// per segment, so polynomial coefficient functions integrate exactly).

#pragma once

#include <cmath>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "hasv/forms.hpp"
#include "hasv/linalg.hpp"
#include "hasv/rep.hpp"
#include "hasv/types.hpp"

namespace hasv {

enum class Letter : int { a = 0, a_inv = 1, b = 2, b_inv = 3 };

inline Letter inverse_letter(Letter l) {
  switch (l) {
    case Letter::a: return Letter::a_inv;
    case Letter::a_inv: return Letter::a;
    case Letter::b: return Letter::b_inv;
    default: return Letter::b;
  }
}

// Freely reduced word; adjacent inverse pairs cancel on append.
struct FreeGroupWord {
  std::vector<Letter> letters;

  void append(Letter l) {
    if (!letters.empty() && letters.back() == inverse_letter(l))
      letters.pop_back();
    else
      letters.push_back(l);
  }

  // "a", "A" = a^{-1}, "b", "B" = b^{-1}
  static FreeGroupWord parse(std::string_view s) {
    FreeGroupWord w;
    for (char c : s) {
      switch (c) {
        case 'a': w.append(Letter::a); break;
        case 'A': w.append(Letter::a_inv); break;
        case 'b': w.append(Letter::b); break;
        case 'B': w.append(Letter::b_inv); break;
        case ' ': break;
        default: throw std::invalid_argument("FreeGroupWord: unknown letter");
      }
    }
    return w;
  }

  FreeGroupWord concat(const FreeGroupWord& o) const {
    FreeGroupWord w = *this;
    for (Letter l : o.letters) w.append(l);
    return w;
  }

  bool empty() const { return letters.empty(); }
};

struct Cocycle {
  GroupElement3 rho_a = RMat3::identity();
  GroupElement3 rho_b = RMat3::identity();
  RMat3 u_a{}, u_b{};
};

inline RMat3 generator_rho(const Cocycle& c, Letter l) {
  switch (l) {
    case Letter::a: return c.rho_a;
    case Letter::a_inv: return inverse(c.rho_a);
    case Letter::b: return c.rho_b;
    default: return inverse(c.rho_b);
  }
}

// u on a single letter; u(g^{-1}) = -rho(g)^{-1} u(g) rho(g)
inline RMat3 generator_u(const Cocycle& c, Letter l) {
  switch (l) {
    case Letter::a: return c.u_a;
    case Letter::b: return c.u_b;
    case Letter::a_inv: {
      const RMat3 ri = inverse(c.rho_a);
      return -(ri * c.u_a * c.rho_a);
    }
    default: {
      const RMat3 ri = inverse(c.rho_b);
      return -(ri * c.u_b * c.rho_b);
    }
  }
}

inline RMat3 rho_of_word(const Cocycle& c, const FreeGroupWord& w) {
  RMat3 r = RMat3::identity();
  for (Letter l : w.letters) r = r * generator_rho(c, l);
  return r;
}

// Left fold of u(xy) = u(x) + Ad(rho(x)) u(y); u(e) = 0.
inline RMat3 evaluate_cocycle(const Cocycle& c, const FreeGroupWord& w) {
  RMat3 u{};
  RMat3 prefix = RMat3::identity();
  for (Letter l : w.letters) {
    u = u + prefix * generator_u(c, l) * inverse(prefix);
    prefix = prefix * generator_rho(c, l);
  }
  return u;
}

inline Cocycle dual_cocycle(const Cocycle& c) {
  Cocycle d;
  d.rho_a = inverse(transpose(c.rho_a));
  d.rho_b = inverse(transpose(c.rho_b));
  d.u_a = -transpose(c.u_a);
  d.u_b = -transpose(c.u_b);
  return d;
}

// u(g) = v - Ad(rho(g)) v
inline Cocycle coboundary_cocycle(const RMat3& v, const GroupElement3& rho_a,
                                  const GroupElement3& rho_b) {
  Cocycle c;
  c.rho_a = rho_a;
  c.rho_b = rho_b;
  c.u_a = v - rho_a * v * inverse(rho_a);
  c.u_b = v - rho_b * v * inverse(rho_b);
  return c;
}

namespace detail {
// 16-point Gauss-Legendre on [-1, 1]
inline constexpr std::array<double, 8> kGl16Nodes = {
    0.0950125098376374, 0.2816035507792589, 0.4580167776572274, 0.6178762444026438,
    0.7554044083550030, 0.8656312023878318, 0.9445750230732326, 0.9894009349916499};
inline constexpr std::array<double, 8> kGl16Weights = {
    0.1894506104550685, 0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
    0.1246289712555339, 0.0951585116824928, 0.0622535239386479, 0.0271524594117541};
}  // namespace detail

// Integrates omega along the polyline; endpoints must satisfy
// last = gamma . first under the Moebius action.
inline CMat3 integrate_form_to_cocycle(const LieValuedOneForm& om,
                                       const std::vector<HalfPlanePoint>& path,
                                       const RMat2& gamma) {
  if (path.size() < 2) throw std::invalid_argument("integrate_form_to_cocycle: path needs >= 2 vertices");
  for (const auto& v : path)
    if (!(v.y > 0.0)) throw std::domain_error("integrate_form_to_cocycle: path exits chart");
  const cplx mapped = mobius(gamma, path.front().z());
  if (std::abs(mapped - path.back().z()) > 1e-9)
    throw std::invalid_argument("integrate_form_to_cocycle: endpoint != gamma . startpoint");

  CMat3 acc{};
  for (std::size_t s = 0; s + 1 < path.size(); ++s) {
    const cplx p = path[s].z();
    const cplx q = path[s + 1].z();
    const cplx dz = (q - p) * 0.5;  // dz/dt on z(t) = midpoint + t (q-p)/2
    const cplx mid = (p + q) * 0.5;
    for (int k = 0; k < 8; ++k) {
      for (double sgn : {-1.0, 1.0}) {
        const cplx zt = mid + sgn * detail::kGl16Nodes[static_cast<std::size_t>(k)] * (q - p) * 0.5;
        const HalfPlanePoint w{zt.real(), zt.imag()};
        const double wt = detail::kGl16Weights[static_cast<std::size_t>(k)];
        acc = acc + (om.coeff_dz(w) * dz + om.coeff_dzbar(w) * std::conj(dz)) * cplx(wt);
      }
    }
  }
  return acc;
}

}  // namespace hasv
