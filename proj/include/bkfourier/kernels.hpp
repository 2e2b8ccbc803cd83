// Copyright 2026 The bkfourier Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Braverman-Kazhdan kernels for the symmetric square: torus kernels, the
// group kernels phi^G, the stack kernels phi^G-stack, torus-stack kernels
// and the GL2 tables.

#ifndef BKFOURIER_KERNELS_HPP_
#define BKFOURIER_KERNELS_HPP_

#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "bkfourier/characters.hpp"
#include "bkfourier/groupoid.hpp"
#include "bkfourier/groups.hpp"

namespace bkf {

// Ratio of torus sign constants: +1 for SL2 and PGL2, -1 for GL2.
inline int torus_sign(GroupId id) { return id == GroupId::kGL2 ? -1 : 1; }

using TorusFn = std::map<TorusPoint, CycInt>;

// ---------------------------------------------------------------------------
// Torus kernels.

// sign * sum over the rho-fiber of psi(a + b + c); zero off the image.
inline TorusFn phi_T_pushforward(const Ctx& C, GroupId id, bool sigma) {
  const FieldCtx& F = C.F();
  const QuadExtCtx& E = C.E();
  TorusFn out;
  for (const TorusPoint& t : torus_points(C, id, sigma)) out.emplace(t, C.zero());
  const int sign = torus_sign(id);
  for (const T3Unit& u : t3_units(C, sigma)) {
    auto it = out.find(rho(C, id, u));
    if (it == out.end()) throw std::logic_error("rho lands outside the enumerated torus");
    Elt tr = sigma ? E.trace(u.a) : F.add(E.to_base(u.a), E.to_base(u.c));
    it->second.add_zeta(C.psi_exp(F.add(tr, u.b)), sign);
  }
  return out;
}

namespace detail {

// -sum_{s, e} psi(s (tr + 2 e r)).
inline CycInt signed_pair_sum(const Ctx& C, Elt tr, Elt r) {
  const FieldCtx& F = C.F();
  Elt two_r = F.add(r, r);
  return -(C.unit_sum(F.add(tr, two_r)) + C.unit_sum(F.sub(tr, two_r)));
}

// Some y in F_{q^2}^x with y^{1-q} = u (N(u) = 1).
inline QElt hilbert90(const Ctx& C, QElt u) {
  const QuadExtCtx& E = C.E();
  for (QElt y : E.elements()) {
    if (E.is_zero(y)) continue;
    if (E.mul(y, E.inv(E.frob(y))) == u) return y;
  }
  throw std::domain_error("element without a Hilbert 90 preimage");
}

}  // namespace detail

// Closed forms on every torus point.
inline CycInt phi_T_closed(const Ctx& C, GroupId id, bool sigma, const TorusPoint& pt) {
  const FieldCtx& F = C.F();
  const QuadExtCtx& E = C.E();
  const Elt two = F.from_int(2);
  switch (id) {
    case GroupId::kSL2: {
      if (!sigma) {
        Elt t = E.to_base(pt.first);
        return -C.unit_sum(F.add(F.add(t, F.inv(t)), two));
      }
      return -C.unit_sum(F.add(E.trace(pt.first), two));
    }
    case GroupId::kPGL2: {
      if (!sigma) {
        Elt t = E.to_base(pt.first);
        auto r = F.sqrt(t);
        if (!r) return C.zero();
        return detail::signed_pair_sum(C, F.add(t, F.one()), *r);
      }
      QElt y = detail::hilbert90(C, pt.first);
      auto r = F.sqrt(E.norm(y));
      if (!r) return C.zero();
      return detail::signed_pair_sum(C, E.trace(y), *r);
    }
    case GroupId::kGL2: {
      Elt d, tr;
      bool central;
      if (!sigma) {
        Elt t1 = E.to_base(pt.first), t2 = E.to_base(pt.second);
        d = F.mul(t1, t2);
        tr = F.add(t1, t2);
        central = t1 == t2;
      } else {
        d = E.norm(pt.first);
        tr = E.trace(pt.first);
        central = E.in_base(pt.first);
      }
      auto r = F.sqrt(d);
      if (!r) return C.zero();
      if (!central) return -C.Phi(tr, *r, F.one());
      Elt lambda = E.to_base(pt.first);
      CycInt k = sigma ? C.kappa_prime(lambda) : C.kappa(lambda);
      return -k - C.integer(1) - C.Phi(F.add(lambda, lambda), lambda, F.one());
    }
    case GroupId::kGL2Char2: break;
  }
  throw std::invalid_argument("no odd torus kernel for gl2-char2");
}

// Case formulas evaluated from one rho-preimage (a, b, c) or (a', b).
inline CycInt phi_T_case(const Ctx& C, GroupId id, bool sigma, const T3Unit& u) {
  const FieldCtx& F = C.F();
  const QuadExtCtx& E = C.E();
  switch (id) {
    case GroupId::kSL2:
      if (!sigma) return -C.unit_sum(F.add(E.to_base(u.a), E.to_base(u.c)));
      return -C.unit_sum(E.trace(u.a));
    case GroupId::kPGL2: {
      CycInt r = C.zero();
      for (int e : {1, -1}) {
        QElt w = e == 1 ? E.add(u.a, u.c) : E.sub(u.a, u.c);
        r -= C.unit_sum(E.to_base(E.mul(w, w)));
      }
      return r;
    }
    case GroupId::kGL2: {
      QElt plus = E.add(u.a, u.c), minus = E.sub(u.a, u.c);
      auto sis = [&](QElt w) {
        return C.shifted_inverse_square_sum(F.mul(E.to_base(E.mul(w, w)), u.b));
      };
      if (!E.is_zero(plus) && !E.is_zero(minus)) return -(sis(plus) + sis(minus));
      if (E.is_zero(minus)) {
        // a = c (split) or a' in F_q (sigma): the twisted/epsilon = -1 term collapses
        return -(sis(plus) + (sigma ? C.kappa_prime(u.b) : C.kappa(u.b)));
      }
      return -(sis(minus) + C.kappa(u.b));
    }
    case GroupId::kGL2Char2: break;
  }
  throw std::invalid_argument("no odd torus kernel for gl2-char2");
}

// ---------------------------------------------------------------------------
// Group kernels phi^G on matrices.

inline CycInt phi_G_sl2(const Ctx& C, const Mat& g) {
  const FieldCtx& F = C.F();
  if (F.is_zero(F.add(mat_trace(F, g), F.from_int(2)))) {
    return C.integer(-static_cast<std::int64_t>(C.q() - 1));
  }
  return C.integer(1);
}

// g is any invertible matrix representing its PGL2 class.
inline CycInt phi_G_pgl2(const Ctx& C, const Mat& g) {
  const FieldCtx& F = C.F();
  auto r = F.sqrt(mat_det(F, g));
  if (!r) return C.zero();
  return detail::signed_pair_sum(C, mat_trace(F, g), *r);
}

inline CycInt phi_G_gl2(const Ctx& C, const Mat& g) {
  const FieldCtx& F = C.F();
  auto r = F.sqrt(mat_det(F, g));
  if (!r) return C.zero();
  CycInt v = -C.Phi(mat_trace(F, g), *r, F.one());
  if (mat_is_scalar(g)) v -= C.gauss_S(g[0]) * static_cast<std::int64_t>(C.q());
  return v;
}

// Eigenvalue data of a 2x2 matrix over F_q.
struct Eigen {
  enum Kind { kCentral, kNonSemisimple, kSplit, kElliptic } kind;
  Elt t1{}, t2{};  // split / repeated eigenvalues
  QElt y{};        // an eigenvalue in F_{q^2} (elliptic)
};

inline Eigen eigen(const Ctx& C, const Mat& g) {
  const FieldCtx& F = C.F();
  const QuadExtCtx& E = C.E();
  Elt tr = mat_trace(F, g), d = mat_det(F, g);
  Elt disc = F.sub(F.square(tr), F.mul(F.from_int(4), d));
  Eigen e{};
  Elt half = F.inv(F.from_int(2));
  if (F.is_zero(disc)) {
    e.kind = mat_is_scalar(g) ? Eigen::kCentral : Eigen::kNonSemisimple;
    e.t1 = e.t2 = F.mul(tr, half);
    return e;
  }
  if (auto r = F.sqrt(disc)) {
    e.kind = Eigen::kSplit;
    e.t1 = F.mul(F.add(tr, *r), half);
    e.t2 = F.mul(F.sub(tr, *r), half);
    return e;
  }
  e.kind = Eigen::kElliptic;
  for (QElt y : E.elements()) {
    if (E.trace(y) == tr && E.norm(y) == d && !E.in_base(y)) {
      e.y = y;
      return e;
    }
  }
  throw std::logic_error("elliptic matrix without eigenvalue in F_{q^2}");
}

// GL2 phi^G assembled from the torus kernels: central classes
// ((q+1) phi^T + (1-q) phi^{T_sigma}) / 2, regular split phi^T, elliptic
// phi^{T_sigma}, non-semisimple (phi^T + phi^{T_sigma}) / 2 at the
// semisimple part.
inline CycNum phi_G_gl2_from_tori(const Ctx& C, const Mat& g, const TorusFn& phiT,
                                  const TorusFn& phiTs) {
  const QuadExtCtx& E = C.E();
  const auto q = static_cast<std::int64_t>(C.q());
  Eigen e = eigen(C, g);
  auto at = [](const TorusFn& f, TorusPoint t) {
    auto it = f.find(t);
    if (it == f.end()) throw std::out_of_range("torus point missing");
    return CycNum(it->second);
  };
  switch (e.kind) {
    case Eigen::kSplit:
      return at(phiT, {E.embed(e.t1), E.embed(e.t2)});
    case Eigen::kElliptic:
      return at(phiTs, {e.y, E.frob(e.y)});
    case Eigen::kCentral:
    case Eigen::kNonSemisimple: {
      QElt l = E.embed(e.t1);
      CycNum a = at(phiT, {l, l}), b = at(phiTs, {l, l});
      if (e.kind == Eigen::kCentral) {
        return (a * Rational(q + 1) + b * Rational(1 - q)) * make_rational(1, 2);
      }
      return (a + b) * make_rational(1, 2);
    }
  }
  return CycNum(C.p());
}

// Characteristic 2: phi^G(g) = -sum_s psi(s + s^-2 Tr g).
inline CycInt phi_G_char2(const Ctx& C, const Mat& g) {
  return -C.shifted_inverse_square_sum(mat_trace(C.F(), g));
}

// Characteristic 2 table on a group point [x', b] with x = iota2(x'):
// -kappa(b) when Tr x = 0 (central and non-semisimple columns), otherwise
// -sum_s psi(s + s^-2 b Tr x).
inline CycInt phi_G_char2_table(const Ctx& C, const StackPoint& u) {
  const FieldCtx& F = C.F();
  Elt tr = mat_trace(F, mat_iota2(F, u.x));
  if (F.is_zero(tr)) return -C.kappa(u.b);
  return -C.shifted_inverse_square_sum(F.mul(u.b, tr));
}

// phi^G on a point of a group presentation.
inline CycInt phi_G_point(const Ctx& C, GroupId id, const StackPoint& u) {
  const Mat g = group_matrix(C, id, u);
  switch (id) {
    case GroupId::kSL2: return phi_G_sl2(C, g);
    case GroupId::kPGL2: return u.sector == kTwisted ? C.zero() : phi_G_pgl2(C, g);
    case GroupId::kGL2: return phi_G_gl2(C, g);
    case GroupId::kGL2Char2: return phi_G_char2(C, g);
  }
  return C.zero();
}

// Multiplication of group elements as matrices (PGL2 normalized).
inline Mat group_mul(const Ctx& C, GroupId id, const Mat& a, const Mat& b) {
  Mat m = mat_mul(C.F(), a, b);
  return id == GroupId::kPGL2 ? pgl2_normalize(C.F(), m) : m;
}

inline std::vector<Mat> group_matrices(const Ctx& C, GroupId id) {
  switch (id) {
    case GroupId::kSL2: return sl2_matrices(C.F());
    case GroupId::kPGL2: return pgl2_matrices(C.F());
    case GroupId::kGL2:
    case GroupId::kGL2Char2: return gl2_matrices(C.F());
  }
  return {};
}

inline CycInt phi_G_matrix(const Ctx& C, GroupId id, const Mat& g) {
  switch (id) {
    case GroupId::kSL2: return phi_G_sl2(C, g);
    case GroupId::kPGL2: return phi_G_pgl2(C, g);
    case GroupId::kGL2: return phi_G_gl2(C, g);
    case GroupId::kGL2Char2: return phi_G_char2(C, g);
  }
  return C.zero();
}

// A scalar lambda I and lambda I + E12 with different phi^G values, if any.
inline std::optional<std::pair<Mat, Mat>> gl2_non_descent_witness(const Ctx& C) {
  const FieldCtx& F = C.F();
  for (Elt l : F.units()) {
    Mat s = mat_diag(F, l, l);
    Mat n = s;
    n[1] = F.one();
    if (!(phi_G_gl2(C, s) == phi_G_gl2(C, n))) return std::make_pair(s, n);
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Stack kernels.

inline CycInt phi_stack_sl2(const Ctx& C, const StackPoint& u) {
  const FieldCtx& F = C.F();
  Elt two_a = F.add(u.alpha, u.alpha);
  return C.unit_sum(F.add(mat_trace(F, u.x), two_a)) * C.unit_sum(u.b);
}

inline CycInt phi_stack_pgl2(const Ctx& C, const StackPoint& u) {
  if (u.sector == kTwisted) return C.zero();
  const FieldCtx& F = C.F();
  Elt tr = mat_trace(F, u.x), two_a = F.add(u.alpha, u.alpha);
  return (C.unit_sum(F.add(tr, two_a)) + C.unit_sum(F.sub(tr, two_a))) * C.unit_sum(u.b);
}

// GL2 table: zero on the twisted sector; scalar, regular, non-semisimple
// columns by the shape of x.
inline CycInt phi_stack_gl2(const Ctx& C, const StackPoint& u) {
  if (u.sector == kTwisted) return C.zero();
  const FieldCtx& F = C.F();
  const auto q = static_cast<std::int64_t>(C.q());
  const bool b0 = F.is_zero(u.b);
  const CycInt Phi = C.Phi(mat_trace(F, u.x), u.alpha, u.b);
  const CycInt qdelta = C.integer(b0 ? q : 0);
  Elt tr = mat_trace(F, u.x);
  Elt disc = F.sub(F.square(tr), F.mul(F.from_int(4), mat_det(F, u.x)));
  if (!F.is_zero(disc)) return -Phi;
  Elt lambda = F.mul(tr, F.inv(F.from_int(2)));
  if (mat_is_scalar(u.x)) {
    if (F.is_zero(lambda)) {
      CycInt inner = (b0 ? qdelta : C.gauss_S(u.b) * q) - C.integer(1);
      return inner * -2;
    }
    CycInt gauss = b0 ? C.zero() : C.gauss_S(F.mul(lambda, u.b)) * q;
    return -(gauss + qdelta + Phi);
  }
  if (F.is_zero(lambda)) return (qdelta - C.integer(1)) * -2;
  return -(qdelta + Phi);
}

// Characteristic 2: -sum_s psi(s Tr x' + s^-2 b).
inline CycInt phi_stack_char2(const Ctx& C, const StackPoint& u) {
  const FieldCtx& F = C.F();
  Elt tr = mat_trace(F, u.x);
  CycInt r(C.p());
  for (Elt s : F.units()) {
    r.add_zeta(C.psi_exp(F.add(F.mul(s, tr), F.mul(F.inv(F.square(s)), u.b))), -1);
  }
  return r;
}

inline CycInt phi_stack(const Ctx& C, GroupId id, const StackPoint& u) {
  switch (id) {
    case GroupId::kSL2: return phi_stack_sl2(C, u);
    case GroupId::kPGL2: return phi_stack_pgl2(C, u);
    case GroupId::kGL2: return phi_stack_gl2(C, u);
    case GroupId::kGL2Char2: return phi_stack_char2(C, u);
  }
  return C.zero();
}

// Points where the GL2 tables are not constant along orbits.
inline bool gl2_exceptional(const Ctx& C, const StackPoint& u) {
  const FieldCtx& F = C.F();
  return u.sector == kPlain && u.x == Mat{} && F.is_zero(u.alpha) && !F.is_zero(u.b);
}

// GL2 torus-stack table, pointwise on diagonal points.
inline CycInt phi_calT_gl2(const Ctx& C, const StackPoint& u) {
  if (u.sector == kTwisted) return C.zero();
  const FieldCtx& F = C.F();
  if (u.x[1].v != 0 || u.x[2].v != 0) throw std::invalid_argument("torus point must be diagonal");
  Elt x1 = u.x[0], x2 = u.x[3];
  if (x1 != x2) return -C.Phi(F.add(x1, x2), u.alpha, u.b);
  if (F.is_zero(x1)) return C.kappa(u.b) * -2;
  return -C.kappa(F.mul(x1, u.b)) - C.integer(1) - C.Phi(F.add(x1, x2), u.alpha, u.b);
}

inline std::vector<CycInt> tabulate(const Presentation& P,
                                    const std::function<CycInt(const StackPoint&)>& phi) {
  std::vector<CycInt> out;
  out.reserve(P.action.size());
  for (const StackPoint& u : P.action.points()) out.push_back(phi(u));
  return out;
}

inline ClassFn class_values(const FiniteGroupoid& G, const std::vector<CycInt>& per_point) {
  ClassFn out;
  out.reserve(G.size());
  for (const auto& c : G.classes()) out.emplace_back(per_point[c.rep]);
  return out;
}

// K(u, v) = phi(u v) on a presentation. P must outlive the kernel.
inline Kernel product_kernel(const Presentation& P, std::vector<CycInt> phi,
                             const std::function<bool(const StackPoint&)>& exceptional = {}) {
  const Presentation* pp = &P;
  Kernel k = multiplicative_kernel(std::move(phi), [pp](std::uint32_t a, std::uint32_t b) {
    return pp->mul(a, b);
  });
  if (exceptional) {
    k.exceptional.assign(P.action.size(), 0);
    for (std::uint32_t i = 0; i < P.action.size(); ++i) {
      k.exceptional[i] = exceptional(P.action.point(i)) ? 1 : 0;
    }
  }
  return k;
}

inline Kernel stack_kernel(const Presentation& P) {
  const Ctx& C = P.ctx;
  GroupId id = P.id;
  auto phi = tabulate(P, [&](const StackPoint& u) { return phi_stack(C, id, u); });
  if (id == GroupId::kGL2) {
    return product_kernel(P, std::move(phi), [&C](const StackPoint& u) {
      return gl2_exceptional(C, u);
    });
  }
  return product_kernel(P, std::move(phi));
}

inline Kernel calT_kernel_gl2(const Presentation& T) {
  const Ctx& C = T.ctx;
  auto phi = tabulate(T, [&](const StackPoint& u) { return phi_calT_gl2(C, u); });
  return product_kernel(T, std::move(phi),
                        [&C](const StackPoint& u) { return gl2_exceptional(C, u); });
}

// ---------------------------------------------------------------------------
// Torus-stack kernel on [t3 / Ker rho]: the quotient pushforward of
// psi(a + b + c) from t3^F, zero on the twisted sector (outside the image).
inline std::vector<CycInt> phi_t3(const T3Presentation& P) {
  const Ctx& C = P.ctx;
  const FieldCtx& F = C.F();
  std::vector<CycInt> out(P.action.size(), C.zero());
  for (std::uint32_t i = 0; i < P.action.size(); ++i) {
    if (P.action.sector(i) != kPlain) continue;
    for (std::size_t g = 0; g < P.action.group_order(); ++g) {
      const T3Point& w = P.action.point(P.action.act(g, i));
      out[i].add_zeta(C.psi_exp(F.add(F.add(w.a, w.b), w.c)));
    }
  }
  return out;
}

// P must outlive the kernel.
inline Kernel t3_kernel(const T3Presentation& P) {
  const T3Presentation* pp = &P;
  return multiplicative_kernel(phi_t3(P),
                               [pp](std::uint32_t a, std::uint32_t b) { return pp->mul(a, b); });
}

// tilde rho pushed forward on classes: target must be the torus stack
// presentation of the same group.
inline ClassFn tilde_rho_pushforward(const T3Presentation& S, const Presentation& T,
                                     const ClassFn& f) {
  return pushforward(
      S.groupoid, T.groupoid,
      [&](std::uint32_t i) { return T.action.at(tilde_rho(S.ctx, S.action.point(i))); }, f,
      S.ctx.p());
}

}  // namespace bkf

#endif  // BKFOURIER_KERNELS_HPP_
