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

// Point sets and acting groups: the [x, alpha, b] presentations of SL2,
// PGL2 and GL2 and of their stacks, the affine torus models t3 and their
// quotients, the tori T and T_sigma with the maps rho, and plain matrix
// groups used as independent references.
//
// A point carries alpha either in F_q (plain sector) or in the twisted
// line {a in F_{q^2} : a^q = -a} = F_q * s0 (twisted sector). Twisted alpha
// is stored through its coordinate r, alpha = r * s0.

#ifndef BKFOURIER_GROUPS_HPP_
#define BKFOURIER_GROUPS_HPP_

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bkfourier/characters.hpp"
#include "bkfourier/field.hpp"
#include "bkfourier/groupoid.hpp"

namespace bkf {

enum class GroupId { kSL2, kPGL2, kGL2, kGL2Char2 };

inline std::string group_name(GroupId g) {
  switch (g) {
    case GroupId::kSL2: return "sl2";
    case GroupId::kPGL2: return "pgl2";
    case GroupId::kGL2: return "gl2";
    case GroupId::kGL2Char2: return "gl2-char2";
  }
  return "?";
}

constexpr int kPlain = 0;
constexpr int kTwisted = 1;

class LimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kDefaultPointLimit = 100000;

// ---------------------------------------------------------------------------
// 2x2 matrices, row-major (x00, x01, x10, x11).

using Mat = std::array<Elt, 4>;

inline Mat mat_mul(const FieldCtx& F, const Mat& a, const Mat& b) {
  return {F.add(F.mul(a[0], b[0]), F.mul(a[1], b[2])), F.add(F.mul(a[0], b[1]), F.mul(a[1], b[3])),
          F.add(F.mul(a[2], b[0]), F.mul(a[3], b[2])), F.add(F.mul(a[2], b[1]), F.mul(a[3], b[3]))};
}
inline Elt mat_det(const FieldCtx& F, const Mat& a) {
  return F.sub(F.mul(a[0], a[3]), F.mul(a[1], a[2]));
}
inline Elt mat_trace(const FieldCtx& F, const Mat& a) { return F.add(a[0], a[3]); }
inline Mat mat_scale(const FieldCtx& F, Elt s, const Mat& a) {
  return {F.mul(s, a[0]), F.mul(s, a[1]), F.mul(s, a[2]), F.mul(s, a[3])};
}
inline Mat mat_identity(const FieldCtx& F) { return {F.one(), F.zero(), F.zero(), F.one()}; }
inline Mat mat_diag(const FieldCtx& F, Elt a, Elt d) { return {a, F.zero(), F.zero(), d}; }
inline bool mat_is_scalar(const Mat& a) {
  return a[1].v == 0 && a[2].v == 0 && a[0] == a[3];
}
// Transpose of the cofactor matrix: (a b; c d) -> (d -b; -c a).
inline Mat mat_iota(const FieldCtx& F, const Mat& a) {
  return {a[3], F.neg(a[1]), F.neg(a[2]), a[0]};
}
// Entrywise squaring (characteristic 2).
inline Mat mat_iota2(const FieldCtx& F, const Mat& a) {
  return {F.square(a[0]), F.square(a[1]), F.square(a[2]), F.square(a[3])};
}

inline std::vector<Mat> all_matrices(const FieldCtx& F) {
  std::vector<Mat> out;
  const unsigned q = F.order();
  out.reserve(std::size_t(q) * q * q * q);
  for (std::uint32_t a = 0; a < q; ++a)
    for (std::uint32_t b = 0; b < q; ++b)
      for (std::uint32_t c = 0; c < q; ++c)
        for (std::uint32_t d = 0; d < q; ++d) out.push_back({Elt{a}, Elt{b}, Elt{c}, Elt{d}});
  return out;
}

inline std::vector<Mat> gl2_matrices(const FieldCtx& F) {
  std::vector<Mat> out;
  for (const Mat& m : all_matrices(F)) {
    if (!F.is_zero(mat_det(F, m))) out.push_back(m);
  }
  return out;
}

inline std::vector<Mat> sl2_matrices(const FieldCtx& F) {
  std::vector<Mat> out;
  for (const Mat& m : all_matrices(F)) {
    if (mat_det(F, m) == F.one()) out.push_back(m);
  }
  return out;
}

// Representative of the PGL2 class of an invertible matrix: scaled so that
// its first nonzero entry is 1.
inline Mat pgl2_normalize(const FieldCtx& F, const Mat& m) {
  for (Elt e : m) {
    if (!F.is_zero(e)) return mat_scale(F, F.inv(e), m);
  }
  throw std::domain_error("zero matrix has no projective class");
}

inline std::vector<Mat> pgl2_matrices(const FieldCtx& F) {
  std::vector<Mat> out;
  for (const Mat& m : gl2_matrices(F)) {
    if (pgl2_normalize(F, m) == m) out.push_back(m);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Stack points [x, alpha, b].

struct StackPoint {
  Mat x{};
  Elt alpha{};  // alpha itself (plain) or r with alpha = r s0 (twisted)
  int sector = kPlain;
  Elt b{};
  friend auto operator<=>(const StackPoint&, const StackPoint&) = default;
};

// alpha^2 as an element of F_q.
inline Elt alpha_square(const Ctx& C, const StackPoint& u) {
  const FieldCtx& F = C.F();
  Elt a2 = F.square(u.alpha);
  return u.sector == kPlain ? a2 : F.mul(a2, C.n());
}

// Product of alphas with the sector rule plain*plain = plain,
// plain*twisted = twisted, twisted*twisted = plain.
inline std::pair<Elt, int> alpha_product(const Ctx& C, Elt a, int sa, Elt b, int sb) {
  const FieldCtx& F = C.F();
  Elt r = F.mul(a, b);
  if (sa == kTwisted && sb == kTwisted) return {F.mul(r, C.n()), kPlain};
  return {r, sa ^ sb};
}

inline StackPoint multiply(const Ctx& C, const StackPoint& u, const StackPoint& v) {
  const FieldCtx& F = C.F();
  StackPoint w;
  w.x = mat_mul(F, u.x, v.x);
  auto [a, s] = alpha_product(C, u.alpha, u.sector, v.alpha, v.sector);
  w.alpha = a;
  w.sector = s;
  w.b = F.mul(u.b, v.b);
  return w;
}

inline bool satisfies_det_condition(const Ctx& C, const StackPoint& u) {
  return mat_det(C.F(), u.x) == alpha_square(C, u);
}

inline std::string serialize(const Ctx& C, const StackPoint& u) {
  const FieldCtx& F = C.F();
  std::string s = "(";
  for (int i = 0; i < 4; ++i) {
    if (i) s += ',';
    s += F.to_string(u.x[i]);
  }
  s += ';' + F.to_string(u.alpha) + (u.sector == kPlain ? "p" : "t") + ';';
  s += F.to_string(u.b) + ')';
  return s;
}

// ---------------------------------------------------------------------------
// Acting groups. Elements are encoded as indices; units of F_q are indexed
// by v - 1.

struct GroupElem {
  Elt s{};      // GL1 factor acting on x (SL2/PGL2/char 2), or t for GL2
  Elt t{};      // GL1 factor acting on b (SL2/PGL2)
  int eps = 1;  // mu_2 factor
};

class StackGroup {
 public:
  StackGroup() = default;
  StackGroup(GroupId id, const FieldCtx& F)
      : id_(id), F_(std::make_shared<const FieldCtx>(F)) {
    const std::size_t u = F.order() - 1;
    switch (id) {
      case GroupId::kSL2: order_ = u * u; break;
      case GroupId::kPGL2: order_ = 2 * u * u; break;
      case GroupId::kGL2: order_ = 2 * u; break;
      case GroupId::kGL2Char2: order_ = u; break;
    }
  }

  GroupId id() const { return id_; }
  std::size_t order() const { return order_; }

  GroupElem decode(std::size_t g) const {
    const std::size_t u = F_->order() - 1;
    GroupElem e;
    e.t = F_->one();
    switch (id_) {
      case GroupId::kSL2:
        e.s = Elt{static_cast<std::uint32_t>(g / u + 1)};
        e.t = Elt{static_cast<std::uint32_t>(g % u + 1)};
        break;
      case GroupId::kPGL2:
        e.eps = (g % 2) ? -1 : 1;
        e.s = Elt{static_cast<std::uint32_t>((g / 2) / u + 1)};
        e.t = Elt{static_cast<std::uint32_t>((g / 2) % u + 1)};
        break;
      case GroupId::kGL2:
        e.eps = (g % 2) ? -1 : 1;
        e.s = Elt{static_cast<std::uint32_t>(g / 2 + 1)};
        break;
      case GroupId::kGL2Char2:
        e.s = Elt{static_cast<std::uint32_t>(g + 1)};
        break;
    }
    return e;
  }

  std::size_t encode(const GroupElem& e) const {
    const std::size_t u = F_->order() - 1;
    const std::size_t s = e.s.v - 1, t = e.t.v - 1, eps = e.eps == 1 ? 0 : 1;
    switch (id_) {
      case GroupId::kSL2: return s * u + t;
      case GroupId::kPGL2: return (s * u + t) * 2 + eps;
      case GroupId::kGL2: return s * 2 + eps;
      case GroupId::kGL2Char2: return s;
    }
    return 0;
  }

  std::size_t mul(std::size_t g, std::size_t h) const {
    GroupElem a = decode(g), b = decode(h);
    GroupElem c;
    c.s = F_->mul(a.s, b.s);
    c.t = F_->mul(a.t, b.t);
    c.eps = a.eps * b.eps;
    return encode(c);
  }

  std::size_t identity() const {
    GroupElem e;
    e.s = F_->one();
    e.t = F_->one();
    return encode(e);
  }

  GroupSpec spec() const {
    GroupSpec g;
    g.order = order_;
    g.identity = identity();
    StackGroup self = *this;
    g.mul = [self](std::size_t a, std::size_t b) { return self.mul(a, b); };
    return g;
  }

 private:
  GroupId id_ = GroupId::kSL2;
  std::shared_ptr<const FieldCtx> F_;
  std::size_t order_ = 1;
};

inline Elt signed_elt(const FieldCtx& F, int eps, Elt a) { return eps == 1 ? a : F.neg(a); }

// Action on stack points:
//   SL2   (s, t):      [s x, s alpha, t b]
//   PGL2  (s, t, e):   [s x, e s alpha, t b]
//   GL2   (t, e):      [t x, e t alpha, t^-1 b]
//   char 2 (s):        [s x', s alpha, s^-2 b]
inline StackPoint act_on(const FieldCtx& F, GroupId id, const GroupElem& g, const StackPoint& u) {
  StackPoint w = u;
  w.x = mat_scale(F, g.s, u.x);
  w.alpha = signed_elt(F, g.eps, F.mul(g.s, u.alpha));
  switch (id) {
    case GroupId::kSL2:
    case GroupId::kPGL2: w.b = F.mul(g.t, u.b); break;
    case GroupId::kGL2: w.b = F.mul(F.inv(g.s), u.b); break;
    case GroupId::kGL2Char2: w.b = F.mul(F.inv(F.square(g.s)), u.b); break;
  }
  return w;
}

// A presentation: point set, acting group and the resulting groupoid.
struct Presentation {
  GroupId id = GroupId::kSL2;
  Ctx ctx;
  StackGroup group;
  GroupAction<StackPoint> action;
  FiniteGroupoid groupoid;

  std::uint32_t mul(std::uint32_t i, std::uint32_t j) const {
    return action.at(multiply(ctx, action.point(i), action.point(j)));
  }
  std::string serialize_point(std::uint32_t i) const { return serialize(ctx, action.point(i)); }
};

namespace detail {

inline void require_parity(const Ctx& C, GroupId id) {
  if (id == GroupId::kGL2Char2) {
    if (C.odd()) throw std::invalid_argument("gl2-char2 needs characteristic 2");
  } else if (!C.odd()) {
    throw std::invalid_argument(group_name(id) + " needs odd characteristic");
  }
}

// Solutions alpha (with sector) of alpha^2 = d. Plain solutions, then
// twisted ones (coordinates r with r^2 n = d), including alpha = 0 in both
// sectors when d = 0.
inline std::vector<std::pair<Elt, int>> alpha_roots(const Ctx& C, Elt d, bool twisted) {
  const FieldCtx& F = C.F();
  std::vector<std::pair<Elt, int>> out;
  if (auto r = F.sqrt(d)) {
    out.push_back({*r, kPlain});
    if (!F.is_zero(*r)) out.push_back({F.neg(*r), kPlain});
  }
  if (twisted) {
    if (auto r = F.sqrt(F.div(d, C.n()))) {
      out.push_back({*r, kTwisted});
      if (!F.is_zero(*r)) out.push_back({F.neg(*r), kTwisted});
    }
  }
  return out;
}

inline Presentation build(const Ctx& C, GroupId id, std::vector<StackPoint> pts,
                          std::size_t limit) {
  if (pts.size() > limit) {
    throw LimitError(group_name(id) + " at q=" + std::to_string(C.q()) + " has " +
                     std::to_string(pts.size()) + " points, over the limit " +
                     std::to_string(limit));
  }
  Presentation P{id, C, StackGroup(id, C.F()), {}, {}};
  StackGroup grp = P.group;
  const FieldCtx& F = C.F();
  P.action = GroupAction<StackPoint>(
      std::move(pts), grp.spec(),
      [&grp, &F, id](std::size_t g, const StackPoint& u) { return act_on(F, id, grp.decode(g), u); },
      [](const StackPoint& u) { return u.sector; });
  P.groupoid = FiniteGroupoid(P.action);
  return P;
}

}  // namespace detail

// Points of the stack G: every (x, alpha, b) with det x = alpha^2 (all of
// gl2 x gl1 in characteristic 2, alpha = sqrt(det x) there).
inline std::vector<StackPoint> enumerate_stack_points(const Ctx& C, GroupId id,
                                                      bool diagonal_only = false) {
  detail::require_parity(C, id);
  const FieldCtx& F = C.F();
  const bool twisted = id == GroupId::kPGL2 || id == GroupId::kGL2;
  std::vector<StackPoint> pts;
  for (const Mat& x : all_matrices(F)) {
    if (diagonal_only && (x[1].v != 0 || x[2].v != 0)) continue;
    Elt d = mat_det(F, x);
    std::vector<std::pair<Elt, int>> roots;
    if (id == GroupId::kGL2Char2) {
      roots.push_back({*F.sqrt(d), kPlain});
    } else {
      roots = detail::alpha_roots(C, d, twisted);
    }
    for (auto [a, s] : roots) {
      for (Elt b : F.elements()) pts.push_back(StackPoint{x, a, s, b});
    }
  }
  return pts;
}

inline Presentation stack_presentation(const Ctx& C, GroupId id,
                                       std::size_t limit = kDefaultPointLimit) {
  return detail::build(C, id, enumerate_stack_points(C, id), limit);
}

// Torus stack T: the diagonal part of the stack with the same group.
inline Presentation torus_stack_presentation(const Ctx& C, GroupId id,
                                             std::size_t limit = kDefaultPointLimit) {
  return detail::build(C, id, enumerate_stack_points(C, id, true), limit);
}

// The open locus x invertible, alpha != 0, b != 0: a presentation of the
// finite group itself.
inline bool is_group_point(const Ctx& C, const StackPoint& u) {
  const FieldCtx& F = C.F();
  return !F.is_zero(mat_det(F, u.x)) && !F.is_zero(u.b);
}

inline Presentation group_presentation(const Ctx& C, GroupId id,
                                       std::size_t limit = kDefaultPointLimit) {
  std::vector<StackPoint> pts;
  for (const StackPoint& u : enumerate_stack_points(C, id)) {
    if (is_group_point(C, u)) pts.push_back(u);
  }
  return detail::build(C, id, std::move(pts), limit);
}

// The identity point [I, 1, 1].
inline StackPoint identity_point(const Ctx& C) {
  const FieldCtx& F = C.F();
  return StackPoint{mat_identity(F), F.one(), kPlain, F.one()};
}

// Matrix of the group element represented by a point of a group
// presentation: SL2 x/alpha, PGL2 the normalized class of x, GL2 x b,
// char 2 iota2(x') b.
inline Mat group_matrix(const Ctx& C, GroupId id, const StackPoint& u) {
  const FieldCtx& F = C.F();
  switch (id) {
    case GroupId::kSL2: return mat_scale(F, F.inv(u.alpha), u.x);
    case GroupId::kPGL2: return pgl2_normalize(F, u.x);
    case GroupId::kGL2: return mat_scale(F, u.b, u.x);
    case GroupId::kGL2Char2: return mat_scale(F, u.b, mat_iota2(F, u.x));
  }
  return u.x;
}

// ---------------------------------------------------------------------------
// The affine torus model t3 = {(a, b, c)} and its quotient by Ker(rho).
// For PGL2 and GL2 the quotient has a twisted sector where c = r s0.

struct T3Point {
  Elt a{};
  Elt b{};
  Elt c{};  // c itself (plain) or r with c = r s0 (twisted)
  int sector = kPlain;
  friend auto operator<=>(const T3Point&, const T3Point&) = default;
};

inline T3Point multiply(const Ctx& C, const T3Point& u, const T3Point& v) {
  const FieldCtx& F = C.F();
  auto [c, s] = alpha_product(C, u.c, u.sector, v.c, v.sector);
  return T3Point{F.mul(u.a, v.a), F.mul(u.b, v.b), c, s};
}

inline T3Point negate(const FieldCtx& F, const T3Point& u) {
  return T3Point{F.neg(u.a), F.neg(u.b), F.neg(u.c), u.sector};
}

inline std::string serialize(const Ctx& C, const T3Point& u) {
  const FieldCtx& F = C.F();
  return "(" + F.to_string(u.a) + "," + F.to_string(u.b) + "," + F.to_string(u.c) +
         (u.sector == kPlain ? "p" : "t") + ")";
}

// Ker(rho) acting on t3, indexed through StackGroup elements:
//   SL2   (s, t)    -> (s, t, s)
//   PGL2  (s, t, e) -> (s, t, e s)
//   GL2   (s, e)    -> (s, s^-2, e s)
inline T3Point act_on(const FieldCtx& F, GroupId id, const GroupElem& g, const T3Point& u) {
  T3Point w = u;
  w.a = F.mul(g.s, u.a);
  w.c = signed_elt(F, g.eps, F.mul(g.s, u.c));
  w.b = id == GroupId::kGL2 ? F.mul(F.inv(F.square(g.s)), u.b) : F.mul(g.t, u.b);
  return w;
}

struct T3Presentation {
  GroupId id = GroupId::kSL2;
  Ctx ctx;
  StackGroup group;
  GroupAction<T3Point> action;
  FiniteGroupoid groupoid;

  std::uint32_t mul(std::uint32_t i, std::uint32_t j) const {
    return action.at(multiply(ctx, action.point(i), action.point(j)));
  }
  std::uint32_t neg(std::uint32_t i) const {
    return action.at(negate(ctx.F(), action.point(i)));
  }
  std::string serialize_point(std::uint32_t i) const { return serialize(ctx, action.point(i)); }
};

inline T3Presentation t3_presentation(const Ctx& C, GroupId id) {
  C.require_odd();
  if (id == GroupId::kGL2Char2) throw std::invalid_argument("no odd torus model for gl2-char2");
  const FieldCtx& F = C.F();
  const bool twisted = id != GroupId::kSL2;
  std::vector<T3Point> pts;
  for (Elt a : F.elements())
    for (Elt b : F.elements())
      for (Elt c : F.elements()) {
        pts.push_back(T3Point{a, b, c, kPlain});
        if (twisted) pts.push_back(T3Point{a, b, c, kTwisted});
      }
  T3Presentation P{id, C, StackGroup(id, F), {}, {}};
  StackGroup grp = P.group;
  P.action = GroupAction<T3Point>(
      std::move(pts), grp.spec(),
      [&grp, &F, id](std::size_t g, const T3Point& u) { return act_on(F, id, grp.decode(g), u); },
      [](const T3Point& u) { return u.sector; });
  P.groupoid = FiniteGroupoid(P.action);
  return P;
}

// tilde rho: [a, b, c] -> [(a^2, c^2), a c, b].
inline StackPoint tilde_rho(const Ctx& C, const T3Point& u) {
  const FieldCtx& F = C.F();
  Elt c2 = u.sector == kPlain ? F.square(u.c) : F.mul(F.square(u.c), C.n());
  StackPoint w;
  w.x = mat_diag(F, F.square(u.a), c2);
  w.alpha = F.mul(u.a, u.c);
  w.sector = u.sector;
  w.b = u.b;
  return w;
}

// Image of a Ker(rho) element in the group acting on T.
inline std::size_t tilde_rho_group(const StackGroup& grp, const FieldCtx& F, std::size_t g) {
  GroupElem e = grp.decode(g);
  e.s = F.square(e.s);
  return grp.encode(e);
}

// ---------------------------------------------------------------------------
// Tori T^F and T^{sigma F} with the maps rho from T3.
//
// Torus points are stored as a pair of F_{q^2} elements:
//   SL2:  T^F = {(t, 1/t)},     T^{sF} = {(y, y^q) : N(y) = 1}
//   PGL2: T^F = {(t, 1)} (t = t1/t2),  T^{sF} = {(u, 1) : N(u) = 1}
//   GL2:  T^F = {(t1, t2)},     T^{sF} = {(y, y^q)}

using TorusPoint = std::pair<QElt, QElt>;

// Source points of rho: (a, b, c) in (F_q^x)^3, or (a', b) with a' in
// F_{q^2}^x and b in F_q^x (then c = a'^q).
struct T3Unit {
  QElt a{};
  Elt b{};
  QElt c{};
};

inline std::vector<T3Unit> t3_units(const Ctx& C, bool sigma) {
  const FieldCtx& F = C.F();
  const QuadExtCtx& E = C.E();
  std::vector<T3Unit> out;
  if (!sigma) {
    for (Elt a : F.units())
      for (Elt b : F.units())
        for (Elt c : F.units()) out.push_back({E.embed(a), b, E.embed(c)});
  } else {
    for (QElt a : E.elements()) {
      if (E.is_zero(a)) continue;
      for (Elt b : F.units()) out.push_back({a, b, E.frob(a)});
    }
  }
  return out;
}

inline TorusPoint rho(const Ctx& C, GroupId id, const T3Unit& u) {
  const QuadExtCtx& E = C.E();
  QElt b = E.embed(u.b);
  switch (id) {
    case GroupId::kSL2: {
      QElt t = E.mul(u.a, E.inv(u.c));
      return {t, E.inv(t)};
    }
    case GroupId::kPGL2: {
      QElt t = E.mul(E.mul(u.a, u.a), E.inv(E.mul(u.c, u.c)));
      return {t, E.one()};
    }
    case GroupId::kGL2:
      return {E.mul(E.mul(u.a, u.a), b), E.mul(E.mul(u.c, u.c), b)};
    case GroupId::kGL2Char2: break;
  }
  throw std::invalid_argument("no torus model for gl2-char2");
}

inline std::vector<TorusPoint> torus_points(const Ctx& C, GroupId id, bool sigma) {
  const FieldCtx& F = C.F();
  const QuadExtCtx& E = C.E();
  std::vector<TorusPoint> out;
  if (!sigma) {
    for (Elt t : F.units()) {
      QElt te = E.embed(t);
      switch (id) {
        case GroupId::kSL2: out.push_back({te, E.inv(te)}); break;
        case GroupId::kPGL2: out.push_back({te, E.one()}); break;
        case GroupId::kGL2:
          for (Elt t2 : F.units()) out.push_back({te, E.embed(t2)});
          break;
        case GroupId::kGL2Char2: throw std::invalid_argument("no torus model for gl2-char2");
      }
    }
  } else {
    for (QElt y : E.elements()) {
      if (E.is_zero(y)) continue;
      switch (id) {
        case GroupId::kSL2:
          if (E.norm(y) == F.one()) out.push_back({y, E.frob(y)});
          break;
        case GroupId::kPGL2:
          if (E.norm(y) == F.one()) out.push_back({y, E.one()});
          break;
        case GroupId::kGL2: out.push_back({y, E.frob(y)}); break;
        case GroupId::kGL2Char2: throw std::invalid_argument("no torus model for gl2-char2");
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Ker(rho^F) and Ker(rho^{sigma F}) as subsets of the corresponding T3 units.
inline std::vector<T3Unit> rho_kernel(const Ctx& C, GroupId id, bool sigma) {
  std::vector<T3Unit> out;
  const TorusPoint one{C.E().one(), C.E().one()};
  for (const T3Unit& u : t3_units(C, sigma)) {
    if (rho(C, id, u) == one) out.push_back(u);
  }
  return out;
}

}  // namespace bkf

#endif  // BKFOURIER_GROUPS_HPP_
