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

// Fourier transform on the isotropic cone of a quadratic space.

#ifndef BKFOURIER_QUADFORM_HPP_
#define BKFOURIER_QUADFORM_HPP_

#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bkfourier/characters.hpp"
#include "bkfourier/groupoid.hpp"
#include "bkfourier/groups.hpp"

namespace bkf {

using QuadVector = std::vector<Elt>;

// A quadratic form on F_q^n. B is always derived by polarization.
struct QuadSpace {
  Ctx ctx;
  unsigned n = 0;
  std::function<Elt(const QuadVector&)> form;
  std::string name;
  // Normal form data: Q = x1 x_n + ... + c x_{m+1}^2 when n = 2m + 1.
  unsigned m = 0;
  Elt c{};
};

inline void check_dim(const QuadSpace& S, const QuadVector& v) {
  if (v.size() != S.n) {
    throw std::invalid_argument("vector of length " + std::to_string(v.size()) +
                                " in a space of dimension " + std::to_string(S.n));
  }
}

inline Elt eval_Q(const QuadSpace& S, const QuadVector& v) {
  check_dim(S, v);
  return S.form(v);
}

inline Elt eval_B(const QuadSpace& S, const QuadVector& u, const QuadVector& v) {
  check_dim(S, u);
  check_dim(S, v);
  const FieldCtx& F = S.ctx.F();
  QuadVector w(S.n);
  for (unsigned i = 0; i < S.n; ++i) w[i] = F.add(u[i], v[i]);
  return F.sub(F.sub(S.form(w), S.form(u)), S.form(v));
}

// x1 x_{2m+1} + ... + x_m x_{m+2} + c x_{m+1}^2.
inline QuadSpace normal_form(const Ctx& C, unsigned m, Elt c) {
  C.require_odd();
  if (c.v == 0) throw std::invalid_argument("middle coefficient must be nonzero");
  QuadSpace S{C, 2 * m + 1, {}, "normal(m=" + std::to_string(m) + ")", m, c};
  auto ctx = std::make_shared<Ctx>(C);
  S.form = [ctx, m, c](const QuadVector& x) {
    const FieldCtx& F = ctx->F();
    Elt r = F.mul(c, F.square(x[m]));
    for (unsigned i = 0; i < m; ++i) r = F.add(r, F.mul(x[i], x[2 * m - i]));
    return r;
  };
  return S;
}

// x1 x_{2m} + ... + x_m x_{m+1}.
inline QuadSpace hyperbolic(const Ctx& C, unsigned m) {
  C.require_odd();
  QuadSpace S{C, 2 * m, {}, "hyperbolic(dim=" + std::to_string(2 * m) + ")", m, C.F().one()};
  auto ctx = std::make_shared<Ctx>(C);
  S.form = [ctx, m](const QuadVector& x) {
    const FieldCtx& F = ctx->F();
    Elt r = F.zero();
    for (unsigned i = 0; i < m; ++i) r = F.add(r, F.mul(x[i], x[2 * m - 1 - i]));
    return r;
  };
  return S;
}

// gl2 x gl1 with Q(x, alpha) = det x - alpha^2; coordinates (x00, x01, x10, x11, alpha).
inline QuadSpace gl2_space(const Ctx& C) {
  C.require_odd();
  QuadSpace S{C, 5, {}, "gl2 x gl1", 2, C.F().one()};
  auto ctx = std::make_shared<Ctx>(C);
  S.form = [ctx](const QuadVector& v) {
    const FieldCtx& F = ctx->F();
    return F.sub(F.sub(F.mul(v[0], v[3]), F.mul(v[1], v[2])), F.square(v[4]));
  };
  return S;
}

inline std::size_t vector_count(const QuadSpace& S) {
  std::size_t N = 1;
  for (unsigned i = 0; i < S.n; ++i) N *= S.ctx.q();
  return N;
}

inline QuadVector decode_vector(const QuadSpace& S, std::size_t idx) {
  QuadVector v(S.n);
  for (unsigned i = 0; i < S.n; ++i) {
    v[i] = Elt{static_cast<std::uint32_t>(idx % S.ctx.q())};
    idx /= S.ctx.q();
  }
  return v;
}

inline std::vector<QuadVector> all_vectors(const QuadSpace& S) {
  std::vector<QuadVector> out;
  const std::size_t N = vector_count(S);
  out.reserve(N);
  for (std::size_t i = 0; i < N; ++i) out.push_back(decode_vector(S, i));
  return out;
}

inline QuadVector scale_vector(const FieldCtx& F, Elt s, const QuadVector& v) {
  QuadVector w(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) w[i] = F.mul(s, v[i]);
  return w;
}

// Rank of the Gram matrix B(e_i, e_j).
inline unsigned gram_rank(const QuadSpace& S) {
  const FieldCtx& F = S.ctx.F();
  std::vector<QuadVector> e(S.n, QuadVector(S.n, F.zero()));
  for (unsigned i = 0; i < S.n; ++i) e[i][i] = F.one();
  std::vector<QuadVector> M(S.n, QuadVector(S.n));
  for (unsigned i = 0; i < S.n; ++i)
    for (unsigned j = 0; j < S.n; ++j) M[i][j] = eval_B(S, e[i], e[j]);
  unsigned rank = 0;
  for (unsigned col = 0; col < S.n && rank < S.n; ++col) {
    unsigned piv = rank;
    while (piv < S.n && F.is_zero(M[piv][col])) ++piv;
    if (piv == S.n) continue;
    std::swap(M[piv], M[rank]);
    Elt inv = F.inv(M[rank][col]);
    for (unsigned r = 0; r < S.n; ++r) {
      if (r == rank || F.is_zero(M[r][col])) continue;
      Elt f = F.mul(M[r][col], inv);
      for (unsigned k = 0; k < S.n; ++k) M[r][k] = F.sub(M[r][k], F.mul(f, M[rank][k]));
    }
    ++rank;
  }
  return rank;
}

inline bool nondegenerate(const QuadSpace& S) { return gram_rank(S) == S.n; }

// Isotropic cone with F_q^x acting by scaling.
struct ConeGroupoid {
  QuadSpace space;
  GroupAction<QuadVector> action;
  FiniteGroupoid groupoid;
};

inline ConeGroupoid isotropic_groupoid(const QuadSpace& S) {
  S.ctx.require_odd();
  const FieldCtx& F = S.ctx.F();
  std::vector<QuadVector> pts;
  for (QuadVector& v : all_vectors(S)) {
    if (F.is_zero(S.form(v))) pts.push_back(std::move(v));
  }
  auto units = std::make_shared<std::vector<Elt>>(F.units());
  GroupSpec spec;
  spec.order = units->size();
  spec.identity = 0;  // units() starts at 1
  auto ctx = std::make_shared<Ctx>(S.ctx);
  ConeGroupoid G{S, GroupAction<QuadVector>(std::move(pts), spec,
                                            [ctx, units](std::size_t g, const QuadVector& v) {
                                              return scale_vector(ctx->F(), (*units)[g], v);
                                            }),
                 {}};
  G.groupoid = FiniteGroupoid(G.action);
  return G;
}

// K([v'], [v]) = sum_{s != 0} psi(B(s v', v)).
inline Kernel cone_kernel(const ConeGroupoid& G) {
  auto pts = std::make_shared<std::vector<QuadVector>>(G.action.points());
  auto S = std::make_shared<QuadSpace>(G.space);
  Kernel k;
  k.eval = [pts, S](std::uint32_t x, std::uint32_t y) {
    return S->ctx.unit_sum(eval_B(*S, (*pts)[x], (*pts)[y]));
  };
  return k;
}

// sum over isotropic v of psi(B(v', v)), by brute force.
inline CycInt isotropic_psi_sum(const QuadSpace& S, const QuadVector& vp) {
  const Ctx& C = S.ctx;
  CycInt r(C.p());
  for (const QuadVector& v : all_vectors(S)) {
    if (C.F().is_zero(S.form(v))) r.add_zeta(C.psi_exp(eval_B(S, vp, v)));
  }
  return r;
}

inline std::int64_t ipow(std::int64_t b, unsigned e) {
  std::int64_t r = 1;
  while (e--) r *= b;
  return r;
}

// q^{2m} delta_0(v') + q^m alpha_o(c) alpha_o(Q(v')), for n = 2m + 1.
inline CycInt isotropic_psi_closed(const QuadSpace& S, const QuadVector& vp) {
  const Ctx& C = S.ctx;
  const auto q = static_cast<std::int64_t>(C.q());
  bool zero = true;
  for (Elt x : vp) zero = zero && x.v == 0;
  std::int64_t v = zero ? ipow(q, 2 * S.m) : 0;
  v += ipow(q, S.m) * C.alpha_o(S.c) * C.alpha_o(eval_Q(S, vp));
  return C.integer(v);
}

// sum_v psi(lambda Q(v)), lambda != 0.
inline CycInt weil_sum(const QuadSpace& S, Elt lambda) {
  if (lambda.v == 0) throw std::invalid_argument("weil_sum needs lambda != 0");
  const Ctx& C = S.ctx;
  CycInt r(C.p());
  for (const QuadVector& v : all_vectors(S)) r.add_zeta(C.psi_exp(C.F().mul(lambda, S.form(v))));
  return r;
}

// q^m alpha_o(c lambda) S(alpha_o, psi).
inline CycInt weil_closed(const QuadSpace& S, Elt lambda) {
  if (lambda.v == 0) throw std::invalid_argument("weil_sum needs lambda != 0");
  const Ctx& C = S.ctx;
  return C.gauss_S(C.F().one()) *
         (ipow(static_cast<std::int64_t>(C.q()), S.m) * C.alpha_o(C.F().mul(S.c, lambda)));
}

// sum_{s, s''} alpha_o(s s'' t), with alpha_o(0) = 0.
inline std::int64_t alpha_pair_sum(const Ctx& C, Elt t) {
  std::int64_t r = 0;
  for (Elt s : C.F().units())
    for (Elt s2 : C.F().units()) r += C.alpha_o(C.F().mul(C.F().mul(s, s2), t));
  return r;
}

// F^X o F^X = q^{n-1} id on the cone groupoid.
inline InvolutionReport check_theo2(const ConeGroupoid& G, InvolutionOptions opt = {}) {
  opt.scale = Rational(ipow(static_cast<std::int64_t>(G.space.ctx.q()), G.space.n - 1));
  opt.twist = {};
  return check_involutive(cone_kernel(G), G.groupoid, G.space.ctx.p(), opt);
}

// ---------------------------------------------------------------------------
// gl2 model: the cone of det - alpha^2 is the first factor of the SL2 stack.

inline Mat quad_matrix(const QuadVector& v) { return Mat{v[0], v[1], v[2], v[3]}; }

// phi^{G_1}([x, alpha]) = sum_s psi(s (Tr x + 2 alpha)).
inline CycInt phi_G1(const Ctx& C, const Mat& x, Elt alpha) {
  const FieldCtx& F = C.F();
  return C.unit_sum(F.add(mat_trace(F, x), F.add(alpha, alpha)));
}

// K^(u, v) = phi^{G_1}([iota(y) x, beta alpha]) for u = (y, beta), v = (x, alpha).
inline Kernel gl2_hat_kernel(const ConeGroupoid& G) {
  auto pts = std::make_shared<std::vector<QuadVector>>(G.action.points());
  auto ctx = std::make_shared<Ctx>(G.space.ctx);
  Kernel k;
  k.eval = [pts, ctx](std::uint32_t i, std::uint32_t j) {
    const FieldCtx& F = ctx->F();
    const QuadVector &u = (*pts)[i], &v = (*pts)[j];
    return phi_G1(*ctx, mat_mul(F, mat_iota(F, quad_matrix(u)), quad_matrix(v)),
                  F.mul(u[4], v[4]));
  };
  return k;
}

// K(u, v) = phi^{G_1}([y x, beta alpha]).
inline Kernel gl2_mult_kernel(const ConeGroupoid& G) {
  auto pts = std::make_shared<std::vector<QuadVector>>(G.action.points());
  auto ctx = std::make_shared<Ctx>(G.space.ctx);
  Kernel k;
  k.eval = [pts, ctx](std::uint32_t i, std::uint32_t j) {
    const FieldCtx& F = ctx->F();
    const QuadVector &u = (*pts)[i], &v = (*pts)[j];
    return phi_G1(*ctx, mat_mul(F, quad_matrix(u), quad_matrix(v)), F.mul(u[4], v[4]));
  };
  return k;
}

struct Gl2ModelReport {
  bool iota_involution = true;
  bool trace_identity = true;
  bool anti_multiplicative = true;
  bool det_invariant = true;
  bool polarization = true;     // B((y,b),(x,a)) = Tr(iota(y) x) - 2 b a
  bool cone_bridge = true;      // K^(u, v) = cone kernel at ((y, -b), (x, a))
  bool conjugate = true;        // K(u, v) = K^((iota y, b), v)
  std::optional<InvolutionReport> hat;
  std::optional<InvolutionReport> mult;
  bool pass() const {
    return iota_involution && trace_identity && anti_multiplicative && det_invariant &&
           polarization && cone_bridge && conjugate && hat && hat->pass && mult && mult->pass;
  }
};

inline Gl2ModelReport gl2_model(const Ctx& C, bool run_involution = true,
                                InvolutionOptions opt = {}) {
  C.require_odd();
  const FieldCtx& F = C.F();
  Gl2ModelReport r;
  const auto mats = all_matrices(F);
  for (const Mat& y : mats) {
    const Mat iy = mat_iota(F, y);
    r.iota_involution = r.iota_involution && mat_iota(F, iy) == y;
    r.det_invariant = r.det_invariant && mat_det(F, iy) == mat_det(F, y);
    for (const Mat& x : mats) {
      const Mat ix = mat_iota(F, x);
      r.trace_identity = r.trace_identity &&
                         mat_trace(F, mat_mul(F, iy, ix)) == mat_trace(F, mat_mul(F, y, x));
      r.anti_multiplicative =
          r.anti_multiplicative && mat_iota(F, mat_mul(F, x, y)) == mat_mul(F, iy, ix);
    }
  }
  QuadSpace S = gl2_space(C);
  const auto vecs = all_vectors(S);
  for (const QuadVector& u : vecs) {
    for (const QuadVector& v : vecs) {
      Elt stated = F.sub(mat_trace(F, mat_mul(F, mat_iota(F, quad_matrix(u)), quad_matrix(v))),
                         F.mul(F.from_int(2), F.mul(u[4], v[4])));
      if (eval_B(S, u, v) != stated) {
        r.polarization = false;
        break;
      }
    }
    if (!r.polarization) break;
  }
  ConeGroupoid G = isotropic_groupoid(S);
  Kernel hat = gl2_hat_kernel(G), mult = gl2_mult_kernel(G), cone = cone_kernel(G);
  const std::uint32_t N = static_cast<std::uint32_t>(G.action.size());
  for (std::uint32_t i = 0; i < N && r.cone_bridge && r.conjugate; ++i) {
    QuadVector neg = G.action.point(i);
    neg[4] = F.neg(neg[4]);
    QuadVector flip = G.action.point(i);
    Mat iy = mat_iota(F, quad_matrix(flip));
    for (int k = 0; k < 4; ++k) flip[k] = iy[k];
    const std::uint32_t in = *G.action.index_of(neg), ifl = *G.action.index_of(flip);
    for (std::uint32_t j = 0; j < N; ++j) {
      CycInt h = hat(i, j);
      if (!(h == cone(in, j))) r.cone_bridge = false;
      if (!(mult(i, j) == hat(ifl, j))) r.conjugate = false;
    }
  }
  if (run_involution) {
    opt.scale = Rational(ipow(static_cast<std::int64_t>(C.q()), 4));
    opt.twist = {};
    r.hat = check_involutive(hat, G.groupoid, C.p(), opt);
    r.mult = check_involutive(mult, G.groupoid, C.p(), opt);
  }
  return r;
}

}  // namespace bkf

#endif  // BKFOURIER_QUADFORM_HPP_
