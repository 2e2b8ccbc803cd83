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

#include <gtest/gtest.h>

#include <map>
#include <random>

#include "bkfourier/kernels.hpp"

namespace bkf {
namespace {

constexpr GroupId kOdd[] = {GroupId::kSL2, GroupId::kPGL2, GroupId::kGL2};

// Raw sum of psi over a list of arguments.
CycInt psi_sum(const Ctx& C, const std::vector<Elt>& args, int sign = 1) {
  CycInt r(C.p());
  for (Elt a : args) r.add_zeta(C.psi_exp(a), sign);
  return r;
}

class TorusOracle : public ::testing::TestWithParam<unsigned> {};

TEST_P(TorusOracle, ClosedFormEqualsPushforward) {
  Ctx C = Ctx::of_order(GetParam());
  for (GroupId id : kOdd) {
    for (bool sigma : {false, true}) {
      TorusFn push = phi_T_pushforward(C, id, sigma);
      for (const auto& [t, v] : push) {
        ASSERT_EQ(phi_T_closed(C, id, sigma, t), v)
            << group_name(id) << (sigma ? " sigma" : "") << " q=" << C.q();
      }
    }
  }
}

TEST_P(TorusOracle, CaseFormulaAgreesAtEveryPreimage) {
  Ctx C = Ctx::of_order(GetParam());
  for (GroupId id : kOdd) {
    for (bool sigma : {false, true}) {
      TorusFn push = phi_T_pushforward(C, id, sigma);
      for (const T3Unit& u : t3_units(C, sigma)) {
        ASSERT_EQ(phi_T_case(C, id, sigma, u), push.at(rho(C, id, u)))
            << group_name(id) << (sigma ? " sigma" : "");
      }
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Q, TorusOracle, ::testing::Values(3u, 5u, 7u, 9u));

TEST(Kernels, Sl2TorusAtIdentityIsOne) {
  Ctx C = Ctx::of_order(3);
  const FieldCtx& F = C.F();
  // fiber over (1, 1) is {(s, t, s)}: sum psi(2s + t)
  std::vector<Elt> args;
  for (Elt s : F.units())
    for (Elt t : F.units()) args.push_back(F.add(F.add(s, s), t));
  CycInt raw = psi_sum(C, args);
  EXPECT_EQ(raw, C.integer(1));
  TorusPoint one{C.E().one(), C.E().one()};
  EXPECT_EQ(phi_T_pushforward(C, GroupId::kSL2, false).at(one), raw);
}

TEST(Kernels, Gl2TorusAtIdentityMatchesFiberSum) {
  Ctx C = Ctx::of_order(3);
  const FieldCtx& F = C.F();
  std::vector<Elt> args;
  for (Elt s : F.units())
    for (Elt e : {F.one(), F.neg(F.one())})
      args.push_back(F.add(F.mul(s, F.add(F.one(), e)), F.inv(F.square(s))));
  TorusPoint one{C.E().one(), C.E().one()};
  EXPECT_EQ(phi_T_pushforward(C, GroupId::kGL2, false).at(one), psi_sum(C, args, -1));
}

TEST(Kernels, PhiHelperBoundaryValues) {
  Ctx C = Ctx::of_order(5);
  const FieldCtx& F = C.F();
  for (Elt tr : F.elements())
    for (Elt a : F.elements()) EXPECT_EQ(C.Phi(tr, a, F.zero()), C.integer(-2));
  for (Elt b : F.elements()) EXPECT_EQ(C.Phi(F.zero(), F.zero(), b), C.integer(-2));
  Ctx C3 = Ctx::of_order(3);
  std::vector<Elt> args;
  for (Elt s : C3.F().units()) args.push_back(C3.F().add(s, C3.F().inv(C3.F().square(s))));
  EXPECT_EQ(C3.Phi(Elt{1}, Elt{0}, Elt{1}), psi_sum(C3, args) * 2);
}

// ---------------------------------------------------------------------------
// phi^G.

TEST(Kernels, GroupKernelExamples) {
  Ctx C = Ctx::of_order(3);
  const FieldCtx& F = C.F();
  Mat minus_i = mat_scale(F, F.neg(F.one()), mat_identity(F));
  EXPECT_EQ(phi_G_sl2(C, minus_i), C.integer(-2));
  EXPECT_EQ(phi_G_sl2(C, mat_identity(F)), C.integer(1));
  // GL2 at I: 1 - sum_s psi(s + 4 s^-2) - 3 S(alpha_o, psi_1)
  std::vector<Elt> args;
  for (Elt s : F.units()) args.push_back(F.add(s, F.mul(F.from_int(4), F.inv(F.square(s)))));
  CycInt expected = C.integer(1) - psi_sum(C, args) - C.gauss_S(F.one()) * 3;
  EXPECT_EQ(phi_G_gl2(C, mat_identity(F)), expected);
  for (const Mat& g : gl2_matrices(F)) {
    if (!F.is_square(mat_det(F, g))) {
      EXPECT_TRUE(phi_G_pgl2(C, g).is_zero());
      EXPECT_TRUE(phi_G_gl2(C, g).is_zero());
    }
  }
}

TEST(Kernels, Gl2GroupKernelEqualsTorusCombination) {
  for (unsigned q : {3u, 5u}) {
    Ctx C = Ctx::of_order(q);
    TorusFn t = phi_T_pushforward(C, GroupId::kGL2, false);
    TorusFn ts = phi_T_pushforward(C, GroupId::kGL2, true);
    for (const Mat& g : gl2_matrices(C.F())) {
      ASSERT_EQ(CycNum(phi_G_gl2(C, g)), phi_G_gl2_from_tori(C, g, t, ts)) << "q=" << q;
    }
  }
}

// phi^G for SL2 and PGL2 depends only on the characteristic polynomial; for
// GL2 it separates lambda I from lambda I + N.
TEST(Kernels, DescentToTheAdjointQuotient) {
  for (unsigned q : {3u, 5u, 7u}) {
    Ctx C = Ctx::of_order(q);
    const FieldCtx& F = C.F();
    for (GroupId id : {GroupId::kSL2, GroupId::kPGL2}) {
      std::map<std::pair<std::uint32_t, std::uint32_t>, CycInt> seen;
      for (const Mat& g : group_matrices(C, id)) {
        auto key = std::make_pair(mat_trace(F, g).v, mat_det(F, g).v);
        CycInt v = phi_G_matrix(C, id, g);
        auto [it, fresh] = seen.emplace(key, v);
        ASSERT_TRUE(fresh || it->second == v) << group_name(id);
      }
    }
    auto w = gl2_non_descent_witness(C);
    ASSERT_TRUE(w.has_value());
    EXPECT_EQ(mat_trace(F, w->first), mat_trace(F, w->second));
    EXPECT_EQ(mat_det(F, w->first), mat_det(F, w->second));
  }
}

TEST(Kernels, PgL2GroupKernelIsScaleInvariant) {
  Ctx C = Ctx::of_order(5);
  const FieldCtx& F = C.F();
  for (const Mat& g : gl2_matrices(F)) {
    for (Elt s : F.units()) ASSERT_EQ(phi_G_pgl2(C, mat_scale(F, s, g)), phi_G_pgl2(C, g));
  }
}

// ---------------------------------------------------------------------------
// Stack kernels.

TEST(Kernels, StackKernelExamples) {
  Ctx C = Ctx::of_order(5);
  const FieldCtx& F = C.F();
  StackPoint u = identity_point(C);  // Tr + 2 alpha = 4, b = 1
  EXPECT_EQ(phi_stack_sl2(C, u), C.integer(1));
  StackPoint z{mat_scale(F, F.neg(F.one()), mat_identity(F)), F.one(), kPlain, F.zero()};
  EXPECT_EQ(phi_stack_sl2(C, z), C.integer(16));
  Ctx C2 = Ctx::of_order(2);
  StackPoint w{Mat{Elt{1}, Elt{0}, Elt{0}, Elt{0}}, Elt{0}, kPlain, Elt{1}};
  EXPECT_EQ(phi_stack_char2(C2, w), C2.integer(-1));
}

TEST(Kernels, Sl2StackKernelMatchesOneMinusQDeltaOffTheBoundary) {
  Ctx C = Ctx::of_order(5);
  const FieldCtx& F = C.F();
  for (const StackPoint& u : enumerate_stack_points(C, GroupId::kSL2)) {
    if (F.is_zero(u.b)) continue;
    bool hit = F.is_zero(F.add(mat_trace(F, u.x), F.add(u.alpha, u.alpha)));
    ASSERT_EQ(phi_stack_sl2(C, u), C.integer(hit ? 1 - 5 : 1));
  }
}

TEST(Kernels, StackKernelsAreOrbitInvariantOffTheExceptionalLocus) {
  for (unsigned q : {3u, 5u}) {
    Ctx C = Ctx::of_order(q);
    for (GroupId id : kOdd) {
      Presentation P = stack_presentation(C, id);
      std::size_t bad = 0, bad_exceptional = 0;
      for (std::uint32_t i = 0; i < P.action.size(); ++i) {
        const StackPoint& u = P.action.point(i);
        CycInt v = phi_stack(C, id, u);
        for (std::size_t g = 0; g < P.action.group_order(); ++g) {
          if (!(phi_stack(C, id, P.action.point(P.action.act(g, i))) == v)) {
            ++bad;
            bad_exceptional += gl2_exceptional(C, u);
            break;
          }
        }
      }
      EXPECT_EQ(bad, bad_exceptional) << group_name(id);
      if (id == GroupId::kGL2) {
        EXPECT_GT(bad, 0u);
      } else {
        EXPECT_EQ(bad, 0u);
      }
    }
  }
}

TEST(Kernels, StackKernelRestrictsToGroupKernel) {
  for (unsigned q : {3u, 5u, 7u}) {
    Ctx C = Ctx::of_order(q);
    for (GroupId id : kOdd) {
      Presentation P = group_presentation(C, id);
      for (const StackPoint& u : P.action.points()) {
        ASSERT_EQ(phi_stack(C, id, u), phi_G_point(C, id, u)) << group_name(id) << " q=" << q;
      }
    }
  }
  for (unsigned q : {2u, 4u}) {
    Ctx C = Ctx::of_order(q);
    Presentation P = group_presentation(C, GroupId::kGL2Char2);
    for (const StackPoint& u : P.action.points()) {
      ASSERT_EQ(phi_stack_char2(C, u), phi_G_char2_table(C, u));
      ASSERT_EQ(phi_stack_char2(C, u), phi_G_point(C, GroupId::kGL2Char2, u));
    }
  }
}

TEST(Kernels, TwistedSectorVanishes) {
  Ctx C = Ctx::of_order(5);
  for (GroupId id : {GroupId::kPGL2, GroupId::kGL2}) {
    for (const StackPoint& u : enumerate_stack_points(C, id)) {
      if (u.sector == kTwisted) {
        ASSERT_TRUE(phi_stack(C, id, u).is_zero());
      }
    }
  }
}

// ---------------------------------------------------------------------------
// Involutivity at the smallest field sizes; the acceptance binary covers
// the full grid.

TEST(Kernels, Sl2AndPgl2StacksAreInvolutiveAtQ3) {
  Ctx C = Ctx::of_order(3);
  for (GroupId id : {GroupId::kSL2, GroupId::kPGL2}) {
    Presentation P = stack_presentation(C, id);
    Kernel K = stack_kernel(P);
    InvolutionOptions opt;
    opt.scale = Rational(243);
    opt.threads = 2;
    auto rep = check_involutive(K, P.groupoid, C.p(), opt);
    EXPECT_TRUE(rep.pass) << group_name(id) << " mismatches " << rep.mismatches;
    EXPECT_EQ(rep.method, "matrix");
  }
}

TEST(Kernels, InvolutivityReportAgreesWithDirectDelta) {
  Ctx C = Ctx::of_order(3);
  Presentation P = stack_presentation(C, GroupId::kSL2);
  Kernel K = stack_kernel(P);
  const auto& G = P.groupoid;
  std::mt19937 rng(5);
  std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(G.size() - 1));
  for (int i = 0; i < 30; ++i) {
    std::uint32_t z = pick(rng), x = i % 3 == 0 ? z : pick(rng);
    CycNum d = delta(K, K, G, G.rep(z), G.rep(x), C.p());
    CycNum expected(C.p(), z == x ? Rational(243 * static_cast<std::int64_t>(G.aut(z))) : Rational(0));
    EXPECT_EQ(d, expected);
  }
}

TEST(Kernels, PsiIndependenceSmoke) {
  FieldCtx F = make_field(3, 1);
  Ctx C(F, F.nonsquare());
  Presentation P = stack_presentation(C, GroupId::kSL2);
  InvolutionOptions opt;
  opt.scale = Rational(243);
  EXPECT_TRUE(check_involutive(stack_kernel(P), P.groupoid, C.p(), opt).pass);
}

TEST(Kernels, TorusStacksAreInvolutiveWithMinusTwist) {
  for (unsigned q : {3u, 5u}) {
    Ctx C = Ctx::of_order(q);
    for (GroupId id : kOdd) {
      T3Presentation P = t3_presentation(C, id);
      InvolutionOptions opt;
      opt.scale = Rational(static_cast<std::int64_t>(q * q * q));
      opt.twist = [&P](std::uint32_t i) { return P.neg(i); };
      auto rep = check_involutive(t3_kernel(P), P.groupoid, C.p(), opt);
      EXPECT_TRUE(rep.pass) << group_name(id) << " q=" << q;
      bool trivial = true;
      for (std::uint32_t c = 0; c < P.groupoid.size(); ++c) {
        trivial = trivial && P.groupoid.class_of(P.neg(P.groupoid.rep(c))) == c;
      }
      // -1 lies in every orbit except for GL2, where b -> -b is not a move
      EXPECT_EQ(trivial, id != GroupId::kGL2);
      if (!trivial) {
        InvolutionOptions plain = opt;
        plain.twist = {};
        EXPECT_FALSE(check_involutive(t3_kernel(P), P.groupoid, C.p(), plain).pass);
      }
    }
  }
}

TEST(Kernels, Char2StackIsInvolutive) {
  for (unsigned q : {2u, 4u}) {
    Ctx C = Ctx::of_order(q);
    Presentation P = stack_presentation(C, GroupId::kGL2Char2);
    InvolutionOptions opt;
    opt.scale = Rational(static_cast<std::int64_t>(q * q * q * q * q));
    opt.threads = 4;
    auto rep = check_involutive(stack_kernel(P), P.groupoid, C.p(), opt);
    EXPECT_TRUE(rep.pass) << "q=" << q << " " << rep.method;
  }
}

// ---------------------------------------------------------------------------
// Pushforward identities.

TEST(Kernels, PushforwardIdentitiesAtQ3And5) {
  for (unsigned q : {3u, 5u}) {
    Ctx C = Ctx::of_order(q);
    Presentation S = group_presentation(C, GroupId::kSL2);
    Presentation P = group_presentation(C, GroupId::kPGL2);
    Presentation G = group_presentation(C, GroupId::kGL2);
    auto phi = [&](const Presentation& X) {
      return class_values(X.groupoid, tabulate(X, [&](const StackPoint& u) {
                            return phi_G_point(C, X.id, u);
                          }));
    };
    ClassFn pgl = phi(P);
    ClassFn f = pushforward(S.groupoid, P.groupoid,
                            [&](std::uint32_t i) { return P.action.at(S.action.point(i)); },
                            phi(S), C.p());
    EXPECT_EQ(f, pgl);
    ClassFn pi = pushforward(G.groupoid, P.groupoid,
                             [&](std::uint32_t i) { return P.action.at(G.action.point(i)); },
                             phi(G), C.p());
    // The central pushforward reproduces phi^PGL2 up to a factor -1; the
    // extra 1/q does not hold with these normalizations.
    ClassFn scaled = pi;
    for (auto& v : pi) v = -v;
    EXPECT_EQ(pi, pgl);
    for (auto& v : scaled) v = v * make_rational(-1, static_cast<std::int64_t>(q));
    EXPECT_NE(scaled, pgl);
    // fibers of pi have q - 1 classes
    std::map<std::uint32_t, int> fiber;
    for (const auto& c : G.groupoid.classes()) {
      ++fiber[P.groupoid.class_of(P.action.at(G.action.point(c.rep)))];
    }
    for (auto [k, n] : fiber) EXPECT_EQ(n, static_cast<int>(q - 1));
  }
}

TEST(Kernels, Mu2PushforwardOfTheSl2StackKernel) {
  for (unsigned q : {3u, 5u}) {
    Ctx C = Ctx::of_order(q);
    Presentation S = stack_presentation(C, GroupId::kSL2);
    Presentation P = stack_presentation(C, GroupId::kPGL2);
    auto vals = [&](const Presentation& X) {
      return class_values(X.groupoid, tabulate(X, [&](const StackPoint& u) {
                            return phi_stack(C, X.id, u);
                          }));
    };
    ClassFn pushed = pushforward(S.groupoid, P.groupoid,
                                 [&](std::uint32_t i) { return P.action.at(S.action.point(i)); },
                                 vals(S), C.p());
    EXPECT_EQ(pushed, vals(P));

    // The same identity at the level of two-variable kernels.
    Kernel KS = stack_kernel(S), KP = stack_kernel(P);
    std::vector<std::uint32_t> id(S.action.size()), flip(S.action.size());
    for (std::uint32_t i = 0; i < S.action.size(); ++i) {
      id[i] = i;
      StackPoint u = S.action.point(i);
      u.alpha = C.F().neg(u.alpha);
      flip[i] = S.action.at(u);
    }
    Kernel KQ = quotient_kernel(KS, {id, flip}, C.p());
    std::mt19937 rng(q);
    std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(S.action.size() - 1));
    for (int i = 0; i < 3000; ++i) {
      std::uint32_t a = pick(rng), b = pick(rng);
      ASSERT_EQ(KQ(a, b), KP(P.action.at(S.action.point(a)), P.action.at(S.action.point(b))));
    }
    // mu2-fixed points (alpha = 0) double.
    for (std::uint32_t i = 0; i < S.action.size(); ++i) {
      if (flip[i] == i) {
        ASSERT_EQ(KQ(i, 0), KS(i, 0) * 2);
      }
    }
  }
}

TEST(Kernels, TildeRhoPushforwardIsTheRestrictedStackKernel) {
  for (unsigned q : {3u, 5u}) {
    Ctx C = Ctx::of_order(q);
    for (GroupId id : {GroupId::kSL2, GroupId::kPGL2}) {
      T3Presentation S = t3_presentation(C, id);
      Presentation T = torus_stack_presentation(C, id);
      ClassFn pushed = tilde_rho_pushforward(S, T, class_values(S.groupoid, phi_t3(S)));
      ClassFn restricted = class_values(T.groupoid, tabulate(T, [&](const StackPoint& u) {
                                          return phi_stack(C, id, u);
                                        }));
      EXPECT_EQ(pushed, restricted) << group_name(id) << " q=" << q;
    }
  }
}

// ---------------------------------------------------------------------------
// GL2 negative results.

TEST(Kernels, Gl2TorusTableMatchesCaseList) {
  for (unsigned q : {3u, 5u}) {
    Ctx C = Ctx::of_order(q);
    const FieldCtx& F = C.F();
    for (Elt a : F.elements())
      for (Elt c : F.elements())
        for (Elt b : F.elements()) {
          StackPoint u = tilde_rho(C, T3Point{a, b, c, kPlain});
          CycInt expected(C.p());
          if (F.square(a) != F.square(c)) {
            for (Elt e : {F.one(), F.neg(F.one())}) {
              Elt w = F.add(a, F.mul(e, c));
              expected -= C.shifted_inverse_square_sum(F.mul(b, F.square(w)));
            }
          } else if (!F.is_zero(a)) {
            expected = -C.kappa(b) -
                       C.shifted_inverse_square_sum(F.mul(F.from_int(4), F.mul(b, F.square(a))));
          } else {
            expected = C.kappa(b) * -2;
          }
          ASSERT_EQ(phi_calT_gl2(C, u), expected);
        }
  }
}

TEST(Kernels, Gl2TorusStackDeltaWitness) {
  for (unsigned q : {3u, 5u}) {
    Ctx C = Ctx::of_order(q);
    const FieldCtx& F = C.F();
    Presentation T = torus_stack_presentation(C, GroupId::kGL2);
    Kernel K = calT_kernel_gl2(T);
    StackPoint z{mat_diag(F, F.one(), F.zero()), F.zero(), kPlain, F.one()};
    StackPoint x{mat_diag(F, F.zero(), F.one()), F.zero(), kPlain, F.one()};
    CycNum d = delta(K, K, T.groupoid, T.action.at(z), T.action.at(x), C.p());
    const std::int64_t expected = 4 * C.alpha_o(F.neg(F.one())) * static_cast<std::int64_t>(q);
    EXPECT_EQ(d, CycNum(C.p(), Rational(expected)));
  }
}

TEST(Kernels, Gl2TorusStackIsNotInvolutive) {
  Ctx C = Ctx::of_order(3);
  Presentation T = torus_stack_presentation(C, GroupId::kGL2);
  InvolutionOptions opt;
  opt.scale = Rational(243);
  auto rep = check_involutive(calT_kernel_gl2(T), T.groupoid, C.p(), opt);
  EXPECT_FALSE(rep.pass);
  EXPECT_TRUE(rep.exceptional_touched);
  EXPECT_EQ(rep.method, "point-sum");
  ASSERT_TRUE(rep.witness.has_value());
}

TEST(Kernels, Gl2GenuinePushforwardDiffersOnlyAtTheOrigin) {
  Ctx C = Ctx::of_order(5);
  T3Presentation S = t3_presentation(C, GroupId::kGL2);
  Presentation T = torus_stack_presentation(C, GroupId::kGL2);
  ClassFn pushed = tilde_rho_pushforward(S, T, class_values(S.groupoid, phi_t3(S)));
  for (std::uint32_t c = 0; c < T.groupoid.size(); ++c) {
    const StackPoint& u = T.action.point(T.groupoid.rep(c));
    CycNum table(phi_calT_gl2(C, u));
    CycNum genuine = -pushed[c];
    if (gl2_exceptional(C, u)) {
      // kappa(b) + kappa'(b) = -2 replaces 2 kappa(b)
      EXPECT_EQ(genuine, CycNum(C.p(), Rational(2)));
    } else {
      EXPECT_EQ(genuine, table) << serialize(C, u);
    }
  }
}

}  // namespace
}  // namespace bkf
