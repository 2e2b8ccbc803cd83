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

#include <random>

#include "bkfourier/characters.hpp"
#include "bkfourier/groupoid.hpp"

namespace bkf {
namespace {

// F_q acted on by scaling with F_q^x; group element g is the unit g + 1.
GroupAction<Elt> scaling_action(const FieldCtx& F) {
  GroupSpec g;
  g.order = F.order() - 1;
  g.identity = F.one().v - 1;
  g.mul = [&F](std::size_t a, std::size_t b) {
    return std::size_t(F.mul(Elt{std::uint32_t(a + 1)}, Elt{std::uint32_t(b + 1)}).v - 1);
  };
  return GroupAction<Elt>(F.elements(), g, [&F](std::size_t s, const Elt& x) {
    return F.mul(Elt{std::uint32_t(s + 1)}, x);
  });
}

// The Fourier kernel psi(x y) on [gl1/GL1]; its square is q times the
// twisted identity.
Kernel gl1_kernel(const Ctx& C) {
  Kernel k;
  k.eval = [&C](std::uint32_t x, std::uint32_t y) {
    // sum over the stabilizer-free form: psi summed along the orbit of y
    CycInt s(C.p());
    for (Elt u : C.F().units()) s += C.psi(C.F().mul(u, C.F().mul(Elt{x}, Elt{y})));
    return s;
  };
  return k;
}

TEST(Groupoid, ScalingOnF3HasTwoClasses) {
  FieldCtx F = make_field(3, 1);
  auto a = scaling_action(F);
  EXPECT_FALSE(a.verify_axioms());
  FiniteGroupoid G(a);
  ASSERT_EQ(G.size(), 2u);
  EXPECT_EQ(G.rep(0), 0u);
  EXPECT_EQ(G.aut(0), 2u);
  EXPECT_EQ(G.cls(1).orbit, 2u);
  EXPECT_EQ(G.aut(1), 1u);
  EXPECT_EQ(G.class_of(2), 1u);
}

TEST(Groupoid, OrbitStabilizerHoldsOnF25) {
  FieldCtx F = make_field(5, 2);
  auto a = scaling_action(F);
  FiniteGroupoid G(a);
  std::uint64_t total = 0;
  for (const auto& c : G.classes()) {
    EXPECT_EQ(c.aut * c.orbit, G.group_order());
    total += c.orbit;
  }
  EXPECT_EQ(total, 25u);
}

TEST(Groupoid, BrokenActionIsRejected) {
  FieldCtx F = make_field(5, 1);
  GroupSpec g;
  g.order = 4;
  g.identity = 0;
  EXPECT_THROW(GroupAction<Elt>(F.units(), g, [](std::size_t, const Elt&) { return Elt{0}; }),
               ActionError);
  // A non-homomorphic assignment is caught by verify_axioms.
  g.mul = [](std::size_t a, std::size_t b) { return (a + b) % 4; };
  GroupAction<Elt> bad(F.elements(), g, [&F](std::size_t s, const Elt& x) {
    return s == 0 ? x : F.neg(x);
  });
  EXPECT_TRUE(bad.verify_axioms().has_value());
}

TEST(Groupoid, PushQuotientSumsAlongTheOrbit) {
  FieldCtx F = make_field(5, 1);
  auto a = scaling_action(F);
  FiniteGroupoid G(a);
  std::vector<CycNum> f;
  for (std::uint32_t i = 0; i < 5; ++i) f.emplace_back(5, Rational(i));
  ClassFn out = push_quotient(a, G, f);
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[0], CycNum(5, Rational(0)));
  EXPECT_EQ(out[1], CycNum(5, Rational(1 + 2 + 3 + 4)));
}

TEST(Groupoid, Gl1FourierSquaresToScaledTwist) {
  for (unsigned q : {3u, 5u, 7u, 9u}) {
    Ctx C = Ctx::of_order(q);
    auto a = scaling_action(C.F());
    FiniteGroupoid G(a);
    InvolutionOptions opt;
    opt.scale = Rational(q);
    opt.twist = [&C](std::uint32_t x) { return C.F().neg(Elt{x}).v; };
    auto rep = check_involutive(gl1_kernel(C), G, C.p(), opt);
    EXPECT_TRUE(rep.pass) << "q=" << q;
    EXPECT_EQ(rep.method, "matrix");
    EXPECT_TRUE(rep.invariant);
    EXPECT_EQ(rep.classes, 2u);
  }
}

TEST(Groupoid, WrongScaleProducesAWitness) {
  Ctx C = Ctx::of_order(5);
  auto a = scaling_action(C.F());
  FiniteGroupoid G(a);
  InvolutionOptions opt;
  opt.scale = Rational(4);
  auto rep = check_involutive(gl1_kernel(C), G, C.p(), opt);
  EXPECT_FALSE(rep.pass);
  ASSERT_TRUE(rep.witness.has_value());
  EXPECT_EQ(rep.witness->expected, Rational(4) * Rational(G.aut(rep.witness->z)));
}

TEST(Groupoid, MatrixCapSkips) {
  Ctx C = Ctx::of_order(3);
  auto a = scaling_action(C.F());
  FiniteGroupoid G(a);
  InvolutionOptions opt;
  opt.matrix_cap = 1;
  auto rep = check_involutive(gl1_kernel(C), G, C.p(), opt);
  EXPECT_EQ(rep.method, "skipped");
  EXPECT_FALSE(rep.pass);
}

TEST(Groupoid, NonInvariantKernelUsesPointSum) {
  Ctx C = Ctx::of_order(5);
  auto a = scaling_action(C.F());
  FiniteGroupoid G(a);
  Kernel k;
  k.eval = [&C](std::uint32_t x, std::uint32_t y) { return C.psi(C.F().mul(Elt{x}, Elt{y})); };
  InvolutionOptions opt;
  opt.scale = Rational(5);
  auto rep = check_involutive(k, G, C.p(), opt);
  EXPECT_FALSE(rep.invariant);
  EXPECT_EQ(rep.method, "point-sum");
  // Point sums equal the class sums of the orbit-summed kernel.
  for (std::uint32_t z = 0; z < G.size(); ++z)
    for (std::uint32_t x = 0; x < G.size(); ++x) {
      CycNum d = delta(k, k, G, G.rep(z), G.rep(x), C.p());
      CycNum direct(C.p());
      for (Elt y : C.F().elements())
        direct += CycNum(k(G.rep(z), y.v) * k(y.v, G.rep(x)));
      EXPECT_EQ(d, direct * make_rational(1, 4));
    }
}

TEST(Groupoid, ApplyIsLinearAndMatchesClasswise) {
  Ctx C = Ctx::of_order(7);
  auto a = scaling_action(C.F());
  FiniteGroupoid G(a);
  Kernel k = gl1_kernel(C);
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> d(-9, 9);
  auto random_fn = [&] {
    ClassFn f;
    for (std::size_t i = 0; i < G.size(); ++i) f.emplace_back(C.p(), Rational(d(rng)));
    return f;
  };
  for (int trial = 0; trial < 20; ++trial) {
    ClassFn f = random_fn(), g = random_fn();
    Rational c(d(rng));
    ClassFn fg(G.size(), CycNum(C.p()));
    for (std::size_t i = 0; i < G.size(); ++i) fg[i] = f[i] + g[i] * c;
    ClassFn Ff = apply(k, G, f, C.p()), Fg = apply(k, G, g, C.p());
    ClassFn Ffg = apply(k, G, fg, C.p(), 3);
    for (std::size_t i = 0; i < G.size(); ++i) EXPECT_EQ(Ffg[i], Ff[i] + Fg[i] * c);
    EXPECT_EQ(Ff, apply_classwise(k, G, f, C.p()));
  }
}

TEST(Groupoid, PushforwardUsesAutomorphismWeights) {
  // [F_5 / F_5^x] -> [pt / F_5^x]: two classes with aut 4 and 1.
  FieldCtx F = make_field(5, 1);
  auto a = scaling_action(F);
  FiniteGroupoid G(a);
  GroupSpec g;
  g.order = 4;
  g.identity = 0;
  GroupAction<int> pt(std::vector<int>{0}, g, [](std::size_t, const int& x) { return x; });
  FiniteGroupoid P(pt);
  ASSERT_EQ(P.aut(0), 4u);
  ClassFn f{CycNum(5, Rational(3)), CycNum(5, Rational(7))};
  ClassFn out = pushforward(G, P, [](std::uint32_t) { return 0u; }, f, 5);
  // 3 * 4/4 + 7 * 4/1
  EXPECT_EQ(out[0], CycNum(5, Rational(31)));
  ClassFn back = pullback(G, P, [](std::uint32_t) { return 0u; }, out);
  EXPECT_EQ(back[0], out[0]);
  EXPECT_EQ(back[1], out[0]);
  ClassFn ext = extend_by_zero(P, G, [](std::uint32_t) { return 1u; }, out, 5);
  EXPECT_TRUE(ext[0].is_zero());
  EXPECT_EQ(ext[1], out[0]);
}

TEST(Groupoid, QuotientKernelSumsOverExtraGroup) {
  Ctx C = Ctx::of_order(5);
  Kernel k;
  k.eval = [&C](std::uint32_t x, std::uint32_t y) { return C.psi(C.F().mul(Elt{x}, Elt{y})); };
  std::vector<std::vector<std::uint32_t>> extra;
  for (Elt u : C.F().units()) {
    std::vector<std::uint32_t> perm;
    for (Elt x : C.F().elements()) perm.push_back(C.F().mul(u, x).v);
    extra.push_back(perm);
  }
  Kernel kq = quotient_kernel(k, extra, C.p());
  Kernel ref = gl1_kernel(C);
  for (std::uint32_t x = 0; x < 5; ++x)
    for (std::uint32_t y = 0; y < 5; ++y) EXPECT_EQ(kq(x, y), ref(x, y));
}

TEST(Groupoid, AssembleSectorsZeroesCrossBlocks) {
  Kernel one;
  one.eval = [](std::uint32_t, std::uint32_t) { return CycInt::constant(3, 1); };
  Kernel two;
  two.eval = [](std::uint32_t, std::uint32_t) { return CycInt::constant(3, 2); };
  Kernel k = assemble_sectors({0, 0, 1}, {{{0, 0}, one}, {{1, 1}, two}}, 3);
  EXPECT_EQ(k(0, 1), CycInt::constant(3, 1));
  EXPECT_EQ(k(2, 2), CycInt::constant(3, 2));
  EXPECT_TRUE(k(0, 2).is_zero());
  EXPECT_TRUE(k(2, 1).is_zero());
  EXPECT_THROW(assemble_sectors({0, 5}, {{{0, 0}, one}}, 3), std::invalid_argument);
}

TEST(Groupoid, ThreadCountDoesNotChangeTheResult) {
  Ctx C = Ctx::of_order(7);
  auto a = scaling_action(C.F());
  FiniteGroupoid G(a);
  Kernel k;
  k.eval = [&C](std::uint32_t x, std::uint32_t y) {
    return C.psi(C.F().add(C.F().mul(Elt{x}, Elt{y}), Elt{x}));
  };
  InvolutionOptions one, many;
  one.threads = 1;
  many.threads = 4;
  auto r1 = check_involutive(k, G, C.p(), one);
  auto r4 = check_involutive(k, G, C.p(), many);
  EXPECT_EQ(r1.mismatches, r4.mismatches);
  EXPECT_EQ(r1.method, r4.method);
  ASSERT_EQ(r1.witness.has_value(), r4.witness.has_value());
  if (r1.witness) {
    EXPECT_EQ(r1.witness->delta, r4.witness->delta);
    EXPECT_EQ(r1.witness->z, r4.witness->z);
  }
}

TEST(Groupoid, KernelCsvHasHeaderAndRows) {
  Ctx C = Ctx::of_order(3);
  auto a = scaling_action(C.F());
  FiniteGroupoid G(a);
  std::string csv = kernel_csv(gl1_kernel(C), G, [](std::uint32_t i) { return std::to_string(i); });
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "\"class\",\"0\",\"1\"");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 3);
}

TEST(Groupoid, ParallelForRethrows) {
  EXPECT_THROW(parallel_for(100, 4, [](std::size_t i) {
                 if (i == 37) throw std::runtime_error("boom");
               }),
               std::runtime_error);
}

}  // namespace
}  // namespace bkf
