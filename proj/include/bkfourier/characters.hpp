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

// Additive and quadratic characters of F_q and the character sums built
// from them.

#ifndef BKFOURIER_CHARACTERS_HPP_
#define BKFOURIER_CHARACTERS_HPP_

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "bkfourier/cyclotomic.hpp"
#include "bkfourier/field.hpp"

namespace bkf {

// F_q together with F_{q^2} and the additive character
// psi(x) = zeta_p^{Tr(scale * x)}. The default scale is 1.
class Ctx {
 public:
  Ctx() = default;
  explicit Ctx(FieldCtx F) : E_(std::move(F)) {
    scale_ = E_.base().one();
    if (E_.base().odd()) {
      s0_ = E_.twisted_unit();
      n_ = E_.to_base(E_.mul(s0_, s0_));
    }
  }
  Ctx(FieldCtx F, Elt psi_scale) : Ctx(std::move(F)) {
    if (psi_scale.v == 0) throw std::invalid_argument("psi scale must be nonzero");
    scale_ = psi_scale;
  }

  static Ctx of_order(unsigned q) { return Ctx(make_field_of_order(q)); }

  const FieldCtx& F() const { return E_.base(); }
  const QuadExtCtx& E() const { return E_; }
  unsigned p() const { return F().characteristic(); }
  unsigned q() const { return F().order(); }
  bool odd() const { return F().odd(); }
  Elt psi_scale() const { return scale_; }

  // Twisted generator s0 (s0^q = -s0) and n = s0^2, a non-square of F_q.
  QElt s0() const {
    require_odd();
    return s0_;
  }
  Elt n() const {
    require_odd();
    return n_;
  }

  unsigned psi_exp(Elt x) const { return F().trace_to_prime(F().mul(scale_, x)); }
  CycInt psi(Elt x) const { return CycInt::zeta(p(), psi_exp(x)); }
  CycInt zero() const { return CycInt(p()); }
  CycInt integer(std::int64_t n) const { return CycInt::constant(p(), n); }

  int alpha_o(Elt x) const {
    require_odd();
    if (x.v == 0) return 0;
    return F().is_square(x) ? 1 : -1;
  }

  // S(alpha_o, psi_b) = sum_{t != 0} alpha_o(t) psi(t b).
  CycInt gauss_S(Elt b) const {
    require_odd();
    CycInt r(p());
    for (Elt t : F().units()) r.add_zeta(psi_exp(F().mul(t, b)), alpha_o(t));
    return r;
  }

  // kappa(b) = sum_{s in F_q^x} psi(s^{-2} b).
  CycInt kappa(Elt b) const {
    CycInt r(p());
    for (Elt s : F().units()) r.add_zeta(psi_exp(F().mul(F().inv(F().square(s)), b)));
    return r;
  }

  // kappa'(b) = sum over s in F_{q^2}, s != 0, s^q = -s of psi(s^{-2} b).
  CycInt kappa_prime(Elt b) const {
    require_odd();
    CycInt r(p());
    for (QElt s : E_.elements()) {
      if (E_.is_zero(s) || E_.frob(s) != E_.neg(s)) continue;
      QElt s2inv = E_.inv(E_.mul(s, s));
      if (!E_.in_base(s2inv)) throw std::logic_error("s^-2 outside F_q for twisted s");
      r.add_zeta(psi_exp(F().mul(E_.to_base(s2inv), b)));
    }
    return r;
  }

  // sum_{s in F_q^x} psi(s * tau).
  CycInt unit_sum(Elt tau) const {
    CycInt r(p());
    for (Elt s : F().units()) r.add_zeta(psi_exp(F().mul(s, tau)));
    return r;
  }

  // Phi(x, alpha, b) = sum_{s, eps} psi(s + s^{-2} b (tr + 2 eps alpha)) with
  // alpha given through alpha itself (odd characteristic).
  CycInt Phi(Elt tr, Elt alpha, Elt b) const {
    require_odd();
    const FieldCtx& f = F();
    CycInt r(p());
    Elt two_alpha = f.add(alpha, alpha);
    for (int e = 0; e < 2; ++e) {
      Elt inner = f.mul(b, e == 0 ? f.add(tr, two_alpha) : f.sub(tr, two_alpha));
      for (Elt s : f.units()) {
        r.add_zeta(psi_exp(f.add(s, f.mul(f.inv(f.square(s)), inner))));
      }
    }
    return r;
  }

  // sum_{s in F_q^x} psi(s + s^{-2} z).
  CycInt shifted_inverse_square_sum(Elt z) const {
    const FieldCtx& f = F();
    CycInt r(p());
    for (Elt s : f.units()) r.add_zeta(psi_exp(f.add(s, f.mul(f.inv(f.square(s)), z))));
    return r;
  }

  void require_odd() const {
    if (!odd()) throw std::domain_error("operation needs odd characteristic");
  }

 private:
  QuadExtCtx E_;
  Elt scale_{};
  QElt s0_{};
  Elt n_{};
};

}  // namespace bkf

#endif  // BKFOURIER_CHARACTERS_HPP_
