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

// Table-driven finite fields F_q = F_p[u]/(m(u)) and their quadratic
// extensions F_{q^2}.
//
// Elements are plain indices; all arithmetic goes through the context
// object, in the style of `F.mul(a, b)`. The index of an element encodes its
// coefficient vector (c_0, ..., c_{k-1}) with c_0 as the most significant
// base-p digit, so integer order on indices is lexicographic order on
// coefficient vectors compared low-degree-first. Every canonical ordering in
// the library (moduli, class representatives, report rows) is derived from
// this.

#ifndef BKFOURIER_FIELD_HPP_
#define BKFOURIER_FIELD_HPP_

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace bkf {

struct Elt {
  std::uint32_t v = 0;
  friend auto operator<=>(const Elt&, const Elt&) = default;
};

// Element of F_{q^2} = F_q[w]/(w^2 + c1 w + c0), index a0 * q + a1 for
// a0 + a1 w.
struct QElt {
  std::uint32_t v = 0;
  friend auto operator<=>(const QElt&, const QElt&) = default;
};

class FieldError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline bool is_prime(unsigned n) {
  if (n < 2) return false;
  for (unsigned d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

namespace detail {

// Dense polynomials over Z/p, low-degree-first, no trailing zeros.
using Poly = std::vector<unsigned>;

inline void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline Poly poly_mod(Poly a, const Poly& m, unsigned p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  // m is monic.
  while (a.size() > dm) {
    const unsigned lead = a.back();
    const std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i) {
      a[shift + i] = (a[shift + i] + p - (lead * m[i]) % p) % p;
    }
    trim(a);
  }
  return a;
}

inline bool has_monic_factor_of_degree(const Poly& f, unsigned d, unsigned p) {
  // Enumerate monic polynomials of degree d.
  std::uint64_t count = 1;
  for (unsigned i = 0; i < d; ++i) count *= p;
  for (std::uint64_t code = 0; code < count; ++code) {
    Poly g(d + 1);
    std::uint64_t c = code;
    for (unsigned i = 0; i < d; ++i) {
      g[i] = static_cast<unsigned>(c % p);
      c /= p;
    }
    g[d] = 1;
    if (poly_mod(f, g, p).empty()) return true;
  }
  return false;
}

inline bool is_irreducible(const Poly& f, unsigned p) {
  const unsigned k = static_cast<unsigned>(f.size() - 1);
  for (unsigned d = 1; 2 * d <= k; ++d) {
    if (has_monic_factor_of_degree(f, d, p)) return false;
  }
  return true;
}

}  // namespace detail

class FieldCtx {
 public:
  static constexpr std::uint64_t kDefaultLimit = 256;

  FieldCtx() = default;

  // F_{p^k} with the lexicographically smallest monic irreducible modulus.
  FieldCtx(unsigned p, unsigned k, std::uint64_t limit = kDefaultLimit) : p_(p), k_(k) {
    if (!is_prime(p)) throw FieldError("characteristic " + std::to_string(p) + " is not prime");
    if (k == 0) throw FieldError("extension degree must be positive");
    std::uint64_t q = 1;
    for (unsigned i = 0; i < k; ++i) {
      q *= p;
      if (q > limit) {
        throw FieldError("field size " + std::to_string(p) + "^" + std::to_string(k) +
                         " exceeds enumeration limit " + std::to_string(limit));
      }
    }
    q_ = static_cast<unsigned>(q);
    modulus_ = find_modulus();
    build_tables();
  }

  unsigned characteristic() const { return p_; }
  unsigned degree() const { return k_; }
  unsigned order() const { return q_; }
  bool odd() const { return p_ != 2; }
  // Monic modulus, coefficients low-degree-first (size k+1).
  const std::vector<unsigned>& modulus() const { return modulus_; }

  Elt zero() const { return Elt{0}; }
  Elt one() const { return one_; }
  Elt from_int(long long n) const {
    long long r = n % static_cast<long long>(p_);
    if (r < 0) r += p_;
    return from_coeffs(std::vector<unsigned>{static_cast<unsigned>(r)});
  }
  Elt from_coeffs(std::span<const unsigned> c) const {
    std::uint32_t v = 0;
    for (unsigned i = 0; i < k_; ++i) v = v * p_ + (i < c.size() ? c[i] % p_ : 0);
    return Elt{v};
  }
  std::vector<unsigned> coeffs(Elt a) const {
    std::vector<unsigned> c(k_);
    std::uint32_t v = a.v;
    for (unsigned i = k_; i-- > 0;) {
      c[i] = v % p_;
      v /= p_;
    }
    return c;
  }

  Elt add(Elt a, Elt b) const { return Elt{add_[a.v * q_ + b.v]}; }
  Elt neg(Elt a) const { return Elt{neg_[a.v]}; }
  Elt sub(Elt a, Elt b) const { return add(a, neg(b)); }
  Elt mul(Elt a, Elt b) const { return Elt{mul_[a.v * q_ + b.v]}; }
  Elt inv(Elt a) const {
    if (a.v == 0) throw std::domain_error("inverse of zero in F_q");
    return Elt{inv_[a.v]};
  }
  Elt div(Elt a, Elt b) const { return mul(a, inv(b)); }
  Elt pow(Elt a, std::uint64_t e) const {
    Elt r = one_;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  Elt square(Elt a) const { return mul(a, a); }
  bool is_zero(Elt a) const { return a.v == 0; }

  // Absolute trace Tr_{F_q/F_p}(x) = sum_{i<k} x^{p^i}, as an integer mod p.
  unsigned trace_to_prime(Elt a) const { return trace_[a.v]; }

  bool is_square(Elt a) const { return sqrt_[a.v] >= 0; }
  // Smallest square root, if any.
  std::optional<Elt> sqrt(Elt a) const {
    if (sqrt_[a.v] < 0) return std::nullopt;
    return Elt{static_cast<std::uint32_t>(sqrt_[a.v])};
  }
  // Smallest non-square (odd characteristic only).
  Elt nonsquare() const {
    for (std::uint32_t v = 1; v < q_; ++v) {
      if (sqrt_[v] < 0) return Elt{v};
    }
    throw std::domain_error("every element of F_q is a square");
  }

  std::vector<Elt> elements() const {
    std::vector<Elt> r(q_);
    for (std::uint32_t v = 0; v < q_; ++v) r[v] = Elt{v};
    return r;
  }
  std::vector<Elt> units() const {
    std::vector<Elt> r;
    r.reserve(q_ - 1);
    for (std::uint32_t v = 1; v < q_; ++v) r.push_back(Elt{v});
    return r;
  }

  // Prime fields print as the integer, extensions as "[c0 c1 ...]".
  std::string to_string(Elt a) const {
    if (k_ == 1) return std::to_string(a.v);
    auto c = coeffs(a);
    std::string s = "[";
    for (unsigned i = 0; i < k_; ++i) {
      if (i) s += ' ';
      s += std::to_string(c[i]);
    }
    return s + "]";
  }

  std::string modulus_string() const {
    std::string s;
    for (unsigned i = k_ + 1; i-- > 0;) {
      unsigned c = modulus_[i];
      if (c == 0) continue;
      if (!s.empty()) s += " + ";
      if (i == 0 || c != 1) s += std::to_string(c);
      if (i >= 1) s += "u";
      if (i >= 2) s += "^" + std::to_string(i);
    }
    return s;
  }

 private:
  std::vector<unsigned> find_modulus() const {
    if (k_ == 1) return {0, 1};
    std::uint64_t count = 1;
    for (unsigned i = 0; i < k_; ++i) count *= p_;
    for (std::uint64_t code = 0; code < count; ++code) {
      // code's most significant digit is c_0.
      std::vector<unsigned> f(k_ + 1);
      std::uint64_t c = code;
      for (unsigned i = k_; i-- > 0;) {
        f[i] = static_cast<unsigned>(c % p_);
        c /= p_;
      }
      f[k_] = 1;
      if (f[0] == 0) continue;
      if (detail::is_irreducible(f, p_)) return f;
    }
    throw FieldError("no irreducible polynomial found");
  }

  void build_tables() {
    add_.assign(std::size_t(q_) * q_, 0);
    mul_.assign(std::size_t(q_) * q_, 0);
    neg_.assign(q_, 0);
    inv_.assign(q_, 0);
    trace_.assign(q_, 0);
    sqrt_.assign(q_, -1);
    one_ = from_coeffs(std::vector<unsigned>{1});
    for (std::uint32_t a = 0; a < q_; ++a) {
      auto ca = coeffs(Elt{a});
      std::vector<unsigned> cn(k_);
      for (unsigned i = 0; i < k_; ++i) cn[i] = (p_ - ca[i]) % p_;
      neg_[a] = from_coeffs(cn).v;
      for (std::uint32_t b = 0; b < q_; ++b) {
        auto cb = coeffs(Elt{b});
        std::vector<unsigned> s(k_);
        for (unsigned i = 0; i < k_; ++i) s[i] = (ca[i] + cb[i]) % p_;
        add_[a * q_ + b] = from_coeffs(s).v;
        detail::Poly prod(2 * k_, 0);
        for (unsigned i = 0; i < k_; ++i) {
          for (unsigned j = 0; j < k_; ++j) prod[i + j] = (prod[i + j] + ca[i] * cb[j]) % p_;
        }
        auto r = detail::poly_mod(prod, modulus_, p_);
        mul_[a * q_ + b] = from_coeffs(r).v;
      }
    }
    for (std::uint32_t a = 1; a < q_; ++a) {
      for (std::uint32_t b = 1; b < q_; ++b) {
        if (mul_[a * q_ + b] == one_.v) {
          inv_[a] = b;
          break;
        }
      }
    }
    for (std::uint32_t a = 0; a < q_; ++a) {
      // sum of Frobenius conjugates lies in F_p, i.e. has coeffs (t, 0, ..., 0).
      Elt t = zero();
      Elt x{a};
      for (unsigned i = 0; i < k_; ++i) {
        t = add(t, x);
        x = pow(x, p_);
      }
      auto ct = coeffs(t);
      for (unsigned i = 1; i < k_; ++i) {
        if (ct[i] != 0) throw std::logic_error("trace left the prime field");
      }
      trace_[a] = ct[0];
    }
    for (std::uint32_t r = q_; r-- > 0;) sqrt_[mul_[r * q_ + r]] = static_cast<int>(r);
  }

  unsigned p_ = 0;
  unsigned k_ = 0;
  unsigned q_ = 0;
  std::vector<unsigned> modulus_;
  Elt one_{};
  std::vector<std::uint32_t> add_, mul_, neg_, inv_;
  std::vector<unsigned> trace_;
  std::vector<int> sqrt_;
};

inline FieldCtx make_field(unsigned p, unsigned k,
                           std::uint64_t limit = FieldCtx::kDefaultLimit) {
  return FieldCtx(p, k, limit);
}

// Parses a prime power q = p^k.
inline std::optional<std::pair<unsigned, unsigned>> prime_power(unsigned q) {
  if (q < 2) return std::nullopt;
  unsigned p = 2;
  while (q % p != 0) ++p;
  unsigned k = 0;
  unsigned r = q;
  while (r % p == 0) {
    r /= p;
    ++k;
  }
  if (r != 1) return std::nullopt;
  return std::make_pair(p, k);
}

inline FieldCtx make_field_of_order(unsigned q, std::uint64_t limit = FieldCtx::kDefaultLimit) {
  auto pk = prime_power(q);
  if (!pk) throw FieldError(std::to_string(q) + " is not a prime power");
  return FieldCtx(pk->first, pk->second, limit);
}

// F_{q^2} over a stored copy of F_q. The defining quadratic is the
// lexicographically smallest monic irreducible w^2 + c1 w + c0, comparing
// (c0, c1) in field-element order.
class QuadExtCtx {
 public:
  QuadExtCtx() = default;
  explicit QuadExtCtx(FieldCtx base) : base_(std::move(base)) {
    const unsigned q = base_.order();
    bool found = false;
    for (std::uint32_t c0 = 1; c0 < q && !found; ++c0) {
      for (std::uint32_t c1 = 0; c1 < q && !found; ++c1) {
        bool has_root = false;
        for (std::uint32_t x = 0; x < q && !has_root; ++x) {
          Elt e{x};
          Elt val = base_.add(base_.add(base_.square(e), base_.mul(Elt{c1}, e)), Elt{c0});
          has_root = base_.is_zero(val);
        }
        if (!has_root) {
          c0_ = Elt{c0};
          c1_ = Elt{c1};
          found = true;
        }
      }
    }
    if (!found) throw FieldError("no irreducible quadratic over F_q");
    const std::uint32_t n = q * q;
    frob_.resize(n);
    for (std::uint32_t v = 0; v < n; ++v) frob_[v] = pow(QElt{v}, q).v;
    for (std::uint32_t v = 0; v < n; ++v) {
      if (frob_[frob_[v]] != v) throw std::logic_error("Frobenius is not an involution");
    }
  }

  const FieldCtx& base() const { return base_; }
  unsigned order() const { return base_.order() * base_.order(); }
  // w^2 + c1 w + c0 as (c0, c1).
  std::pair<Elt, Elt> modulus() const { return {c0_, c1_}; }

  QElt make(Elt a0, Elt a1) const { return QElt{a0.v * base_.order() + a1.v}; }
  Elt part0(QElt x) const { return Elt{x.v / base_.order()}; }
  Elt part1(QElt x) const { return Elt{x.v % base_.order()}; }

  QElt embed(Elt a) const { return make(a, base_.zero()); }
  bool in_base(QElt x) const { return part1(x).v == 0; }
  Elt to_base(QElt x) const {
    if (!in_base(x)) throw std::domain_error("element of F_{q^2} is not in F_q");
    return part0(x);
  }

  QElt zero() const { return QElt{0}; }
  QElt one() const { return embed(base_.one()); }
  bool is_zero(QElt x) const { return x.v == 0; }

  QElt add(QElt x, QElt y) const {
    return make(base_.add(part0(x), part0(y)), base_.add(part1(x), part1(y)));
  }
  QElt neg(QElt x) const { return make(base_.neg(part0(x)), base_.neg(part1(x))); }
  QElt sub(QElt x, QElt y) const { return add(x, neg(y)); }
  QElt mul(QElt x, QElt y) const {
    const FieldCtx& F = base_;
    Elt a0 = part0(x), a1 = part1(x), b0 = part0(y), b1 = part1(y);
    // w^2 = -c1 w - c0
    Elt hi = F.mul(a1, b1);
    Elt r0 = F.sub(F.mul(a0, b0), F.mul(hi, c0_));
    Elt r1 = F.sub(F.add(F.mul(a0, b1), F.mul(a1, b0)), F.mul(hi, c1_));
    return make(r0, r1);
  }
  QElt pow(QElt x, std::uint64_t e) const {
    QElt r = one();
    while (e) {
      if (e & 1) r = mul(r, x);
      x = mul(x, x);
      e >>= 1;
    }
    return r;
  }
  QElt inv(QElt x) const {
    if (is_zero(x)) throw std::domain_error("inverse of zero in F_{q^2}");
    return pow(x, std::uint64_t(order()) - 2);
  }
  QElt scale(Elt a, QElt x) const { return mul(embed(a), x); }

  // x -> x^q.
  QElt frob(QElt x) const { return QElt{frob_[x.v]}; }
  Elt norm(QElt x) const { return to_base(mul(x, frob(x))); }
  Elt trace(QElt x) const { return to_base(add(x, frob(x))); }

  // Smallest nonzero s with s^q = -s (odd characteristic).
  QElt twisted_unit() const {
    if (!base_.odd()) throw std::domain_error("no twisted sector in characteristic 2");
    for (std::uint32_t v = 1; v < order(); ++v) {
      QElt s{v};
      if (frob(s) == neg(s)) return s;
    }
    throw std::logic_error("no element with s^q = -s");
  }

  std::vector<QElt> elements() const {
    std::vector<QElt> r(order());
    for (std::uint32_t v = 0; v < order(); ++v) r[v] = QElt{v};
    return r;
  }

  std::string to_string(QElt x) const {
    return "(" + base_.to_string(part0(x)) + "+" + base_.to_string(part1(x)) + "w)";
  }

 private:
  FieldCtx base_;
  Elt c0_{}, c1_{};
  std::vector<std::uint32_t> frob_;
};

}  // namespace bkf

#endif  // BKFOURIER_FIELD_HPP_
