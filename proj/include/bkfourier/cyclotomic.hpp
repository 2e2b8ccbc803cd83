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

// Exact arithmetic in the cyclotomic field Q(zeta_p).
//
// Two representations are provided:
//
//  * CycInt: an element of the group ring Z[C_p], stored as p integer
//    coefficients over zeta^0..zeta^{p-1}. The representation is redundant
//    (1 + zeta + ... + zeta^{p-1} = 0), which makes it cheap to accumulate
//    character sums: every psi value is a single basis vector. All kernels
//    are integral, so hot loops run on CycInt.
//
//  * CycNum: the canonical element of Q(zeta_p) in the basis
//    zeta^0..zeta^{p-2} with exact rational coefficients. Equality is
//    coefficient-wise.

#ifndef BKFOURIER_CYCLOTOMIC_HPP_
#define BKFOURIER_CYCLOTOMIC_HPP_

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "bkfourier/rational.hpp"

namespace bkf {

namespace detail {

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) {
    throw std::overflow_error("CycInt coefficient overflow");
  }
  return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) {
    throw std::overflow_error("CycInt coefficient overflow");
  }
  return r;
}

inline void require_same_prime(unsigned a, unsigned b) {
  if (a != b) throw std::invalid_argument("cyclotomic operands over different p");
}

}  // namespace detail

class CycInt {
 public:
  using Coeffs = boost::container::small_vector<std::int64_t, 8>;

  CycInt() = default;
  explicit CycInt(unsigned p) : p_(p), c_(p, 0) {
    if (p < 2) throw std::invalid_argument("CycInt needs p >= 2");
  }

  static CycInt constant(unsigned p, std::int64_t n) {
    CycInt r(p);
    r.c_[0] = n;
    return r;
  }
  static CycInt zeta(unsigned p, unsigned e) {
    CycInt r(p);
    r.c_[e % p] = 1;
    return r;
  }

  unsigned prime() const { return p_; }
  std::int64_t operator[](unsigned e) const { return c_[e]; }
  const Coeffs& coeffs() const { return c_; }

  void add_zeta(unsigned e, std::int64_t n = 1) {
    c_[e % p_] = detail::checked_add(c_[e % p_], n);
  }

  CycInt& operator+=(const CycInt& o) {
    detail::require_same_prime(p_, o.p_);
    for (unsigned i = 0; i < p_; ++i) c_[i] = detail::checked_add(c_[i], o.c_[i]);
    return *this;
  }
  CycInt& operator-=(const CycInt& o) {
    detail::require_same_prime(p_, o.p_);
    for (unsigned i = 0; i < p_; ++i) {
      c_[i] = detail::checked_add(c_[i], -o.c_[i]);
    }
    return *this;
  }
  CycInt& operator*=(std::int64_t k) {
    for (auto& x : c_) x = detail::checked_mul(x, k);
    return *this;
  }
  CycInt operator-() const {
    CycInt r = *this;
    r *= -1;
    return r;
  }
  friend CycInt operator+(CycInt a, const CycInt& b) { return a += b; }
  friend CycInt operator-(CycInt a, const CycInt& b) { return a -= b; }
  friend CycInt operator*(CycInt a, std::int64_t k) { return a *= k; }
  friend CycInt operator*(std::int64_t k, CycInt a) { return a *= k; }

  friend CycInt operator*(const CycInt& a, const CycInt& b) {
    detail::require_same_prime(a.p_, b.p_);
    const unsigned p = a.p_;
    CycInt r(p);
    for (unsigned i = 0; i < p; ++i) {
      if (a.c_[i] == 0) continue;
      for (unsigned j = 0; j < p; ++j) {
        if (b.c_[j] == 0) continue;
        unsigned e = (i + j) % p;
        r.c_[e] = detail::checked_add(r.c_[e], detail::checked_mul(a.c_[i], b.c_[j]));
      }
    }
    return r;
  }

  // Same element with zeta^{p-1} coefficient eliminated.
  CycInt canonical() const {
    CycInt r(p_);
    const std::int64_t top = c_[p_ - 1];
    for (unsigned i = 0; i + 1 < p_; ++i) r.c_[i] = detail::checked_add(c_[i], -top);
    return r;
  }

  bool is_zero() const {
    for (unsigned i = 0; i < p_; ++i) {
      if (c_[i] != c_[0]) return false;
    }
    return true;
  }

  // The rational integer this element equals, if it lies in Z.
  std::optional<std::int64_t> as_integer() const {
    const std::int64_t top = c_[p_ - 1];
    for (unsigned i = 1; i + 1 < p_; ++i) {
      if (c_[i] != top) return std::nullopt;
    }
    if (p_ == 2) return c_[0] - c_[1];
    return c_[0] - top;
  }

  friend bool operator==(const CycInt& a, const CycInt& b) {
    if (a.p_ != b.p_) return false;
    const std::int64_t ta = a.c_[a.p_ - 1];
    const std::int64_t tb = b.c_[b.p_ - 1];
    for (unsigned i = 0; i + 1 < a.p_; ++i) {
      if (a.c_[i] - ta != b.c_[i] - tb) return false;
    }
    return true;
  }

 private:
  unsigned p_ = 0;
  Coeffs c_;
};

class CycNum {
 public:
  CycNum() = default;
  explicit CycNum(unsigned p) : p_(p), c_(p - 1) {
    if (p < 2) throw std::invalid_argument("CycNum needs p >= 2");
  }
  CycNum(unsigned p, const Rational& r) : CycNum(p) { c_[0] = r; }
  explicit CycNum(const CycInt& z) : CycNum(z.prime()) {
    const std::int64_t top = z[p_ - 1];
    for (unsigned i = 0; i + 1 < p_; ++i) c_[i] = Rational(z[i] - top);
  }
  // Coefficients in the basis zeta^0..zeta^{p-2}.
  CycNum(unsigned p, std::vector<Rational> coeffs) : p_(p), c_(std::move(coeffs)) {
    if (p < 2 || c_.size() != p - 1) {
      throw std::invalid_argument("CycNum needs p-1 coefficients");
    }
  }

  static CycNum zeta(unsigned p, unsigned e) { return CycNum(CycInt::zeta(p, e)); }

  unsigned prime() const { return p_; }
  const std::vector<Rational>& coeffs() const { return c_; }

  bool is_zero() const {
    for (const auto& x : c_) {
      if (x != 0) return false;
    }
    return true;
  }
  std::optional<Rational> as_rational() const {
    for (std::size_t i = 1; i < c_.size(); ++i) {
      if (c_[i] != 0) return std::nullopt;
    }
    return c_[0];
  }

  CycNum& operator+=(const CycNum& o) {
    detail::require_same_prime(p_, o.p_);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  CycNum& operator-=(const CycNum& o) {
    detail::require_same_prime(p_, o.p_);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  CycNum& operator*=(const Rational& k) {
    for (auto& x : c_) x *= k;
    return *this;
  }
  CycNum operator-() const {
    CycNum r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
  }
  friend CycNum operator+(CycNum a, const CycNum& b) { return a += b; }
  friend CycNum operator-(CycNum a, const CycNum& b) { return a -= b; }
  friend CycNum operator*(CycNum a, const Rational& k) { return a *= k; }
  friend CycNum operator*(const Rational& k, CycNum a) { return a *= k; }

  friend CycNum operator*(const CycNum& a, const CycNum& b) {
    detail::require_same_prime(a.p_, b.p_);
    const unsigned p = a.p_;
    std::vector<Rational> full(p);
    for (unsigned i = 0; i + 1 < p; ++i) {
      if (a.c_[i] == 0) continue;
      for (unsigned j = 0; j + 1 < p; ++j) {
        if (b.c_[j] == 0) continue;
        full[(i + j) % p] += a.c_[i] * b.c_[j];
      }
    }
    CycNum r(p);
    for (unsigned i = 0; i + 1 < p; ++i) r.c_[i] = full[i] - full[p - 1];
    return r;
  }
  CycNum& operator*=(const CycNum& o) { return *this = *this * o; }

  friend bool operator==(const CycNum& a, const CycNum& b) {
    return a.p_ == b.p_ && a.c_ == b.c_;
  }

  // "[c0, c1, ..., c_{p-2}]" with exact rational entries.
  std::string to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (i) s += ", ";
      s += bkf::to_string(c_[i]);
    }
    return s + "]";
  }

  static CycNum parse(unsigned p, const std::string& s) {
    if (s.size() < 2 || s.front() != '[' || s.back() != ']') {
      throw std::invalid_argument("bad cyclotomic literal: " + s);
    }
    std::vector<Rational> c;
    std::string body = s.substr(1, s.size() - 2);
    std::size_t pos = 0;
    while (pos <= body.size()) {
      std::size_t comma = body.find(',', pos);
      std::string item = body.substr(pos, comma == std::string::npos ? std::string::npos
                                                                      : comma - pos);
      while (!item.empty() && item.front() == ' ') item.erase(item.begin());
      c.push_back(parse_rational(item));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    return CycNum(p, std::move(c));
  }

 private:
  unsigned p_ = 0;
  std::vector<Rational> c_;
};

inline std::ostream& operator<<(std::ostream& os, const CycNum& z) {
  return os << z.to_string();
}
inline std::ostream& operator<<(std::ostream& os, const CycInt& z) {
  return os << CycNum(z).to_string();
}

}  // namespace bkf

#endif  // BKFOURIER_CYCLOTOMIC_HPP_
