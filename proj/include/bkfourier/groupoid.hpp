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

// Finite quotient groupoids [X/H], functions on them, and Fourier operators
// defined by two-variable kernels.
//
// Points of X are kept sorted, so the canonical representative of a class
// (the minimum of its orbit) is simply the smallest point index in it.
// Kernels are evaluated on point indices. Weighted sums over classes,
// sum_{[y]} K(z, y) g(y) / |Aut(y)|, are computed either from the
// class-indexed matrix with orbit weights or as point sums
// (1/|H|) sum_{y in X} K(z, y) g(y); the two agree for invariant kernels.

#ifndef BKFOURIER_GROUPOID_HPP_
#define BKFOURIER_GROUPOID_HPP_

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bkfourier/cyclotomic.hpp"
#include "bkfourier/parallel.hpp"
#include "bkfourier/rational.hpp"

namespace bkf {

class ActionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Group given abstractly by its order, identity index and multiplication.
struct GroupSpec {
  std::size_t order = 1;
  std::size_t identity = 0;
  std::function<std::size_t(std::size_t, std::size_t)> mul;  // optional
};

template <class Point>
class GroupAction {
 public:
  using ActFn = std::function<Point(std::size_t, const Point&)>;
  using SectorFn = std::function<int(const Point&)>;

  GroupAction() = default;

  GroupAction(std::vector<Point> points, GroupSpec group, const ActFn& act,
              const SectorFn& sector = {})
      : points_(std::move(points)), group_(std::move(group)) {
    std::sort(points_.begin(), points_.end());
    points_.erase(std::unique(points_.begin(), points_.end()), points_.end());
    sectors_.assign(points_.size(), 0);
    if (sector) {
      for (std::size_t i = 0; i < points_.size(); ++i) sectors_[i] = sector(points_[i]);
    }
    perms_.assign(group_.order, std::vector<std::uint32_t>(points_.size()));
    for (std::size_t g = 0; g < group_.order; ++g) {
      for (std::size_t i = 0; i < points_.size(); ++i) {
        auto j = index_of(act(g, points_[i]));
        if (!j) throw ActionError("group action leaves the point set");
        perms_[g][i] = *j;
      }
    }
  }

  std::size_t size() const { return points_.size(); }
  std::size_t group_order() const { return group_.order; }
  const GroupSpec& group() const { return group_; }
  const std::vector<Point>& points() const { return points_; }
  const Point& point(std::uint32_t i) const { return points_[i]; }
  int sector(std::uint32_t i) const { return sectors_[i]; }
  const std::vector<int>& sectors() const { return sectors_; }
  const std::vector<std::uint32_t>& perm(std::size_t g) const { return perms_[g]; }
  std::uint32_t act(std::size_t g, std::uint32_t i) const { return perms_[g][i]; }

  std::optional<std::uint32_t> index_of(const Point& p) const {
    auto it = std::lower_bound(points_.begin(), points_.end(), p);
    if (it == points_.end() || !(*it == p)) return std::nullopt;
    return static_cast<std::uint32_t>(it - points_.begin());
  }
  std::uint32_t at(const Point& p) const {
    auto i = index_of(p);
    if (!i) throw std::out_of_range("point not in the enumerated set");
    return *i;
  }

  // Exhaustive check of the action axioms and sector preservation. Returns a
  // description of the first violation.
  std::optional<std::string> verify_axioms() const {
    const std::size_t n = points_.size();
    for (std::size_t i = 0; i < n; ++i) {
      if (perms_[group_.identity][i] != i) return "identity moves point " + std::to_string(i);
    }
    for (std::size_t g = 0; g < group_.order; ++g) {
      for (std::size_t i = 0; i < n; ++i) {
        if (sectors_[perms_[g][i]] != sectors_[i]) {
          return "group element " + std::to_string(g) + " changes the sector of point " +
                 std::to_string(i);
        }
      }
    }
    if (!group_.mul) return std::nullopt;
    for (std::size_t g = 0; g < group_.order; ++g) {
      for (std::size_t h = 0; h < group_.order; ++h) {
        const auto& pgh = perms_[group_.mul(g, h)];
        for (std::size_t i = 0; i < n; ++i) {
          if (pgh[i] != perms_[g][perms_[h][i]]) {
            return "act(g*h) != act(g) act(h) for g=" + std::to_string(g) +
                   " h=" + std::to_string(h);
          }
        }
      }
    }
    return std::nullopt;
  }

 private:
  std::vector<Point> points_;
  GroupSpec group_;
  std::vector<int> sectors_;
  std::vector<std::vector<std::uint32_t>> perms_;
};

struct GroupoidClass {
  std::uint32_t rep = 0;    // smallest point index in the orbit
  std::uint64_t aut = 1;    // stabilizer order
  std::uint64_t orbit = 1;  // orbit size, aut * orbit = |H|
  int sector = 0;
};

class FiniteGroupoid {
 public:
  FiniteGroupoid() = default;

  template <class Point>
  explicit FiniteGroupoid(const GroupAction<Point>& a) {
    const std::size_t n = a.size();
    group_order_ = a.group_order();
    class_of_.assign(n, kUnassigned);
    for (std::uint32_t i = 0; i < n; ++i) {
      if (class_of_[i] != kUnassigned) continue;
      const auto id = static_cast<std::uint32_t>(classes_.size());
      GroupoidClass c;
      c.rep = i;
      c.sector = a.sector(i);
      std::uint64_t aut = 0;
      std::uint64_t orbit = 0;
      for (std::size_t g = 0; g < group_order_; ++g) {
        std::uint32_t j = a.act(g, i);
        if (j == i) ++aut;
        if (class_of_[j] == kUnassigned) {
          class_of_[j] = id;
          ++orbit;
        } else if (class_of_[j] != id) {
          throw ActionError("orbits overlap; action axioms violated");
        }
      }
      if (aut * orbit != group_order_) {
        throw ActionError("orbit-stabilizer count fails; action axioms violated");
      }
      c.aut = aut;
      c.orbit = orbit;
      classes_.push_back(c);
    }
  }

  std::size_t size() const { return classes_.size(); }
  std::size_t point_count() const { return class_of_.size(); }
  std::uint64_t group_order() const { return group_order_; }
  const std::vector<GroupoidClass>& classes() const { return classes_; }
  const GroupoidClass& cls(std::uint32_t c) const { return classes_[c]; }
  std::uint32_t class_of(std::uint32_t point) const { return class_of_[point]; }
  std::uint32_t rep(std::uint32_t c) const { return classes_[c].rep; }
  std::uint64_t aut(std::uint32_t c) const { return classes_[c].aut; }

  // Sum over classes of |H|/aut, per sector.
  std::map<int, std::uint64_t> mass_by_sector() const {
    std::map<int, std::uint64_t> m;
    for (const auto& c : classes_) m[c.sector] += group_order_ / c.aut;
    return m;
  }

 private:
  static constexpr std::uint32_t kUnassigned = 0xffffffffu;
  std::vector<GroupoidClass> classes_;
  std::vector<std::uint32_t> class_of_;
  std::uint64_t group_order_ = 1;
};

template <class Point>
FiniteGroupoid orbits(const GroupAction<Point>& a) {
  return FiniteGroupoid(a);
}

// Function on a groupoid, indexed by class id.
using ClassFn = std::vector<CycNum>;

// Two-variable kernel on point indices. Points flagged exceptional are
// excluded from the diagonal-invariance contract.
struct Kernel {
  std::function<CycInt(std::uint32_t, std::uint32_t)> eval;
  std::vector<char> exceptional;

  CycInt operator()(std::uint32_t x, std::uint32_t y) const { return eval(x, y); }
  bool is_exceptional(std::uint32_t i) const {
    return !exceptional.empty() && exceptional[i] != 0;
  }
  bool has_exceptional() const {
    return std::any_of(exceptional.begin(), exceptional.end(), [](char c) { return c != 0; });
  }
};

// K(x, y) = phi(mul(x, y)) with phi tabulated on point indices.
inline Kernel multiplicative_kernel(std::vector<CycInt> phi,
                                    std::function<std::uint32_t(std::uint32_t, std::uint32_t)> mul) {
  Kernel k;
  k.eval = [phi = std::move(phi), mul = std::move(mul)](std::uint32_t x, std::uint32_t y) {
    return phi[mul(x, y)];
  };
  return k;
}

// Quotient map pushforward: value at the class of x is sum_{g in H} f(g x).
template <class Point>
ClassFn push_quotient(const GroupAction<Point>& a, const FiniteGroupoid& G,
                      const std::vector<CycNum>& f) {
  if (f.size() != a.size()) throw std::invalid_argument("function size mismatch");
  ClassFn out;
  out.reserve(G.size());
  for (const auto& c : G.classes()) {
    CycNum s(f[c.rep].prime());
    for (std::size_t g = 0; g < a.group_order(); ++g) s += f[a.act(g, c.rep)];
    out.push_back(std::move(s));
  }
  return out;
}

// Pushforward along a morphism of groupoids induced by a point map:
// phi_!(F)([y]) = sum_{[a] -> [y]} F([a]) |Aut(y)| / |Aut(a)|.
inline ClassFn pushforward(const FiniteGroupoid& src, const FiniteGroupoid& dst,
                           const std::function<std::uint32_t(std::uint32_t)>& point_map,
                           const ClassFn& f, unsigned p) {
  if (f.size() != src.size()) throw std::invalid_argument("function size mismatch");
  ClassFn out(dst.size(), CycNum(p));
  for (std::uint32_t c = 0; c < src.size(); ++c) {
    std::uint32_t d = dst.class_of(point_map(src.rep(c)));
    out[d] += f[c] * make_rational(static_cast<std::int64_t>(dst.aut(d)),
                                   static_cast<std::int64_t>(src.aut(c)));
  }
  return out;
}

// Pullback along a point map.
inline ClassFn pullback(const FiniteGroupoid& src, const FiniteGroupoid& dst,
                        const std::function<std::uint32_t(std::uint32_t)>& point_map,
                        const ClassFn& f) {
  ClassFn out;
  out.reserve(src.size());
  for (std::uint32_t c = 0; c < src.size(); ++c) {
    out.push_back(f[dst.class_of(point_map(src.rep(c)))]);
  }
  return out;
}

// Extension by zero along an open embedding given as a point map.
inline ClassFn extend_by_zero(const FiniteGroupoid& src, const FiniteGroupoid& dst,
                              const std::function<std::uint32_t(std::uint32_t)>& point_map,
                              const ClassFn& f, unsigned p) {
  ClassFn out(dst.size(), CycNum(p));
  for (std::uint32_t c = 0; c < src.size(); ++c) {
    out[dst.class_of(point_map(src.rep(c)))] = f[c];
  }
  return out;
}

// F(f)([y]) = (1/|H|) sum_{x in X} K(rep y, x) f([x]).
inline ClassFn apply(const Kernel& K, const FiniteGroupoid& G, const ClassFn& f, unsigned p,
                     unsigned threads = 1) {
  if (f.size() != G.size()) throw std::invalid_argument("function size mismatch");
  ClassFn out(G.size(), CycNum(p));
  const Rational inv_h = make_rational(1, static_cast<std::int64_t>(G.group_order()));
  parallel_for(G.size(), threads, [&](std::size_t y) {
    CycNum s(p);
    for (std::uint32_t x = 0; x < G.point_count(); ++x) {
      CycInt k = K(G.rep(static_cast<std::uint32_t>(y)), x);
      if (k.is_zero()) continue;
      s += CycNum(k) * f[G.class_of(x)];
    }
    out[y] = s * inv_h;
  });
  return out;
}

// The same operator as a class sum: sum_{[x]} K(rep y, rep x) f([x]) / |Aut(x)|.
inline ClassFn apply_classwise(const Kernel& K, const FiniteGroupoid& G, const ClassFn& f,
                               unsigned p) {
  ClassFn out(G.size(), CycNum(p));
  for (std::uint32_t y = 0; y < G.size(); ++y) {
    CycNum s(p);
    for (std::uint32_t x = 0; x < G.size(); ++x) {
      s += CycNum(K(G.rep(y), G.rep(x))) * f[x] *
           make_rational(1, static_cast<std::int64_t>(G.aut(x)));
    }
    out[y] = s;
  }
  return out;
}

// Delta(z, x) = (1/|H|) sum_{y in X} K1(z, y) K2(y, x), on point indices.
inline CycNum delta(const Kernel& K1, const Kernel& K2, const FiniteGroupoid& G,
                    std::uint32_t z, std::uint32_t x, unsigned p) {
  CycInt s(p);
  for (std::uint32_t y = 0; y < G.point_count(); ++y) {
    CycInt a = K1(z, y);
    if (a.is_zero()) continue;
    s += a * K2(y, x);
  }
  return CycNum(s) * make_rational(1, static_cast<std::int64_t>(G.group_order()));
}

inline std::size_t default_matrix_cap() {
  if (const char* env = std::getenv("BKFOURIER_MATRIX_CAP")) {
    try {
      return static_cast<std::size_t>(std::stoull(env));
    } catch (const std::exception&) {
      throw std::invalid_argument(std::string("bad BKFOURIER_MATRIX_CAP: ") + env);
    }
  }
  return 2000;
}

struct InvolutionOptions {
  Rational scale{1};
  // Involution on point indices (x -> -x); empty means identity.
  std::function<std::uint32_t(std::uint32_t)> twist;
  std::size_t matrix_cap = default_matrix_cap();
  unsigned threads = 1;
  // Largest p^2 * N^2 * |X| accepted for the point-sum fallback.
  double point_sum_budget = 4e8;
};

struct InvolutionWitness {
  std::uint32_t z = 0;  // class ids
  std::uint32_t x = 0;
  CycNum delta;
  Rational expected;
};

struct InvolutionReport {
  bool pass = false;
  std::string method;  // "matrix", "point-sum" or "skipped"
  bool invariant = true;
  bool exceptional_touched = false;
  std::size_t classes = 0;
  std::size_t mismatches = 0;
  std::optional<InvolutionWitness> witness;
  std::string note;
};

namespace detail {

inline std::int64_t mul_add(std::int64_t acc, std::int64_t a, std::int64_t b) {
  return checked_add(acc, checked_mul(a, b));
}

}  // namespace detail

// Verifies Delta(z, x) = scale |Aut(z)| [z ~ twist(x)] for every class pair.
inline InvolutionReport check_involutive(const Kernel& K, const FiniteGroupoid& G,
                                         unsigned p, const InvolutionOptions& opt = {}) {
  InvolutionReport rep;
  const std::size_t N = G.size();
  const std::size_t P = G.point_count();
  rep.classes = N;
  const auto H = static_cast<std::int64_t>(G.group_order());

  for (std::uint32_t c = 0; c < N && K.has_exceptional(); ++c) {
    if (K.is_exceptional(G.rep(c))) rep.exceptional_touched = true;
  }
  if (N > opt.matrix_cap) {
    rep.method = "skipped";
    rep.note = "class count " + std::to_string(N) + " exceeds matrix cap " +
               std::to_string(opt.matrix_cap);
    return rep;
  }

  // twisted class of each class
  std::vector<std::uint32_t> twist_class(N);
  for (std::uint32_t c = 0; c < N; ++c) {
    std::uint32_t r = G.rep(c);
    twist_class[c] = G.class_of(opt.twist ? opt.twist(r) : r);
  }

  // Row data: K(rep z, y) for every point y; column data: K(y, rep x).
  std::vector<std::vector<CycInt>> rows(N), cols(N);
  parallel_for(N, opt.threads, [&](std::size_t z) {
    rows[z].reserve(P);
    cols[z].reserve(P);
    for (std::uint32_t y = 0; y < P; ++y) {
      rows[z].push_back(K(G.rep(static_cast<std::uint32_t>(z)), y));
      cols[z].push_back(K(y, G.rep(static_cast<std::uint32_t>(z))));
    }
  });
  bool invariant = true;
  for (std::uint32_t z = 0; z < N && invariant; ++z) {
    for (std::uint32_t y = 0; y < P; ++y) {
      std::uint32_t ry = G.rep(G.class_of(y));
      if (!(rows[z][y] == rows[z][ry]) || !(cols[z][y] == cols[z][ry])) {
        invariant = false;
        break;
      }
    }
  }
  rep.invariant = invariant;

  // Assemble planes L (N x M) and R (M x N) with M = N (classes, orbit
  // weights folded into R) or M = P (points).
  std::size_t M;
  std::vector<std::vector<std::int64_t>> L(p), R(p);
  if (invariant) {
    rep.method = "matrix";
    M = N;
    for (unsigned e = 0; e < p; ++e) {
      L[e].assign(N * M, 0);
      R[e].assign(M * N, 0);
    }
    for (std::uint32_t z = 0; z < N; ++z) {
      for (std::uint32_t y = 0; y < N; ++y) {
        const CycInt& a = rows[z][G.rep(y)];
        const CycInt& b = cols[z][G.rep(y)];  // K(rep y, rep z)
        const auto w = static_cast<std::int64_t>(G.cls(y).orbit);
        for (unsigned e = 0; e < p; ++e) {
          L[e][z * M + y] = a[e];
          R[e][y * N + z] = detail::checked_mul(b[e], w);
        }
      }
    }
  } else {
    double cost = double(p) * p * double(N) * N * double(P);
    if (cost > opt.point_sum_budget) {
      rep.method = "skipped";
      rep.note = "kernel is not class-invariant and the point sum exceeds the budget";
      return rep;
    }
    rep.method = "point-sum";
    M = P;
    for (unsigned e = 0; e < p; ++e) {
      L[e].assign(N * M, 0);
      R[e].assign(M * N, 0);
    }
    for (std::uint32_t z = 0; z < N; ++z) {
      for (std::uint32_t y = 0; y < P; ++y) {
        for (unsigned e = 0; e < p; ++e) {
          L[e][z * M + y] = rows[z][y][e];
          R[e][y * N + z] = cols[z][y][e];
        }
      }
    }
  }
  rows.clear();
  cols.clear();

  // Row-parallel product; each row records its first mismatch.
  struct RowResult {
    std::size_t mismatches = 0;
    std::optional<std::pair<std::uint32_t, CycInt>> first;
  };
  std::vector<RowResult> results(N);
  const Rational base = opt.scale * H;
  parallel_for(N, opt.threads, [&](std::size_t z) {
    std::vector<std::vector<std::int64_t>> acc(p, std::vector<std::int64_t>(N, 0));
    for (std::size_t y = 0; y < M; ++y) {
      for (unsigned i = 0; i < p; ++i) {
        const std::int64_t a = L[i][z * M + y];
        if (a == 0) continue;
        for (unsigned j = 0; j < p; ++j) {
          const std::int64_t* r = &R[j][y * N];
          std::int64_t* out = acc[(i + j) % p].data();
          for (std::size_t x = 0; x < N; ++x) out[x] = detail::mul_add(out[x], a, r[x]);
        }
      }
    }
    const Rational expected_hit = base * static_cast<std::int64_t>(G.aut(static_cast<std::uint32_t>(z)));
    for (std::uint32_t x = 0; x < N; ++x) {
      const bool hit = twist_class[x] == z;
      bool ok;
      const std::int64_t top = acc[p - 1][x];
      bool irrational = false;
      for (unsigned e = 1; e + 1 < p; ++e) irrational |= acc[e][x] != top;
      if (irrational) {
        ok = false;
      } else {
        Rational value = Rational(acc[0][x] - top);
        ok = value == (hit ? expected_hit : Rational(0));
      }
      if (!ok) {
        ++results[z].mismatches;
        if (!results[z].first) {
          CycInt v(p);
          for (unsigned e = 0; e < p; ++e) v.add_zeta(e, acc[e][x]);
          results[z].first = std::make_pair(x, v);
        }
      }
    }
  });

  for (std::uint32_t z = 0; z < N; ++z) {
    rep.mismatches += results[z].mismatches;
    if (!rep.witness && results[z].first) {
      InvolutionWitness w;
      w.z = z;
      w.x = results[z].first->first;
      w.delta = CycNum(results[z].first->second) * make_rational(1, H);
      w.expected = twist_class[w.x] == z ? opt.scale * static_cast<std::int64_t>(G.aut(z))
                                         : Rational(0);
      rep.witness = w;
    }
  }
  rep.pass = rep.mismatches == 0;
  return rep;
}

// K'(x, y) = sum_h K(h x, y) for an extra group given by permutations of the
// point indices.
inline Kernel quotient_kernel(const Kernel& K,
                              const std::vector<std::vector<std::uint32_t>>& extra, unsigned p) {
  Kernel out;
  out.exceptional = K.exceptional;
  out.eval = [K, extra, p](std::uint32_t x, std::uint32_t y) {
    CycInt s(p);
    for (const auto& h : extra) s += K(h[x], y);
    return s;
  };
  return out;
}

// Block kernel: the entry for (sector(x), sector(y)) is taken from the
// matching block, and pairs without a declared block evaluate to zero.
inline Kernel assemble_sectors(std::vector<int> point_sector,
                               std::map<std::pair<int, int>, Kernel> blocks, unsigned p) {
  for (int s : point_sector) {
    bool known = false;
    for (const auto& [key, k] : blocks) known |= key.first == s || key.second == s;
    if (!known) throw std::invalid_argument("point with an undeclared sector");
  }
  Kernel out;
  out.eval = [point_sector = std::move(point_sector), blocks = std::move(blocks), p](
                 std::uint32_t x, std::uint32_t y) {
    auto it = blocks.find({point_sector[x], point_sector[y]});
    if (it == blocks.end()) return CycInt(p);
    return it->second(x, y);
  };
  return out;
}

// CSV of the class-indexed kernel matrix. The header lists the serialized
// class representatives; entries are CycNum coefficient vectors.
inline std::string kernel_csv(const Kernel& K, const FiniteGroupoid& G,
                              const std::function<std::string(std::uint32_t)>& serialize) {
  auto quote = [](const std::string& s) { return "\"" + s + "\""; };
  std::ostringstream os;
  os << quote("class");
  for (std::uint32_t c = 0; c < G.size(); ++c) os << ',' << quote(serialize(G.rep(c)));
  os << '\n';
  for (std::uint32_t z = 0; z < G.size(); ++z) {
    os << quote(serialize(G.rep(z)));
    for (std::uint32_t x = 0; x < G.size(); ++x) {
      os << ',' << quote(CycNum(K(G.rep(z), G.rep(x))).to_string());
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace bkf

#endif  // BKFOURIER_GROUPOID_HPP_
