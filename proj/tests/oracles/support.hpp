#pragma once

// Brute-force oracles and random generators shared by the unit, property and acceptance
// tests. Oracles avoid the library's algorithms: they work on raw bit vectors, explicit
// level functions and a separate elimination routine.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "cosimplex/labels.hpp"
#include "cosimplex/matrix.hpp"
#include "cosimplex/scs.hpp"
#include "cosimplex/tower.hpp"

namespace oracle {

using cosimplex::DMatrix;
using cosimplex::Label;
using cosimplex::QMatrix;
using cosimplex::Rational;

// ---- labels -------------------------------------------------------------------------

using Bits = std::vector<int>;  // 0/1 entries, last entry 1 unless empty

inline Bits bits_of(const Label& chi) {
  Bits b(static_cast<std::size_t>(chi.level() + 1), 0);
  for (int s : chi.support()) b[static_cast<std::size_t>(s)] = 1;
  return b;
}

inline std::vector<int> support_of(const Bits& b) {
  std::vector<int> s;
  for (std::size_t i = 0; i < b.size(); ++i)
    if (b[i]) s.push_back(static_cast<int>(i));
  return s;
}

// All labels of level <= max_level ordered by level, then bit string.
inline std::vector<Bits> all_labels(int max_level) {
  std::vector<Bits> out{Bits{}};
  for (int lvl = 0; lvl <= max_level; ++lvl) {
    std::vector<Bits> layer;
    for (std::uint32_t m = 0; m < (1u << lvl); ++m) {
      Bits b(static_cast<std::size_t>(lvl + 1), 0);
      for (int i = 0; i < lvl; ++i) b[static_cast<std::size_t>(i)] = (m >> (lvl - 1 - i)) & 1u;
      b.back() = 1;
      layer.push_back(b);
    }
    std::sort(layer.begin(), layer.end());
    out.insert(out.end(), layer.begin(), layer.end());
  }
  return out;
}

// Gaps before each support element: v1, v2 - v1 - 1, ...
inline std::vector<int> upsilon(const Bits& b) {
  std::vector<int> t;
  int prev = -1;
  for (int s : support_of(b)) {
    t.push_back(s - prev - 1);
    prev = s;
  }
  return t;
}

// A morphism a -> b is a strictly increasing map f : {0..lev a} -> {0..lev b} carrying the
// support of a onto the support of b. Exhaustive over all such maps.
inline bool morphism_exists(const Bits& a, const Bits& b) {
  auto sa = support_of(a), sb = support_of(b);
  if (sa.size() != sb.size()) return false;
  if (a.empty()) return b.empty();
  const int la = static_cast<int>(a.size()) - 1, lb = static_cast<int>(b.size()) - 1;
  if (lb < la) return false;
  std::vector<int> f(static_cast<std::size_t>(la + 1));
  std::set<int> target(sb.begin(), sb.end());
  auto rec = [&](auto&& self, int pos, int lo) -> bool {
    if (pos > la) {
      std::set<int> img;
      for (int s : sa) img.insert(f[static_cast<std::size_t>(s)]);
      return img == target;
    }
    for (int v = lo; v <= lb - (la - pos); ++v) {
      f[static_cast<std::size_t>(pos)] = v;
      if (self(self, pos + 1, v + 1)) return true;
    }
    return false;
  };
  return rec(rec, 0, 0);
}

// ---- exact elimination independent of cosimplex::linalg ------------------------------

inline std::size_t rank(QMatrix m) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && sgn(m(p, c)) == 0) ++p;
    if (p == m.rows()) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(r, j), m(p, j));
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      if (sgn(m(i, c)) == 0) continue;
      Rational f = m(i, c) / m(r, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    ++r;
  }
  return r;
}

// ---- ell-families -------------------------------------------------------------------

// Element n sits at level ell[n]; alpha_i(n) = n + 1 for i <= n, n otherwise.
struct EllFamily {
  std::vector<int> ell;  // length N + 1
  int N = 0;
  bool present(int n) const { return n >= 0 && n <= N && ell[static_cast<std::size_t>(n)] <= N; }
  int level(int n) const { return ell[static_cast<std::size_t>(n)]; }
  static int shift(int i, int n) { return i <= n ? n + 1 : n; }
  std::vector<int> up_to(int k) const {
    std::vector<int> out;
    for (int n = 0; n <= N; ++n)
      if (present(n) && level(n) <= k) out.push_back(n);
    return out;
  }
  std::vector<int> innovation(int k) const {
    std::vector<int> out;
    for (int n = 0; n <= N; ++n)
      if (present(n) && level(n) == k) out.push_back(n);
    return out;
  }
  // X_{n-1} = Fix(alpha_n) ∩ X_n.
  bool saturated_up_to(int n) const {
    for (int x : up_to(n))
      if ((shift(n, x) == x) != (level(x) <= n - 1)) return false;
    return true;
  }
  // alpha_i(D_n) ⊆ D_{n+1} for all i <= n; all images needed lie inside the truncation.
  bool shifts_innovation(int n) const {
    for (int x : innovation(n))
      for (int i = 0; i <= n; ++i) {
        int y = shift(i, x);
        if (!present(y) || level(y) != n + 1) return false;
      }
    return true;
  }
  // Coboundary of level k, rows X_{k+1}, columns X_k; the top coface is the inclusion.
  QMatrix coboundary(int k) const {
    auto src = up_to(k), dst = up_to(k + 1);
    std::map<int, std::size_t> row;
    for (std::size_t r = 0; r < dst.size(); ++r) row[dst[r]] = r;
    QMatrix d(dst.size(), src.size());
    for (std::size_t c = 0; c < src.size(); ++c)
      for (int i = 0; i <= k + 1; ++i) {
        int y = i == k + 1 ? src[c] : shift(i, src[c]);
        Rational sign = ((k + 1 - i) % 2 == 0) ? 1 : -1;
        d(row.at(y), c) += sign;
      }
    return d;
  }
  std::size_t cohomology_dim(int k) const {
    std::size_t dim = up_to(k).size();
    std::size_t out_rank = rank(coboundary(k));
    std::size_t in_rank = k >= 0 ? rank(coboundary(k - 1)) : 0;
    return dim - out_rank - in_rank;
  }
};

// ---- generators ---------------------------------------------------------------------

using Rng = std::mt19937_64;

inline int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

// n <= ell(n) <= ell(n-1) + 1 with ell(0) in [0, N + 1].
inline std::vector<int> random_ell(Rng& rng, int N) {
  std::vector<int> ell{uniform(rng, 0, N + 1)};
  for (int n = 1; n <= N; ++n) ell.push_back(uniform(rng, n, ell.back() + 1));
  return ell;
}

// An ell list that may violate the inequality somewhere.
inline std::vector<int> random_raw_ell(Rng& rng, int N, int max_value) {
  std::vector<int> ell;
  for (int n = 0; n <= N; ++n) ell.push_back(uniform(rng, 0, max_value));
  return ell;
}

// Disjoint union of truncated label layers: mult[r] copies of the rank-r layer
// {chi : rank chi = r, lev chi <= N} with alpha_i = insert_zero. The result is normal.
inline cosimplex::TruncatedSCS layer_union(const std::vector<int>& mult, int N) {
  cosimplex::TruncatedSCS scs(N);
  int id = 0;
  for (std::size_t r = 0; r < mult.size(); ++r)
    for (int copy = 0; copy < mult[r]; ++copy) {
      std::map<Label, std::size_t> where;
      for (const auto& chi : cosimplex::enumerate_labels(N, static_cast<int>(r)))
        where[chi] = scs.add_element(id++, chi.level(), "r" + std::to_string(r) + "c" + std::to_string(copy) + ":" + chi.to_string());
      for (const auto& [chi, idx] : where) {
        if (chi.level() > N - 1) continue;
        for (int i = 0; i < N; ++i) {
          auto t = cosimplex::insert_zero(chi, i);
          if (!(t == chi)) scs.set_shift(i, idx, where.at(t));
        }
      }
    }
  return scs;
}

// Copies scs without the elements in drop (which must not be shift images of kept elements).
inline cosimplex::TruncatedSCS without(const cosimplex::TruncatedSCS& scs, const std::set<std::size_t>& drop) {
  cosimplex::TruncatedSCS out(scs.max_level());
  std::map<std::size_t, std::size_t> idx;
  for (std::size_t x = 0; x < scs.size(); ++x)
    if (!drop.count(x)) idx[x] = out.add_element(scs.element(x).id, scs.level(x), scs.element(x).name);
  for (auto [x, nx] : idx)
    for (int i = 0; i < scs.max_level(); ++i)
      if (auto y = scs.stored(i, x)) out.set_shift(i, nx, idx.at(*y));
  return out;
}

// Removes a random subset of elements that are no shift image of another element.
inline cosimplex::TruncatedSCS drop_generators(Rng& rng, const cosimplex::TruncatedSCS& scs) {
  std::vector<bool> image(scs.size(), false);
  for (std::size_t x = 0; x < scs.size(); ++x)
    for (int i = 0; i < scs.max_level(); ++i)
      if (auto y = scs.stored(i, x); y && *y != x) image[*y] = true;
  std::set<std::size_t> drop;
  for (std::size_t x = 0; x < scs.size(); ++x)
    if (!image[x] && uniform(rng, 0, 2) == 0) drop.insert(x);
  return without(scs, drop);
}

inline std::vector<int> random_multiplicities(Rng& rng, int max_rank, int max_mult) {
  std::vector<int> m(static_cast<std::size_t>(max_rank + 1));
  for (auto& x : m) x = uniform(rng, 0, max_mult);
  if (std::all_of(m.begin(), m.end(), [](int v) { return v == 0; })) m[static_cast<std::size_t>(uniform(rng, 0, max_rank))] = 1;
  return m;
}

// Random structures for the property suites: ell-families, layer unions and layer unions
// with generators removed.
inline cosimplex::TruncatedSCS random_scs(Rng& rng, int N) {
  switch (uniform(rng, 0, 2)) {
    case 0: return cosimplex::from_ell(random_ell(rng, N), N);
    case 1: return layer_union(random_multiplicities(rng, 3, 2), N);
    default: return drop_generators(rng, layer_union(random_multiplicities(rng, 3, 2), N));
  }
}

// Exact rotation by a product of rational plane rotations ((1-t^2)/(1+t^2), 2t/(1+t^2)).
inline QMatrix random_rotation(Rng& rng, std::size_t n, int planes) {
  QMatrix q = QMatrix::identity(n);
  if (n < 2) return q;
  for (int p = 0; p < planes; ++p) {
    auto a = static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(n) - 1));
    auto b = static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(n) - 2));
    if (b >= a) ++b;
    Rational t(uniform(rng, 1, 4), uniform(rng, 1, 5));
    t.canonicalize();
    Rational c = (1 - t * t) / (1 + t * t), s = 2 * t / (1 + t * t);
    QMatrix r = QMatrix::identity(n);
    r(a, a) = c;
    r(b, b) = c;
    r(a, b) = -s;
    r(b, a) = s;
    q = r * q;
  }
  return q;
}

// The tower of scs conjugated by an orthogonal q.
template <class T>
cosimplex::Tower<T> rotated(const cosimplex::TruncatedSCS& scs, const cosimplex::Matrix<T>& q) {
  auto base = cosimplex::from_scs<T>(scs);
  std::vector<cosimplex::Matrix<T>> spans, shifts;
  for (int k = -1; k <= base.max_level(); ++k) spans.push_back(q * base.level_basis(k));
  for (int i = 0; i < base.max_level(); ++i) shifts.push_back(q * base.shift(i) * q.transpose());
  return cosimplex::Tower<T>(base.ambient_dim(), std::move(spans), std::move(shifts));
}

// Normal tower from label layers with random multiplicities (root dimensions), rotated.
inline cosimplex::Tower<Rational> random_normal_tower(Rng& rng, int N, int max_rank, int max_mult,
                                                      std::vector<int>* mult_out = nullptr) {
  auto mult = random_multiplicities(rng, max_rank, max_mult);
  if (mult_out) *mult_out = mult;
  auto scs = layer_union(mult, N);
  return rotated<Rational>(scs, random_rotation(rng, scs.size(), 6));
}

// Random positive contraction of size k in floating point: W diag(lambda) W^T.
inline DMatrix random_contraction(Rng& rng, std::size_t k) {
  std::uniform_real_distribution<double> u(-1.0, 1.0), l(0.0, 1.0);
  DMatrix a(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) a(i, j) = u(rng);
  // Orthonormalize the columns of a (classical Gram-Schmidt, well conditioned here).
  DMatrix w(k, k);
  for (std::size_t j = 0; j < k; ++j) {
    DMatrix v = a.col(j);
    for (std::size_t p = 0; p < j; ++p) {
      double d = 0;
      for (std::size_t i = 0; i < k; ++i) d += w(i, p) * a(i, j);
      for (std::size_t i = 0; i < k; ++i) v(i, 0) -= d * w(i, p);
    }
    double n = 0;
    for (std::size_t i = 0; i < k; ++i) n += v(i, 0) * v(i, 0);
    n = std::sqrt(n);
    for (std::size_t i = 0; i < k; ++i) w(i, j) = v(i, 0) / n;
  }
  DMatrix d(k, k);
  for (std::size_t i = 0; i < k; ++i) d(i, i) = l(rng);
  auto c = w * d * w.transpose();
  return (c + c.transpose()).scaled(0.5);
}

// Diagonal contraction whose entries c and 1 - c are rational squares: c = (a/m)^2 with
// (a, b, m) a Pythagorean triple, or 0, or 1.
inline QMatrix random_square_contraction(Rng& rng, std::size_t k) {
  static const int triples[][3] = {{3, 4, 5}, {5, 12, 13}, {8, 15, 17}, {7, 24, 25}, {20, 21, 29}};
  QMatrix c(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    int pick = uniform(rng, 0, 6);
    if (pick == 5) c(i, i) = 0;
    else if (pick == 6) c(i, i) = 1;
    else {
      const auto& t = triples[pick];
      int a = uniform(rng, 0, 1) ? t[0] : t[1];
      c(i, i) = Rational(a * a, t[2] * t[2]);
      c(i, i).canonicalize();
    }
  }
  return c;
}

}  // namespace oracle
