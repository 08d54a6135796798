#include "cosimplex/tower.hpp"

#include <map>

#include "cosimplex/error.hpp"

namespace cosimplex {

namespace {

template <class T>
Matrix<T> orthogonal_projector(const Matrix<T>& q, std::size_t n, double tol) {
  Matrix<T> p(n, n);
  for (std::size_t c = 0; c < q.cols(); ++c) {
    T nn = linalg::dot(q, c, q, c);
    if (Field<T>::is_zero(nn, tol)) continue;
    for (std::size_t r = 0; r < n; ++r) {
      if (q(r, c) == 0) continue;
      T f = q(r, c) / nn;
      for (std::size_t s = 0; s < n; ++s) {
        if (q(s, c) == 0) continue;
        p(r, s) += f * q(s, c);
      }
    }
  }
  return p;
}

template <class T>
std::string level_tag(const char* what, int a, int b = -100, int c = -100) {
  std::string s = what;
  s += " " + std::to_string(a);
  if (b != -100) s += "," + std::to_string(b);
  if (c != -100) s += "," + std::to_string(c);
  return s;
}

// Accumulates a family of identities into a single check, keeping the first failure.
template <class T>
struct Family {
  std::string name;
  bool holds = true;
  bool any = false;
  double worst = 0.0;
  std::string detail;
  double tol;

  void eq(const Matrix<T>& lhs, const Matrix<T>& rhs, const std::string& where) {
    any = true;
    bool ok = linalg::approx_equal(lhs, rhs, tol);
    double r = linalg::residual(lhs, rhs);
    if (r > worst) worst = r;
    if (!ok && holds) {
      holds = false;
      detail = where;
    }
  }
  void truth(bool ok, const std::string& where) {
    any = true;
    if (!ok && holds) {
      holds = false;
      detail = where;
    }
  }
  void emit(PropertyReport& rep) const {
    if (any) rep.add(name, holds, Field<T>::exact ? (holds ? 0.0 : worst) : worst, detail);
    else rep.untested(name, "no instance inside the truncation");
  }
};

}  // namespace

template <class T>
Tower<T>::Tower(std::size_t ambient_dim, std::vector<Matrix<T>> spans, std::vector<Matrix<T>> shifts,
                std::optional<Matrix<T>> domain, double tol)
    : ambient_(ambient_dim), tol_(tol), shifts_(std::move(shifts)), empty_(ambient_dim, 0) {
  if (spans.empty()) throw PreconditionError("tower needs at least H_{-1}");
  const int N = static_cast<int>(spans.size()) - 2;
  if (static_cast<int>(shifts_.size()) != std::max(N, 0))
    throw PreconditionError("tower with N = " + std::to_string(N) + " needs " + std::to_string(std::max(N, 0)) +
                            " shift matrices, got " + std::to_string(shifts_.size()));
  for (auto& s : shifts_)
    if (s.rows() != ambient_ || s.cols() != ambient_) throw PreconditionError("shift matrix has wrong shape");
  Matrix<T> q(ambient_, 0);
  for (auto& sp : spans) {
    if (sp.cols() == 0) sp = Matrix<T>(ambient_, 0);
    if (sp.rows() != ambient_) throw PreconditionError("level basis has wrong row count");
    levels_.push_back(linalg::column_basis(sp, tol_));
    auto d = linalg::orthogonalize_against(q, levels_.back(), tol_);
    q = Matrix<T>::hcat(q, d);
    innovations_.push_back(std::move(d));
    projectors_.push_back(orthogonal_projector(q, ambient_, tol_));
  }
  const Matrix<T>& top = level_basis(N - 1);
  if (domain) {
    domain_ = linalg::column_basis(domain->cols() ? *domain : Matrix<T>(ambient_, 0), tol_);
    domain_is_top_ = linalg::same_span(domain_, top, tol_);
  } else {
    domain_ = top;
    domain_is_top_ = true;
  }
}

template <class T>
const Matrix<T>& Tower<T>::level_basis(int k) const {
  if (k < -1) return empty_;
  if (k > max_level()) return levels_.back();
  return levels_[static_cast<std::size_t>(k + 1)];
}

template <class T>
const Matrix<T>& Tower<T>::innovation(int k) const {
  if (k < -1 || k > max_level()) return empty_;
  return innovations_[static_cast<std::size_t>(k + 1)];
}

template <class T>
const Matrix<T>& Tower<T>::projector(int k) const {
  static thread_local std::map<std::size_t, Matrix<T>> zeros;
  if (k < -1) {
    auto it = zeros.find(ambient_);
    if (it == zeros.end()) it = zeros.emplace(ambient_, Matrix<T>(ambient_, ambient_)).first;
    return it->second;
  }
  if (k > max_level()) return projectors_.back();
  return projectors_[static_cast<std::size_t>(k + 1)];
}

template <class T>
Matrix<T> Tower<T>::apply(int i, const Matrix<T>& x) const {
  if (i >= max_level()) return x;
  return shifts_.at(static_cast<std::size_t>(i)) * x;
}

template <class T>
Matrix<T> Tower<T>::coface(int i, int k, const Matrix<T>& x) const {
  if (i >= k) return x;
  return apply(i, x);
}

template <class T>
Matrix<T> Tower<T>::coface_adjoint(int i, int k) const {
  const auto& p = projector(k - 1);
  if (i >= k || i >= max_level()) return p;
  return p * shifts_.at(static_cast<std::size_t>(i)).transpose();
}

template <class T>
Tower<T> from_scs(const TruncatedSCS& scs) {
  const std::size_t n = scs.size();
  const int N = scs.max_level();
  std::vector<Matrix<T>> spans;
  for (int k = -1; k <= N; ++k) {
    auto xs = scs.up_to_level(k);
    Matrix<T> b(n, xs.size());
    for (std::size_t c = 0; c < xs.size(); ++c) b(xs[c], c) = T(1);
    spans.push_back(std::move(b));
  }
  std::vector<Matrix<T>> shifts;
  for (int i = 0; i < N; ++i) {
    Matrix<T> a(n, n);
    for (std::size_t x = 0; x < n; ++x) {
      if (scs.level(x) > N - 1) continue;
      if (auto y = scs.apply(i, x)) a(*y, x) = T(1);
    }
    shifts.push_back(std::move(a));
  }
  return Tower<T>(n, std::move(spans), std::move(shifts));
}

template <class T>
PropertyReport check_tower(const Tower<T>& t) {
  PropertyReport rep;
  const int N = t.max_level();
  const double tol = t.tol();
  Family<T> nested{"nested levels", true, false, 0, {}, tol};
  for (int k = 0; k <= N; ++k)
    nested.truth(linalg::contains(t.level_basis(k), t.level_basis(k - 1), tol), level_tag<T>("k", k));
  nested.emit(rep);

  Family<T> dom{"shift domain contains H_{N-1}", true, false, 0, {}, tol};
  dom.truth(linalg::contains(t.domain(), t.level_basis(N - 1), tol), "domain");
  dom.emit(rep);

  Family<T> iso{"isometry on the shift domain", true, false, 0, {}, tol};
  const auto& D = t.domain();
  auto g0 = D.transpose() * D;
  for (int i = 0; i < N; ++i) {
    auto ad = t.apply(i, D);
    iso.eq(ad.transpose() * ad, g0, level_tag<T>("i", i));
  }
  iso.emit(rep);

  Family<T> fix{"fixed action alpha_n = id on H_{n-1}", true, false, 0, {}, tol};
  for (int n = 0; n < N; ++n) fix.eq(t.apply(n, t.level_basis(n - 1)), t.level_basis(n - 1), level_tag<T>("n", n));
  fix.emit(rep);

  Family<T> adapt{"adaptedness alpha_i(H_k) in H_{k+1}", true, false, 0, {}, tol};
  for (int i = 0; i < N; ++i)
    for (int k = -1; k <= N - 1; ++k)
      adapt.truth(linalg::contains(t.level_basis(k + 1), t.apply(i, t.level_basis(k)), tol), level_tag<T>("i,k", i, k));
  adapt.emit(rep);

  Family<T> rel{"alpha_j alpha_i = alpha_i alpha_{j-1} on H_{N-2}", true, false, 0, {}, tol};
  const auto& b = t.level_basis(N - 2);
  for (int j = 1; j <= N - 1; ++j)
    for (int i = 0; i < j; ++i)
      rel.eq(t.apply(j, t.apply(i, b)), t.apply(i, t.apply(j - 1, b)), level_tag<T>("i,j", i, j));
  rel.emit(rep);
  return rep;
}

template <class T>
Matrix<T> fixed_space(const Tower<T>& t, int n) {
  const int N = t.max_level();
  if (n < 0) throw PreconditionError("fixed_space: negative shift index");
  if (n >= N) {
    if (!t.domain_is_top()) throw TruncationError("fixed_space: alpha_n with n >= N is only known on H_{N-1}");
    return t.domain();
  }
  const auto& D = t.domain();
  auto k = linalg::kernel(t.apply(n, D) - D, t.tol());
  return linalg::column_basis(D * k, t.tol());
}

template <class T>
TowerDeFinettiReport check_toy_definetti(const Tower<T>& t) {
  TowerDeFinettiReport rep;
  const int N = t.max_level();
  const double tol = t.tol();
  auto maps_into_next = [&](int i, int k) {
    auto v = t.apply(i, t.innovation(k));
    return (t.projector(k) * v).is_zero(tol) && linalg::contains(t.level_basis(k + 1), v, tol);
  };
  bool beyond = false;
  for (int n = 0; n <= N - 1; ++n) {
    TowerDeFinettiLevel lv;
    lv.n = n;
    lv.shift_n_maps_all_innovations = true;
    for (int k = n; k <= N - 1; ++k)
      if (!maps_into_next(n, k)) { lv.shift_n_maps_all_innovations = false; break; }
    auto f = fixed_space(t, n);
    const auto& below = t.level_basis(n - 1);
    lv.saturated_below = linalg::same_span(f, below, tol);
    lv.fixed_space_beyond_top = !linalg::contains(t.level_basis(N - 1), f, tol);
    beyond = beyond || lv.fixed_space_beyond_top;
    lv.saturated_below_up_to_n = linalg::same_span(linalg::intersect(f, t.level_basis(n), tol), below, tol);
    lv.all_shifts_map_d_n = true;
    for (int i = 0; i <= n; ++i)
      if (!maps_into_next(i, n)) { lv.all_shifts_map_d_n = false; break; }
    lv.top_shift_maps_d_n = maps_into_next(n, n);

    const std::string at = "n=" + std::to_string(n) + ": ";
    if (lv.shift_n_maps_all_innovations && !lv.saturated_below) {
      if (lv.fixed_space_beyond_top)
        rep.caveats.push_back(at + "fixed vectors beyond H_{N-1}; first implication not decided");
      else
        rep.implications_hold = false;
    }
    if (lv.saturated_below && !lv.all_shifts_map_d_n) rep.implications_hold = false;
    if (lv.top_shift_maps_d_n && !lv.all_shifts_map_d_n) rep.implications_hold = false;
    if (lv.saturated_below_up_to_n != lv.all_shifts_map_d_n) rep.characterization_holds = false;
    if (lv.saturated_below && !lv.shift_n_maps_all_innovations)
      rep.converse_failures.push_back(at + "saturated at level " + std::to_string(n - 1) + " although alpha_" +
                                      std::to_string(n) + " does not map every D_k into D_{k+1}");
    if (lv.all_shifts_map_d_n && !lv.saturated_below)
      rep.converse_failures.push_back(at + "alpha_i(D_" + std::to_string(n) + ") in D_" + std::to_string(n + 1) +
                                      " for all i <= " + std::to_string(n) + " although the fixed space of alpha_" +
                                      std::to_string(n) + " differs from H_" + std::to_string(n - 1));
    rep.levels.push_back(lv);
  }
  const auto& b = t.level_basis(N - 2);
  for (int n = 0; n <= N - 2; ++n) {
    auto p_hi = linalg::projector(fixed_space(t, n + 1), tol);
    auto p_lo = linalg::projector(fixed_space(t, n), tol);
    for (int i = 0; i <= n; ++i)
      if (!linalg::approx_equal(p_hi * t.apply(i, b), t.apply(i, p_lo * b), tol))
        rep.projection_identity_holds = false;
  }
  if (beyond) rep.caveats.push_back("fixed spaces computed over a shift domain larger than H_{N-1}");
  return rep;
}

template <class T>
Matrix<T> root_space(const Tower<T>& t, int k) {
  const auto& d = t.innovation(k);
  if (k <= 0 || d.cols() == 0) return d;
  if (k > t.max_level()) throw TruncationError("root space above the truncation");
  Matrix<T> s(t.ambient_dim(), 0);
  for (int i = 0; i <= k - 1; ++i) s = Matrix<T>::hcat(s, t.apply(i, t.innovation(k - 1)));
  auto ker = linalg::kernel(s.transpose() * d, t.tol());
  return linalg::gram_schmidt(d * ker, t.tol());
}

template <class T>
std::vector<LabeledSubspace<T>> labeled_subspaces(const Tower<T>& t, int max_level) {
  if (max_level > t.max_level()) throw TruncationError("labeled subspaces requested above the truncation");
  std::map<int, Matrix<T>> roots;
  std::vector<LabeledSubspace<T>> out;
  for (const auto& chi : enumerate_labels(max_level)) {
    int r = chi.rank();
    auto it = roots.find(r);
    if (it == roots.end()) it = roots.emplace(r, root_space(t, r - 1)).first;
    if (it->second.cols() == 0) continue;
    auto word = push_word(Label::root(r), chi);
    Matrix<T> l = it->second;
    for (int w : *word) l = t.apply(w, l);
    out.push_back({chi, std::move(l)});
  }
  return out;
}

template <class T>
PropertyReport check_label_span(const Tower<T>& t, int max_level) {
  PropertyReport rep;
  auto ls = labeled_subspaces(t, max_level);
  Family<T> span{"H_k spanned by labeled subspaces of level <= k", true, false, 0, {}, t.tol()};
  for (int k = -1; k <= max_level; ++k) {
    Matrix<T> u(t.ambient_dim(), 0);
    for (const auto& l : ls)
      if (l.label.level() <= k) u = Matrix<T>::hcat(u, l.basis);
    span.truth(linalg::contains(u, t.level_basis(k), t.tol()), level_tag<T>("k", k));
  }
  span.emit(rep);
  return rep;
}

template <class T>
NormalityReport check_normal(const Tower<T>& t) {
  NormalityReport rep;
  const int N = t.max_level();
  const double tol = t.tol();
  for (int k = 0; k <= N - 1 && rep.adjoint_identity; ++k) {
    const auto& b = t.level_basis(k);
    for (int j = 1; j <= k + 1 && rep.adjoint_identity; ++j)
      for (int i = 0; i < j; ++i) {
        auto lhs = t.coface(j - 1, k, t.coface_adjoint(i, k) * b);
        auto rhs = t.coface_adjoint(i, k + 1) * t.coface(j, k + 1, b);
        if (!linalg::approx_equal(lhs, rhs, tol)) {
          rep.adjoint_identity = false;
          rep.adjoint_witness = "k=" + std::to_string(k) + " i=" + std::to_string(i) + " j=" + std::to_string(j);
          break;
        }
      }
  }
  for (int k = 0; k <= N - 1 && rep.complement_criterion; ++k) {
    const auto& b = t.level_basis(k);
    for (int j = 1; j <= k + 1 && rep.complement_criterion; ++j)
      for (int i = 0; i < j; ++i) {
        auto kc = linalg::complement_in(b, t.coface(i, k, t.level_basis(k - 1)), tol);
        auto v = t.coface(j, k + 1, kc);
        auto w = t.coface(i, k + 1, b);
        if (!(w.transpose() * v).is_zero(tol)) {
          rep.complement_criterion = false;
          rep.complement_witness = "k=" + std::to_string(k) + " i=" + std::to_string(i) + " j=" + std::to_string(j);
          break;
        }
      }
  }
  auto ls = labeled_subspaces(t, N);
  for (std::size_t a = 0; a < ls.size() && rep.orthogonal_labels; ++a)
    for (std::size_t c = a + 1; c < ls.size(); ++c)
      if (!(ls[a].basis.transpose() * ls[c].basis).is_zero(tol)) {
        rep.orthogonal_labels = false;
        rep.orthogonality_witness = ls[a].label.to_string() + " not orthogonal to " + ls[c].label.to_string();
        break;
      }
  if (!rep.normal()) return rep;

  auto& dec = rep.decomposition;
  Family<T> dims{"dim H_k = sum of dim L over level <= k", true, false, 0, {}, tol};
  Family<T> innov{"D_k = direct sum of L over level k", true, false, 0, {}, tol};
  for (int k = -1; k <= N; ++k) {
    std::size_t total = 0;
    Matrix<T> at(t.ambient_dim(), 0);
    for (const auto& l : ls) {
      if (l.label.level() <= k) total += l.basis.cols();
      if (l.label.level() == k) at = Matrix<T>::hcat(at, l.basis);
    }
    dims.truth(total == t.dim(k), level_tag<T>("k", k));
    innov.truth(linalg::same_span(at, t.innovation(k), tol), level_tag<T>("k", k));
  }
  dims.emit(dec);
  innov.emit(dec);

  Family<T> range{"alpha_i(H_{k-1}) = sum of L with bit i clear", true, false, 0, {}, tol};
  Family<T> perp{"H_k ⊖ alpha_i(H_{k-1}) = sum of L with bit i set", true, false, 0, {}, tol};
  for (int k = 0; k <= N; ++k)
    for (int i = 0; i <= k; ++i) {
      Matrix<T> clear(t.ambient_dim(), 0), set(t.ambient_dim(), 0);
      for (const auto& l : ls) {
        if (l.label.level() > k) continue;
        if (l.label.bit(i)) set = Matrix<T>::hcat(set, l.basis);
        else clear = Matrix<T>::hcat(clear, l.basis);
      }
      auto img = t.coface(i, k, t.level_basis(k - 1));
      range.truth(linalg::same_span(img, clear, tol), level_tag<T>("k,i", k, i));
      perp.truth((img.transpose() * set).is_zero(tol), level_tag<T>("k,i", k, i));
    }
  range.emit(dec);
  perp.emit(dec);

  Family<T> op{"alpha_i x = alpha_{i+1} x iff bit i clear, orthogonal otherwise", true, false, 0, {}, tol};
  for (const auto& l : ls) {
    int lev = l.label.level();
    if (lev > N - 1) continue;
    for (int i = 0; i <= lev; ++i) {
      auto a = t.apply(i, l.basis), b = t.apply(i + 1, l.basis);
      if (l.label.bit(i)) op.truth((a.transpose() * b).is_zero(tol), l.label.to_string() + " i=" + std::to_string(i));
      else op.eq(a, b, l.label.to_string() + " i=" + std::to_string(i));
    }
  }
  op.emit(dec);
  return rep;
}

template <class T>
std::vector<std::size_t> root_dimensions(const Tower<T>& t) {
  std::vector<std::size_t> d;
  for (int n = -1; n <= t.max_level(); ++n) d.push_back(root_space(t, n).cols());
  return d;
}

template <class T>
TowerEquivalence<T> tower_equivalence(const Tower<T>& a, const Tower<T>& b) {
  TowerEquivalence<T> res;
  res.dims_a = root_dimensions(a);
  res.dims_b = root_dimensions(b);
  if (a.max_level() != b.max_level()) {
    res.checks.caveats.push_back("towers truncated at different levels; compared as unequal");
    return res;
  }
  res.equivalent = res.dims_a == res.dims_b;
  if (!res.equivalent) return res;

  const int N = a.max_level();
  const double tol = std::max(a.tol(), b.tol());
  std::map<int, std::pair<Matrix<T>, Matrix<T>>> roots;
  for (int r = 0; r <= N + 1; ++r) {
    auto ra = root_space(a, r - 1), rb = root_space(b, r - 1);
    if constexpr (Field<T>::exact) {
      for (std::size_t c = 0; c < ra.cols(); ++c) {
        auto s = exact_sqrt(Rational(linalg::dot(ra, c, ra, c) / linalg::dot(rb, c, rb, c)));
        if (!s) {
          res.checks.caveats.push_back("root bases of rank " + std::to_string(r) +
                                       " have norms with irrational ratio; no exact intertwiner");
          return res;
        }
        for (std::size_t row = 0; row < rb.rows(); ++row) rb(row, c) *= *s;
      }
    }
    roots.emplace(r, std::make_pair(std::move(ra), std::move(rb)));
  }
  Matrix<T> sa(a.ambient_dim(), 0), sb(b.ambient_dim(), 0);
  for (const auto& chi : enumerate_labels(N)) {
    const auto& [ra, rb] = roots.at(chi.rank());
    if (ra.cols() == 0) continue;
    auto word = *push_word(Label::root(chi.rank()), chi);
    Matrix<T> la = ra, lb = rb;
    for (int w : word) {
      la = a.apply(w, la);
      lb = b.apply(w, lb);
    }
    sa = Matrix<T>::hcat(sa, la);
    sb = Matrix<T>::hcat(sb, lb);
  }
  if (sa.cols() != a.dim(N) || linalg::rank(sa, tol) != sa.cols() || sb.cols() != b.dim(N) ||
      linalg::rank(sb, tol) != sb.cols())
    throw PreconditionError("tower_equivalence: labeled subspaces do not decompose H_N (tower not normal)");

  auto ga = sa.transpose() * sa;
  auto u = sb * (*linalg::inverse(ga, tol)) * sa.transpose();
  auto& rep = res.checks;
  rep.add("intertwiner maps pushed root bases", linalg::approx_equal(u * sa, sb, tol), linalg::residual(u * sa, sb));
  rep.add("intertwiner is isometric on H_N", linalg::approx_equal(sb.transpose() * sb, ga, tol),
          linalg::residual(sb.transpose() * sb, ga));
  bool levels_ok = true;
  for (int k = -1; k <= N; ++k)
    levels_ok = levels_ok && linalg::same_span(u * a.level_basis(k), b.level_basis(k), tol);
  rep.add("intertwiner maps H_k onto H_k", levels_ok);
  bool shifts_ok = true;
  double worst = 0;
  const auto& top = a.level_basis(N - 1);
  for (int i = 0; i < N; ++i) {
    auto lhs = u * a.apply(i, top), rhs = b.apply(i, u * top);
    shifts_ok = shifts_ok && linalg::approx_equal(lhs, rhs, tol);
    worst = std::max(worst, linalg::residual(lhs, rhs));
  }
  rep.add("intertwiner commutes with every shift on H_{N-1}", shifts_ok, worst);
  res.intertwiner = std::move(u);
  return res;
}

#define COSIMPLEX_TOWER_INSTANTIATE(T)                                                         \
  template class Tower<T>;                                                                     \
  template Tower<T> from_scs<T>(const TruncatedSCS&);                                          \
  template PropertyReport check_tower<T>(const Tower<T>&);                                     \
  template Matrix<T> fixed_space<T>(const Tower<T>&, int);                                     \
  template TowerDeFinettiReport check_toy_definetti<T>(const Tower<T>&);                       \
  template Matrix<T> root_space<T>(const Tower<T>&, int);                                      \
  template std::vector<LabeledSubspace<T>> labeled_subspaces<T>(const Tower<T>&, int);         \
  template PropertyReport check_label_span<T>(const Tower<T>&, int);                           \
  template NormalityReport check_normal<T>(const Tower<T>&);                                   \
  template std::vector<std::size_t> root_dimensions<T>(const Tower<T>&);                       \
  template TowerEquivalence<T> tower_equivalence<T>(const Tower<T>&, const Tower<T>&);

COSIMPLEX_TOWER_INSTANTIATE(Rational)
COSIMPLEX_TOWER_INSTANTIATE(double)

}  // namespace cosimplex
