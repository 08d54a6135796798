#include "cosimplex/hessenberg.hpp"

#include <map>

#include "cosimplex/error.hpp"

namespace cosimplex {

namespace {

template <class T>
struct Tally {
  Tally(std::string n, double t) : name(std::move(n)), tol(t) {}
  std::string name;
  double tol;
  bool holds = true;
  bool any = false;
  double worst = 0.0;
  std::string detail;

  void eq(const Matrix<T>& a, const Matrix<T>& b, const std::string& where) {
    any = true;
    bool ok = linalg::approx_equal(a, b, tol);
    worst = std::max(worst, linalg::residual(a, b));
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
  bool emit(PropertyReport& rep) const {
    if (any) rep.add(name, holds, worst, detail);
    else rep.untested(name, "no instance inside the truncation");
    return holds;
  }
};

std::string at(const char* k, int a) { return std::string(k) + "=" + std::to_string(a); }
std::string at(const char* k, int a, const char* l, int b) { return at(k, a) + " " + at(l, b); }

}  // namespace

template <class T>
Matrix<T> HessenbergData<T>::product(int from, int to) const {
  Matrix<T> p = Matrix<T>::identity(tower.ambient_dim());
  for (int m = from; m <= to; ++m) p = p * at(m);
  return p;
}

template <class T>
HessenbergData<T> build_symmetric_rep(const Tower<T>& t) {
  if (!check_normal(t).normal()) throw PreconditionError("symmetric representation needs a normal tower");
  const int N = t.max_level();
  const double tol = t.tol();
  auto ls = labeled_subspaces(t, N);
  std::map<Label, const Matrix<T>*> by_label;
  for (const auto& l : ls) by_label.emplace(l.label, &l.basis);
  auto complement = linalg::complement_in(Matrix<T>::identity(t.ambient_dim()), t.level_basis(N), tol);
  if constexpr (!Field<T>::exact) complement = linalg::gram_schmidt(complement, tol);

  HessenbergData<T> data{t, {}};
  for (int j = 1; j <= N; ++j) {
    Matrix<T> s(t.ambient_dim(), 0), img(t.ambient_dim(), 0);
    for (const auto& l : ls) {
      auto it = by_label.find(transpose_action(l.label, j));
      if (it == by_label.end())
        throw PreconditionError("labeled subspace " + transpose_action(l.label, j).to_string() + " missing");
      s = Matrix<T>::hcat(s, l.basis);
      img = Matrix<T>::hcat(img, *it->second);
    }
    auto src = Matrix<T>::hcat(s, complement);
    auto dst = Matrix<T>::hcat(img, complement);
    auto inv = linalg::inverse(src, tol);
    if (!inv) throw PreconditionError("labeled subspaces do not span H_N");
    data.u.push_back(dst * (*inv));
  }
  return data;
}

template <class T>
PropertyReport check_symmetric_rep(const HessenbergData<T>& d) {
  PropertyReport rep;
  const auto& t = d.tower;
  const int N = t.max_level();
  const int M = d.count();
  const double tol = t.tol();
  const auto I = Matrix<T>::identity(t.ambient_dim());

  Tally<T> inv{"u_j^2 = 1", tol}, orth{"u_j orthogonal", tol};
  for (int j = 1; j <= M; ++j) {
    inv.eq(d.at(j) * d.at(j), I, at("j", j));
    orth.eq(d.at(j).transpose() * d.at(j), I, at("j", j));
  }
  inv.emit(rep);
  orth.emit(rep);

  Tally<T> b1{"u_j u_{j+1} u_j = u_{j+1} u_j u_{j+1}", tol}, b2{"u_m u_n = u_n u_m for |m-n| >= 2", tol};
  for (int j = 1; j + 1 <= M; ++j)
    b1.eq(d.at(j) * d.at(j + 1) * d.at(j), d.at(j + 1) * d.at(j) * d.at(j + 1), at("j", j));
  for (int m = 1; m <= M; ++m)
    for (int n = m + 2; n <= M; ++n) b2.eq(d.at(m) * d.at(n), d.at(n) * d.at(m), at("m", m, "n", n));
  b1.emit(rep);
  b2.emit(rep);

  // delta_i : H_{n-1} -> H_n as u_{i+1} ... u_{n+1}; u_{N+1} does not exist, so n <= N-1.
  Tally<T> cof{"delta_i = u_{i+1} ... u_{n+1} on H_{n-1}", tol};
  for (int n = 0; n <= std::min(N - 1, M - 1); ++n)
    for (int i = 0; i <= n; ++i)
      cof.eq(t.coface(i, n, t.level_basis(n - 1)), d.product(i + 1, n + 1) * t.level_basis(n - 1),
             at("n", n, "i", i));
  cof.emit(rep);

  Tally<T> sh{"alpha_n = u_{n+1} ... u_{k+1} on H_k, k >= n", tol};
  for (int n = 0; n <= N - 1; ++n)
    for (int k = n; k <= std::min(N - 1, M - 1); ++k)
      sh.eq(t.apply(n, t.level_basis(k)), d.product(n + 1, k + 1) * t.level_basis(k), at("n", n, "k", k));
  sh.emit(rep);

  // Relation table on H_{N-1}; alpha_N is the identity there.
  const auto& b = t.level_basis(N - 1);
  Tally<T> c1{"u_j alpha_i = alpha_i u_{j-1} (i < j-1)", tol}, c2{"u_j alpha_{j-1} = alpha_j", tol},
      c3{"u_j alpha_j = alpha_{j-1}", tol}, c4{"u_j alpha_i = alpha_i u_j (i > j)", tol};
  for (int j = 1; j <= M; ++j)
    for (int i = 0; i <= N; ++i) {
      auto lhs = d.at(j) * t.apply(i, b);
      std::string w = at("j", j, "i", i);
      if (i < j - 1) c1.eq(lhs, t.apply(i, d.at(j - 1) * b), w);
      else if (i == j - 1) c2.eq(lhs, t.apply(j, b), w);
      else if (i == j) c3.eq(lhs, t.apply(j - 1, b), w);
      else if (j <= N - 1) c4.eq(lhs, t.apply(i, d.at(j) * b), w);
    }
  c1.emit(rep);
  c2.emit(rep);
  c3.emit(rep);
  c4.emit(rep);

  Tally<T> lab{"u_j L_chi = L_{s_j chi}", tol};
  auto ls = labeled_subspaces(t, N);
  std::map<Label, const Matrix<T>*> by_label;
  for (const auto& l : ls) by_label.emplace(l.label, &l.basis);
  for (int j = 1; j <= M; ++j)
    for (const auto& l : ls) {
      auto target = transpose_action(l.label, j);
      auto it = by_label.find(target);
      bool ok = target.rank() == l.label.rank() && it != by_label.end() &&
                linalg::same_span(d.at(j) * l.basis, *it->second, tol);
      lab.truth(ok, l.label.to_string() + " j=" + std::to_string(j));
    }
  lab.emit(rep);
  return rep;
}

template <class T>
HessenbergReport check_hessenberg(const HessenbergData<T>& d) {
  HessenbergReport out;
  auto& rep = out.checks;
  const auto& t = d.tower;
  const int N = t.max_level();
  const int M = d.count();
  if (M != N) throw PreconditionError("Hessenberg data needs u_1..u_N, got " + std::to_string(M));
  const double tol = t.tol();

  Tally<T> h1{"(H1) u_k fixes H_{k-2}", tol};
  for (int k = 1; k <= M; ++k) h1.eq(d.at(k) * t.level_basis(k - 2), t.level_basis(k - 2), at("k", k));
  h1.emit(rep);

  Tally<T> h2{"(H2) u_k H_l = H_l for l >= k >= 1", tol};
  for (int k = 1; k <= M; ++k)
    for (int l = k; l <= N; ++l)
      h2.truth(linalg::same_span(d.at(k) * t.level_basis(l), t.level_basis(l), tol), at("k", k, "l", l));
  bool h2_ok = h2.emit(rep);

  Tally<T> h2c{"u_{k+1} H_k in H_{k+1}", tol};
  for (int k = 0; k + 1 <= M; ++k)
    h2c.truth(linalg::contains(t.level_basis(k + 1), d.at(k + 1) * t.level_basis(k), tol), at("k", k));
  bool h2c_ok = h2c.emit(rep);
  if (h2_ok != h2c_ok) rep.caveats.push_back("(H2) and the containment u_{k+1} H_k in H_{k+1} disagree");

  const auto& top = t.level_basis(N);
  Tally<T> un{"u_k isometric on H_N", tol};
  for (int k = 1; k <= M; ++k) {
    auto v = d.at(k) * top;
    un.eq(v.transpose() * v, top.transpose() * top, at("k", k));
  }
  un.emit(rep);

  Tally<T> comm{"(C) u_m u_n = u_n u_m for |m-n| >= 2", tol};
  for (int m = 1; m <= M; ++m)
    for (int n = m + 2; n <= M; ++n)
      comm.eq(d.at(m) * d.at(n) * top, d.at(n) * d.at(m) * top, at("m", m, "n", n));
  comm.emit(rep);

  // Finite products stand in for alpha_n on H_{N-1}.
  std::vector<Matrix<T>> alpha;
  for (int n = 0; n <= N; ++n) alpha.push_back(d.product(n + 1, M));
  const auto& b = t.level_basis(N - 1);

  Tally<T> fact{"alpha_n = u_{n+1} ... u_{k+1} reproduces the tower shifts on H_k", tol};
  for (int n = 0; n <= N - 1; ++n)
    for (int k = n; k <= N - 1; ++k)
      fact.eq(d.product(n + 1, k + 1) * t.level_basis(k), t.apply(n, t.level_basis(k)), at("n", n, "k", k));
  fact.emit(rep);

  Tally<T> rec{"alpha_{n-1} = u_n alpha_n on H_{N-1}", tol};
  for (int n = 1; n <= N; ++n) rec.eq(alpha[n - 1] * b, d.at(n) * alpha[n] * b, at("n", n));
  rec.emit(rep);

  Tally<T> blocks{"alpha_n D_k in H_{k+1} (Hessenberg block form)", tol};
  for (int n = 0; n <= N - 1; ++n)
    for (int k = -1; k <= N - 1; ++k) {
      auto v = alpha[n] * t.innovation(k);
      blocks.eq(t.projector(k + 1) * v, v, at("n", n, "k", k));
    }
  blocks.emit(rep);

  // The three braided conditions, evaluated independently on H_{N-1}.
  Tally<T> c1{"u_{j+1} alpha_i = alpha_i u_j for i < j", tol};
  for (int j = 1; j <= N - 1; ++j)
    for (int i = 0; i < j; ++i) c1.eq(d.at(j + 1) * alpha[i] * b, alpha[i] * d.at(j) * b, at("i", i, "j", j));
  out.condition_shift_intertwines = c1.emit(rep);

  Tally<T> c2{"u_{j+1} alpha_{j-1} = alpha_{j-1} u_j", tol};
  for (int j = 1; j <= N - 1; ++j) c2.eq(d.at(j + 1) * alpha[j - 1] * b, alpha[j - 1] * d.at(j) * b, at("j", j));
  out.condition_adjacent = c2.emit(rep);

  Tally<T> c3{"u_j u_{j+1} u_j = u_{j+1} u_j u_{j+1} on alpha_{j+1} H_{N-1}", tol};
  for (int j = 1; j <= N - 1; ++j) {
    auto r = alpha[j + 1] * b;
    c3.eq(d.at(j) * d.at(j + 1) * d.at(j) * r, d.at(j + 1) * d.at(j) * d.at(j + 1) * r, at("j", j));
  }
  out.condition_braid_on_range = c3.emit(rep);
  rep.add("braided conditions agree", out.braided_conditions_agree());

  const bool braided = out.condition_shift_intertwines && out.condition_adjacent && out.condition_braid_on_range;
  const std::string why = "instance is not braided";
  if (braided) {
    Tally<T> ps{"products satisfy alpha_j alpha_i = alpha_i alpha_{j-1} on H_{N-2}", tol};
    const auto& b2 = t.level_basis(N - 2);
    for (int j = 1; j <= N - 1; ++j)
      for (int i = 0; i < j; ++i) ps.eq(alpha[j] * alpha[i] * b2, alpha[i] * alpha[j - 1] * b2, at("i", i, "j", j));
    ps.emit(rep);

    bool saturated = true;
    for (int n = 0; n <= N - 1 && saturated; ++n)
      saturated = linalg::same_span(fixed_space(t, n), t.level_basis(n - 1), tol);
    if (saturated) {
      Tally<T> adj{"delta_i^* u_{j+1} = u_j delta_i^* on H_k", tol};
      for (int k = 1; k <= N; ++k)
        for (int j = 1; j + 1 <= k; ++j)
          for (int i = 0; i < std::min(j, k); ++i) {
            auto a = t.coface_adjoint(i, k);
            const auto& hk = t.level_basis(k);
            adj.eq(a * d.at(j + 1) * hk, d.at(j) * a * hk, "k=" + std::to_string(k) + " " + at("i", i, "j", j));
          }
      adj.emit(rep);
    } else {
      rep.untested("delta_i^* u_{j+1} = u_j delta_i^* on H_k", "tower is not saturated");
    }

    Tally<T> fixp{"fixed space of alpha_n = joint fixed space of u_l, l >= n+1", tol};
    for (int n = 0; n <= N - 1; ++n) {
      Matrix<T> stack(0, b.cols());
      for (int l = n + 1; l <= M; ++l) stack = Matrix<T>::vcat(stack, d.at(l) * b - b);
      auto joint = b.cols() ? linalg::column_basis(b * linalg::kernel(stack, tol), tol) : b;
      auto fixed = linalg::column_basis(b * linalg::kernel(alpha[n] * b - b, tol), tol);
      fixp.truth(linalg::same_span(joint, fixed, tol), at("n", n));
    }
    fixp.emit(rep);
  } else {
    rep.untested("products satisfy alpha_j alpha_i = alpha_i alpha_{j-1} on H_{N-2}", why);
    rep.untested("delta_i^* u_{j+1} = u_j delta_i^* on H_k", why);
    rep.untested("fixed space of alpha_n = joint fixed space of u_l, l >= n+1", why);
  }
  return out;
}

template <class T>
HessenbergData<T> break_commutation(const HessenbergData<T>& d) {
  if (d.tower.max_level() < 3 || d.tower.innovation(3).cols() == 0 || d.count() < 3)
    throw PreconditionError("break_commutation needs N >= 3 and a nonzero D_3");
  Matrix<T> v = d.tower.innovation(3).col(0);
  T nn = linalg::dot(v, 0, v, 0);
  auto refl = Matrix<T>::identity(d.tower.ambient_dim()) - (v * v.transpose()).scaled(T(2) / nn);
  HessenbergData<T> out = d;
  out.u[0] = d.u[0] * refl;
  return out;
}

#define COSIMPLEX_HESSENBERG_INSTANTIATE(T)                                      \
  template struct HessenbergData<T>;                                             \
  template HessenbergData<T> build_symmetric_rep<T>(const Tower<T>&);            \
  template PropertyReport check_symmetric_rep<T>(const HessenbergData<T>&);      \
  template HessenbergReport check_hessenberg<T>(const HessenbergData<T>&);       \
  template HessenbergData<T> break_commutation<T>(const HessenbergData<T>&);

COSIMPLEX_HESSENBERG_INSTANTIATE(Rational)
COSIMPLEX_HESSENBERG_INSTANTIATE(double)

}  // namespace cosimplex
