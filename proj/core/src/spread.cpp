#include "cosimplex/spread.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <sstream>

#include "cosimplex/error.hpp"

namespace cosimplex {

namespace {

Eigen::MatrixXd to_eigen(const DMatrix& m) {
  Eigen::MatrixXd e(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) e(i, j) = m(i, j);
  return e;
}

DMatrix from_eigen(const Eigen::MatrixXd& e) {
  DMatrix m(static_cast<std::size_t>(e.rows()), static_cast<std::size_t>(e.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = e(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  return m;
}

template <class T>
Matrix<T> symmetrize(const Matrix<T>& m) {
  return (m + m.transpose()).scaled(T(1) / T(2));
}

// Symmetric m is positive semidefinite iff elimination never meets a negative pivot and
// every zero pivot has a zero row.
std::pair<bool, std::string> ldl_nonnegative(QMatrix m) {
  const std::size_t n = m.rows();
  std::ostringstream pivots;
  pivots << "LDL^T pivots [";
  for (std::size_t k = 0; k < n; ++k) {
    Rational p = m(k, k);
    pivots << (k ? ", " : "") << to_string(p);
    if (sgn(p) < 0) return {false, pivots.str() + "]"};
    if (sgn(p) == 0) {
      for (std::size_t j = k + 1; j < n; ++j)
        if (sgn(m(k, j)) != 0) return {false, pivots.str() + "] zero pivot with nonzero row"};
      continue;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      if (sgn(m(i, k)) == 0) continue;
      Rational f = m(i, k) / p;
      for (std::size_t j = k; j < n; ++j) m(i, j) -= f * m(k, j);
    }
  }
  return {true, pivots.str() + "]"};
}

template <class T>
Matrix<T> truncated_slot_domain(const SpreadableFamily<T>& f) {
  const std::size_t sd = *f.slot_dim;
  const int top = static_cast<int>(f.ambient_dim / sd) - 2;
  return f.slot_span(top - 1);
}

template <class T>
Matrix<T> fixed_in(const Matrix<T>& shift, const Matrix<T>& domain, double tol) {
  if (domain.cols() == 0) return domain;
  return linalg::column_basis(domain * linalg::kernel(shift * domain - domain, tol), tol);
}

template <class T>
SpreadableFamily<T> prefix(const SpreadableFamily<T>& f, int top) {
  SpreadableFamily<T> out = f;
  out.isometries.resize(static_cast<std::size_t>(top + 1));
  return out;
}

// Orthonormal eigenvectors of the angle in the K inner product, eigenvalues ascending.
std::pair<Eigen::VectorXd, Eigen::MatrixXd> angle_eigen(const DMatrix& gram, const DMatrix& angle) {
  Eigen::MatrixXd g = to_eigen(gram);
  Eigen::MatrixXd m = to_eigen(gram * angle);
  m = (m + m.transpose()) / 2;
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(m, g);
  return {es.eigenvalues(), es.eigenvectors()};
}

}  // namespace

template <class T>
Matrix<T> SpreadableFamily<T>::slot_shift(int n) const {
  if (!slot_dim || *slot_dim == 0) throw InputError("family has no slot structure");
  const std::size_t sd = *slot_dim;
  const int top = static_cast<int>(ambient_dim / sd) - 2;
  Matrix<T> a(ambient_dim, ambient_dim);
  for (int s = -1; s <= top - 1; ++s) {
    int to = s < n ? s : s + 1;
    for (std::size_t r = 0; r < sd; ++r)
      a(static_cast<std::size_t>(to + 1) * sd + r, static_cast<std::size_t>(s + 1) * sd + r) = T(1);
  }
  return a;
}

template <class T>
Matrix<T> SpreadableFamily<T>::slot_span(int top) const {
  if (!slot_dim || *slot_dim == 0) throw InputError("family has no slot structure");
  const std::size_t cols = std::min(ambient_dim, static_cast<std::size_t>(std::max(top + 2, 0)) * *slot_dim);
  Matrix<T> b(ambient_dim, cols);
  for (std::size_t c = 0; c < cols; ++c) b(c, c) = T(1);
  return b;
}

template <class T>
AngleReport<T> operator_angle(const SpreadableFamily<T>& f, double tol) {
  AngleReport<T> rep;
  const int N = f.max_index();
  const auto g = f.inner();
  auto ginv = linalg::inverse(g, tol);
  if (!ginv) throw InputError("gram matrix of K is singular");
  for (int n = 0; n <= N; ++n) {
    auto gn = f.isometries[static_cast<std::size_t>(n)].transpose() * f.isometries[static_cast<std::size_t>(n)];
    rep.deviation = std::max(rep.deviation, linalg::residual(gn, g));
    if (!linalg::approx_equal(gn, g, tol)) rep.isometric = false;
  }
  if (N < 1) {
    rep.angle = Matrix<T>(f.k_dim, f.k_dim);
    rep.certificate = "fewer than two isometries";
    return rep;
  }
  auto angle_of = [&](int i, int j) {
    return (*ginv) * f.isometries[static_cast<std::size_t>(j)].transpose() * f.isometries[static_cast<std::size_t>(i)];
  };
  rep.angle = angle_of(0, 1);
  for (int j = 1; j <= N; ++j)
    for (int i = 0; i < j; ++i) {
      auto c = angle_of(i, j);
      rep.deviation = std::max(rep.deviation, linalg::residual(c, rep.angle));
      if (!linalg::approx_equal(c, rep.angle, tol) && rep.spreadable) {
        rep.spreadable = false;
        rep.witness = std::make_pair(i, j);
      }
    }
  auto m = g * rep.angle;
  rep.self_adjoint = linalg::approx_equal(m, m.transpose(), tol);
  if constexpr (Field<T>::exact) {
    auto [pos, cert] = ldl_nonnegative(symmetrize(m));
    auto [con, cert2] = ldl_nonnegative(symmetrize(g - m));
    rep.positive = pos && rep.self_adjoint;
    rep.contraction = con;
    rep.certificate = cert + "; 1-C: " + cert2;
  } else {
    auto [vals, vecs] = angle_eigen(g, rep.angle);
    double lo = vals.size() ? vals.minCoeff() : 0.0, hi = vals.size() ? vals.maxCoeff() : 0.0;
    rep.positive = lo >= -tol && rep.self_adjoint;
    rep.contraction = hi <= 1 + tol;
    std::ostringstream os;
    os.precision(17);
    os << "eigenvalues in [" << lo << ", " << hi << "]";
    rep.certificate = os.str();
  }
  return rep;
}

std::optional<SpreadableFamily<Rational>> from_contraction_exact(const QMatrix& c, int max_index) {
  const std::size_t k = c.rows();
  if (c.cols() != k) throw InputError("contraction must be square");
  std::vector<Rational> s(k), t(k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      if (i != j && sgn(c(i, j)) != 0) return std::nullopt;
  for (std::size_t i = 0; i < k; ++i) {
    if (sgn(c(i, i)) < 0 || c(i, i) > 1) throw PreconditionError("contraction entry outside [0,1]");
    auto a = exact_sqrt(c(i, i));
    auto b = exact_sqrt(Rational(1 - c(i, i)));
    if (!a || !b) return std::nullopt;
    s[i] = *a;
    t[i] = *b;
  }
  SpreadableFamily<Rational> f;
  f.k_dim = k;
  f.ambient_dim = static_cast<std::size_t>(max_index + 2) * k;
  f.slot_dim = k;
  for (int n = 0; n <= max_index; ++n) {
    QMatrix m(f.ambient_dim, k);
    for (std::size_t i = 0; i < k; ++i) {
      m(i, i) = s[i];
      m(static_cast<std::size_t>(n + 1) * k + i, i) = t[i];
    }
    f.isometries.push_back(std::move(m));
  }
  return f;
}

SpreadableFamily<double> from_contraction(const DMatrix& c, int max_index, double tol) {
  const std::size_t k = c.rows();
  if (c.cols() != k) throw InputError("contraction must be square");
  if (!linalg::approx_equal(c, c.transpose(), tol)) throw PreconditionError("contraction must be symmetric");
  Eigen::MatrixXd e = to_eigen(symmetrize(c));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(e);
  Eigen::VectorXd lam = es.eigenvalues();
  for (Eigen::Index i = 0; i < lam.size(); ++i) {
    if (lam(i) < -tol || lam(i) > 1 + tol)
      throw PreconditionError("contraction has eigenvalue " + std::to_string(lam(i)) + " outside [0,1]");
    lam(i) = std::clamp(lam(i), 0.0, 1.0);
  }
  const auto& v = es.eigenvectors();
  DMatrix root = from_eigen(v * lam.cwiseSqrt().asDiagonal() * v.transpose());
  DMatrix coroot = from_eigen(v * (Eigen::VectorXd::Ones(lam.size()) - lam).cwiseSqrt().asDiagonal() * v.transpose());
  SpreadableFamily<double> f;
  f.k_dim = k;
  f.ambient_dim = static_cast<std::size_t>(max_index + 2) * k;
  f.slot_dim = k;
  for (int n = 0; n <= max_index; ++n) {
    DMatrix m(f.ambient_dim, k);
    m.set_block(0, 0, root);
    m.set_block(static_cast<std::size_t>(n + 1) * k, 0, coroot);
    f.isometries.push_back(std::move(m));
  }
  return f;
}

SpreadableFamily<Rational> l2_example(int max_index) {
  SpreadableFamily<Rational> f;
  f.k_dim = 1;
  f.ambient_dim = static_cast<std::size_t>(max_index + 2);
  f.slot_dim = 1;
  f.gram = QMatrix{{Rational(2)}};
  for (int n = 0; n <= max_index; ++n) {
    QMatrix x(f.ambient_dim, 1);
    x(0, 0) = 1;
    x(static_cast<std::size_t>(n + 1), 0) = 1;
    f.isometries.push_back(std::move(x));
  }
  return f;
}

template <class T>
Tower<T> minimal_sch(const SpreadableFamily<T>& f, double tol) {
  const int N = f.max_index();
  if (N < 0) throw InputError("family needs at least one isometry");
  const std::size_t amb = f.ambient_dim;
  std::vector<Matrix<T>> spans;
  if (N >= 1) {
    auto ker = linalg::kernel(f.isometries[1] - f.isometries[0], tol);
    spans.push_back(f.isometries[0] * ker);
  } else {
    spans.push_back(Matrix<T>(amb, 0));
  }
  Matrix<T> acc(amb, 0);
  for (int k = 0; k <= N; ++k) {
    acc = Matrix<T>::hcat(acc, f.isometries[static_cast<std::size_t>(k)]);
    spans.push_back(acc);
  }
  std::vector<Matrix<T>> shifts;
  const std::size_t kd = f.k_dim;
  Matrix<T> dom(amb, 0);
  for (int l = 0; l <= N - 1; ++l) dom = Matrix<T>::hcat(dom, f.isometries[static_cast<std::size_t>(l)]);
  auto piv = linalg::pivot_columns(dom, tol);
  auto sel = dom.select_cols(piv);
  std::optional<Matrix<T>> pinv;
  if (sel.cols()) {
    auto gi = linalg::inverse(sel.transpose() * sel, tol);
    if (!gi) throw PreconditionError("minimal tower: singular gram on H_{N-1}");
    pinv = (*gi) * sel.transpose();
  }
  for (int n = 0; n <= N - 1; ++n) {
    Matrix<T> img(amb, piv.size());
    for (std::size_t c = 0; c < piv.size(); ++c) {
      int l = static_cast<int>(piv[c] / kd);
      std::size_t col = piv[c] % kd;
      int to = l < n ? l : l + 1;
      img.set_col(c, f.isometries[static_cast<std::size_t>(to)].col(col));
    }
    shifts.push_back(pinv ? img * (*pinv) : Matrix<T>(amb, amb));
  }
  return Tower<T>(amb, std::move(spans), std::move(shifts), std::nullopt, tol);
}

template <class T>
SpreadableFamily<T> roundtrip_from_sch(const Tower<T>& t) {
  const int N = t.max_level();
  SpreadableFamily<T> f;
  auto x = t.level_basis(0);
  f.k_dim = x.cols();
  f.ambient_dim = t.ambient_dim();
  f.gram = x.transpose() * x;
  for (int n = 0; n <= N; ++n) {
    f.isometries.push_back(x);
    if (n < N) x = t.apply(0, x);
  }
  return f;
}

template <class T>
PropertyReport check_theorem_C(const SpreadableFamily<T>& f, double tol) {
  if (!f.slot_dim) throw InputError("Theorem C check needs a slot ambient (slot_dim) carrying the shifts");
  PropertyReport rep;
  const int N = f.max_index();
  auto angle = operator_angle(f, tol);
  rep.add("isometries", angle.isometric, angle.deviation);
  rep.add("constant angle", angle.spreadable, angle.deviation,
          angle.witness ? "pair " + std::to_string(angle.witness->first) + "," + std::to_string(angle.witness->second)
                        : "");
  const auto domain = truncated_slot_domain(f);
  const auto fixed0 = fixed_in(f.slot_shift(0), domain, tol);
  const auto q = linalg::projector(fixed0, tol);
  const auto I = Matrix<T>::identity(f.ambient_dim);
  const auto& iso = f.isometries;

  bool orth = true;
  double worst = 0;
  std::string where;
  for (int i = 0; i <= N; ++i)
    for (int j = i + 1; j <= N; ++j) {
      auto g = ((I - q) * iso[static_cast<std::size_t>(i)]).transpose() * ((I - q) * iso[static_cast<std::size_t>(j)]);
      worst = std::max(worst, g.max_abs());
      if (!g.is_zero(tol) && orth) {
        orth = false;
        where = std::to_string(i) + "," + std::to_string(j);
      }
    }
  rep.add("(1-Q) iota_n(K) pairwise orthogonal", orth, worst, where);

  if (N >= 1) {
    auto ginv = *linalg::inverse(f.inner(), tol);
    auto c1 = ginv * iso[1].transpose() * q * iso[0];
    auto c0 = ginv * iso[0].transpose() * q * iso[0];
    rep.add("C = iota_1^T Q iota_0", linalg::approx_equal(c1, angle.angle, tol), linalg::residual(c1, angle.angle));
    rep.add("C = iota_0^T Q iota_0", linalg::approx_equal(c0, angle.angle, tol), linalg::residual(c0, angle.angle));
  } else {
    rep.untested("C = iota_1^T Q iota_0", "single isometry");
    rep.untested("C = iota_0^T Q iota_0", "single isometry");
  }
  rep.add("C >= 0", angle.positive, 0, angle.certificate);

  auto tower = minimal_sch(f, tol);
  const auto& top = tower.level_basis(N - 1);
  bool agree = true;
  double res = 0;
  for (int n = 0; n <= N - 1; ++n) {
    auto a = f.slot_shift(n) * top, b = tower.apply(n, top);
    res = std::max(res, linalg::residual(a, b));
    agree = agree && linalg::approx_equal(a, b, tol);
  }
  rep.add("slot shifts restrict to the minimal tower shifts", agree, res);

  // The closure of the union is represented by the span of the family plus the range of Q iota_0.
  Matrix<T> w(f.ambient_dim, 0);
  for (const auto& m : iso) w = Matrix<T>::hcat(w, m);
  w = Matrix<T>::hcat(w, q * iso[0]);
  bool saturated = N >= 1;
  for (int n = 0; n <= N - 1 && saturated; ++n) {
    auto fx = linalg::intersect(fixed_in(f.slot_shift(n), domain, tol), w, tol);
    saturated = linalg::same_span(fx, tower.level_basis(n - 1), tol);
  }
  if (saturated && N >= 1) {
    auto c2 = angle.angle * angle.angle;
    rep.add("saturated: C is a projection", linalg::approx_equal(c2, angle.angle, tol), linalg::residual(c2, angle.angle));
  } else {
    rep.untested("saturated: C is a projection", "minimal tower is not saturated");
  }
  return rep;
}

std::vector<Rational> characteristic_polynomial(const QMatrix& a) {
  const std::size_t n = a.rows();
  std::vector<Rational> c(n + 1);
  c[0] = 1;
  QMatrix m(n, n);
  const auto I = QMatrix::identity(n);
  for (std::size_t k = 1; k <= n; ++k) {
    m = a * m + I.scaled(c[k - 1]);
    auto am = a * m;
    Rational tr = 0;
    for (std::size_t i = 0; i < n; ++i) tr += am(i, i);
    c[k] = -tr / Rational(static_cast<long>(k));
  }
  return c;
}

namespace {

void build_intertwiner(FamilyEquivalence& out, const SpreadableFamily<double>& a, const SpreadableFamily<double>& b,
                       const DMatrix& ca, const DMatrix& cb, double tol) {
  const int m = std::min(a.max_index(), b.max_index());
  if (a.max_index() != b.max_index())
    out.checks.caveats.push_back("families have different lengths; compared on iota_0..iota_" + std::to_string(m));
  auto [va, ea] = angle_eigen(a.inner(), ca);
  auto [vb, eb] = angle_eigen(b.inner(), cb);
  Eigen::MatrixXd uk = eb * ea.inverse();
  DMatrix u_k = from_eigen(uk);
  out.kernel_unitary = u_k;
  out.checks.add("C_b U = U C_a on K", linalg::approx_equal(cb * u_k, u_k * ca, tol), linalg::residual(cb * u_k, u_k * ca));
  auto gk = u_k.transpose() * b.inner() * u_k;
  out.checks.add("U isometric between the K inner products", linalg::approx_equal(gk, a.inner(), tol),
                 linalg::residual(gk, a.inner()));

  DMatrix sa(a.ambient_dim, 0), sb(b.ambient_dim, 0);
  for (int n = 0; n <= m; ++n) {
    sa = DMatrix::hcat(sa, a.isometries[static_cast<std::size_t>(n)]);
    sb = DMatrix::hcat(sb, b.isometries[static_cast<std::size_t>(n)] * u_k);
  }
  auto piv = linalg::pivot_columns(sa, tol);
  auto sel = sa.select_cols(piv);
  auto gi = linalg::inverse(sel.transpose() * sel, tol);
  if (!gi) {
    out.checks.add("intertwiner constructed", false, 0, "singular gram");
    return;
  }
  DMatrix u = sb.select_cols(piv) * (*gi) * sel.transpose();
  out.checks.add("intertwiner maps iota_n^a to iota_n^b U", linalg::approx_equal(u * sa, sb, tol),
                 linalg::residual(u * sa, sb));
  out.checks.add("inner products of the families agree", linalg::approx_equal(sa.transpose() * sa, sb.transpose() * sb, tol),
                 linalg::residual(sa.transpose() * sa, sb.transpose() * sb));
  auto ta = minimal_sch(prefix(a, m), tol), tb = minimal_sch(prefix(b, m), tol);
  bool ok = true;
  double res = 0;
  const auto& top = ta.level_basis(m - 1);
  for (int n = 0; n <= m - 1; ++n) {
    auto lhs = u * ta.apply(n, top), rhs = tb.apply(n, u * top);
    res = std::max(res, linalg::residual(lhs, rhs));
    ok = ok && linalg::approx_equal(lhs, rhs, tol);
  }
  out.checks.add("intertwiner commutes with the minimal tower shifts", ok, res);
  out.intertwiner = std::move(u);
  out.checks.caveats.push_back("decides existence of some intertwiner; the kernel unitary is not pinned by iota_0");
}

}  // namespace

FamilyEquivalence family_equivalence(const SpreadableFamily<Rational>& a, const SpreadableFamily<Rational>& b) {
  FamilyEquivalence out;
  out.exact_decision = true;
  auto ra = operator_angle(a), rb = operator_angle(b);
  if (!ra.spreadable || !rb.spreadable || !ra.isometric || !rb.isometric)
    throw PreconditionError("family equivalence needs spreadable families");
  auto pa = characteristic_polynomial(ra.angle), pb = characteristic_polynomial(rb.angle);
  for (const auto& x : pa) out.spectrum_a.push_back(to_string(x));
  for (const auto& x : pb) out.spectrum_b.push_back(to_string(x));
  out.equivalent = a.k_dim == b.k_dim && pa == pb;
  out.checks.add("equal dim K", a.k_dim == b.k_dim);
  out.checks.add("equal characteristic polynomial of the angle", pa == pb);
  if (out.equivalent)
    build_intertwiner(out, cast_family<double>(a), cast_family<double>(b), ra.angle.cast<double>(),
                      rb.angle.cast<double>(), kDefaultTolerance);
  return out;
}

FamilyEquivalence family_equivalence(const SpreadableFamily<double>& a, const SpreadableFamily<double>& b, double tol) {
  FamilyEquivalence out;
  auto ra = operator_angle(a, tol), rb = operator_angle(b, tol);
  if (!ra.spreadable || !rb.spreadable || !ra.isometric || !rb.isometric)
    throw PreconditionError("family equivalence needs spreadable families");
  auto [va, ea] = angle_eigen(a.inner(), ra.angle);
  auto [vb, eb] = angle_eigen(b.inner(), rb.angle);
  auto fmt = [](double x) {
    std::ostringstream os;
    os.precision(12);
    os << x;
    return os.str();
  };
  for (Eigen::Index i = 0; i < va.size(); ++i) out.spectrum_a.push_back(fmt(va(i)));
  for (Eigen::Index i = 0; i < vb.size(); ++i) out.spectrum_b.push_back(fmt(vb(i)));
  bool same = a.k_dim == b.k_dim && va.size() == vb.size();
  for (Eigen::Index i = 0; same && i < va.size(); ++i) same = std::fabs(va(i) - vb(i)) <= std::sqrt(tol);
  out.checks.add("equal dim K", a.k_dim == b.k_dim);
  out.checks.add("equal spectrum of the angle", same);
  out.equivalent = same;
  if (same) build_intertwiner(out, a, b, ra.angle, rb.angle, tol);
  return out;
}

#define COSIMPLEX_SPREAD_INSTANTIATE(T)                                                   \
  template struct SpreadableFamily<T>;                                                    \
  template AngleReport<T> operator_angle<T>(const SpreadableFamily<T>&, double);          \
  template Tower<T> minimal_sch<T>(const SpreadableFamily<T>&, double);                   \
  template SpreadableFamily<T> roundtrip_from_sch<T>(const Tower<T>&);                    \
  template PropertyReport check_theorem_C<T>(const SpreadableFamily<T>&, double);

COSIMPLEX_SPREAD_INSTANTIATE(Rational)
COSIMPLEX_SPREAD_INSTANTIATE(double)

}  // namespace cosimplex
