#pragma once

// Elimination-based linear algebra shared by exact (Rational) and float (double) paths.
// Exact routines take the first nonzero pivot; float routines use partial pivoting
// and treat |x| <= tol as zero.

#include <cmath>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "cosimplex/matrix.hpp"

namespace cosimplex::linalg {

template <class T>
struct Echelon {
  Matrix<T> reduced;                // reduced row echelon form
  std::vector<std::size_t> pivots;  // pivot column per nonzero row
};

template <class T>
Echelon<T> rref(Matrix<T> a, double tol = kDefaultTolerance) {
  Echelon<T> out;
  const std::size_t m = a.rows(), n = a.cols();
  std::size_t row = 0;
  for (std::size_t c = 0; c < n && row < m; ++c) {
    std::size_t p = m;
    if constexpr (Field<T>::exact) {
      for (std::size_t r = row; r < m; ++r)
        if (!Field<T>::is_zero(a(r, c), tol)) { p = r; break; }
    } else {
      double best = tol;
      for (std::size_t r = row; r < m; ++r)
        if (Field<T>::magnitude(a(r, c)) > best) { best = Field<T>::magnitude(a(r, c)); p = r; }
    }
    if (p == m) {
      if constexpr (!Field<T>::exact)
        for (std::size_t r = row; r < m; ++r) a(r, c) = T(0);
      continue;
    }
    if (p != row)
      for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(row, j));
    T inv = T(1) / a(row, c);
    for (std::size_t j = c; j < n; ++j) a(row, j) *= inv;
    for (std::size_t r = 0; r < m; ++r) {
      if (r == row) continue;
      T f = a(r, c);
      if (f == 0) continue;
      for (std::size_t j = c; j < n; ++j) {
        if (a(row, j) == 0) continue;
        a(r, j) -= f * a(row, j);
      }
      if constexpr (!Field<T>::exact) a(r, c) = T(0);
    }
    out.pivots.push_back(c);
    ++row;
  }
  out.reduced = std::move(a);
  return out;
}

template <class T>
std::size_t rank(const Matrix<T>& a, double tol = kDefaultTolerance) {
  if (a.empty()) return 0;
  return rref(a, tol).pivots.size();
}

// Columns form a basis of the null space of a, one per free variable.
template <class T>
Matrix<T> kernel(const Matrix<T>& a, double tol = kDefaultTolerance) {
  const std::size_t n = a.cols();
  if (a.rows() == 0) return Matrix<T>::identity(n);
  auto e = rref(a, tol);
  std::vector<bool> is_pivot(n, false);
  for (auto c : e.pivots) is_pivot[c] = true;
  std::vector<std::size_t> free;
  for (std::size_t c = 0; c < n; ++c)
    if (!is_pivot[c]) free.push_back(c);
  Matrix<T> k(n, free.size());
  for (std::size_t f = 0; f < free.size(); ++f) {
    k(free[f], f) = T(1);
    for (std::size_t r = 0; r < e.pivots.size(); ++r) k(e.pivots[r], f) = -e.reduced(r, free[f]);
  }
  return k;
}

template <class T>
std::vector<std::size_t> pivot_columns(const Matrix<T>& a, double tol = kDefaultTolerance) {
  if (a.empty()) return {};
  return rref(a, tol).pivots;
}

// Independent columns of a (earliest first) spanning its column space.
template <class T>
Matrix<T> column_basis(const Matrix<T>& a, double tol = kDefaultTolerance) {
  if (a.cols() == 0) return Matrix<T>(a.rows(), 0);
  return a.select_cols(pivot_columns(a, tol));
}

// Some X with a X = b, or nullopt when inconsistent.
template <class T>
std::optional<Matrix<T>> solve(const Matrix<T>& a, const Matrix<T>& b, double tol = kDefaultTolerance) {
  const std::size_t n = a.cols();
  Matrix<T> x(n, b.cols());
  if (a.rows() == 0) return x;
  auto e = rref(Matrix<T>::hcat(a, b), tol);
  for (std::size_t r = 0; r < e.pivots.size(); ++r) {
    if (e.pivots[r] >= n) return std::nullopt;
    for (std::size_t j = 0; j < b.cols(); ++j) x(e.pivots[r], j) = e.reduced(r, n + j);
  }
  if constexpr (!Field<T>::exact) {
    if (!(a * x - b).is_zero(std::sqrt(tol))) return std::nullopt;
  }
  return x;
}

template <class T>
std::optional<Matrix<T>> inverse(const Matrix<T>& a, double tol = kDefaultTolerance) {
  if (a.rows() != a.cols()) return std::nullopt;
  if (rank(a, tol) != a.rows()) return std::nullopt;
  return solve(a, Matrix<T>::identity(a.rows()), tol);
}

// span(v) is contained in span(u).
template <class T>
bool contains(const Matrix<T>& u, const Matrix<T>& v, double tol = kDefaultTolerance) {
  if (v.cols() == 0) return true;
  if (u.cols() == 0) return v.is_zero(tol);
  return rank(Matrix<T>::hcat(u, v), tol) == rank(u, tol);
}

template <class T>
bool same_span(const Matrix<T>& u, const Matrix<T>& v, double tol = kDefaultTolerance) {
  return contains(u, v, tol) && contains(v, u, tol);
}

// Basis of span(u) ∩ span(v).
template <class T>
Matrix<T> intersect(const Matrix<T>& u, const Matrix<T>& v, double tol = kDefaultTolerance) {
  const std::size_t m = u.cols() ? u.rows() : v.rows();
  if (u.cols() == 0 || v.cols() == 0) return Matrix<T>(m, 0);
  auto k = kernel(Matrix<T>::hcat(u, -v), tol);
  auto top = k.block(0, 0, u.cols(), k.cols());
  return column_basis(u * top, tol);
}

template <class T>
T dot(const Matrix<T>& a, std::size_t i, const Matrix<T>& b, std::size_t j) {
  T s(0);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    if (a(r, i) == 0) continue;
    s += a(r, i) * b(r, j);
  }
  return s;
}

// Orthogonalizes columns of b against the orthogonal columns of q and each other
// (modified Gram-Schmidt, input order). Returns only the new nonzero vectors;
// exact vectors stay unnormalized, float vectors are normalized.
template <class T>
Matrix<T> orthogonalize_against(const Matrix<T>& q, const Matrix<T>& b, double tol = kDefaultTolerance) {
  const std::size_t m = b.rows();
  Matrix<T> basis = q.cols() ? q : Matrix<T>(m, 0);
  std::vector<T> norms;
  for (std::size_t j = 0; j < basis.cols(); ++j) norms.push_back(dot(basis, j, basis, j));
  std::vector<std::size_t> fresh;
  for (std::size_t c = 0; c < b.cols(); ++c) {
    Matrix<T> w = b.col(c);
    for (std::size_t j = 0; j < basis.cols(); ++j) {
      if (Field<T>::is_zero(norms[j], tol)) continue;
      T f = dot(w, 0, basis, j) / norms[j];
      if (f == 0) continue;
      for (std::size_t r = 0; r < m; ++r) w(r, 0) -= f * basis(r, j);
    }
    T nn = dot(w, 0, w, 0);
    bool zero;
    if constexpr (Field<T>::exact) zero = (nn == 0);
    else zero = std::sqrt(nn) <= std::sqrt(tol) * std::max(1.0, std::sqrt(Field<T>::magnitude(dot(b, c, b, c))));
    if (zero) continue;
    if constexpr (!Field<T>::exact) {
      double s = 1.0 / std::sqrt(nn);
      for (std::size_t r = 0; r < m; ++r) w(r, 0) *= s;
      nn = 1.0;
    }
    basis = Matrix<T>::hcat(basis, w);
    norms.push_back(nn);
    fresh.push_back(basis.cols() - 1);
  }
  return basis.select_cols(fresh);
}

template <class T>
Matrix<T> gram_schmidt(const Matrix<T>& b, double tol = kDefaultTolerance) {
  return orthogonalize_against(Matrix<T>(b.rows(), 0), b, tol);
}

// Orthogonal projector onto span(b) in the ambient (b may be rank deficient).
template <class T>
Matrix<T> projector(const Matrix<T>& b, double tol = kDefaultTolerance) {
  const std::size_t m = b.rows();
  auto basis = column_basis(b, tol);
  if (basis.cols() == 0) return Matrix<T>(m, m);
  auto bt = basis.transpose();
  auto g = inverse(bt * basis, tol);
  return basis * (*g) * bt;
}

// Columns of v (subspace of span u) spanning the orthogonal complement of span(u0) inside span(v).
template <class T>
Matrix<T> complement_in(const Matrix<T>& v, const Matrix<T>& u0, double tol = kDefaultTolerance) {
  if (v.cols() == 0) return v;
  if (u0.cols() == 0) return column_basis(v, tol);
  // x = v c with u0^T v c = 0.
  auto k = kernel(u0.transpose() * v, tol);
  return column_basis(v * k, tol);
}

template <class T>
bool approx_equal(const Matrix<T>& a, const Matrix<T>& b, double tol = kDefaultTolerance) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  if constexpr (Field<T>::exact) return a == b;
  else return (a - b).max_abs() <= tol;
}

// Residual for reports: 0 when exactly equal in exact mode.
template <class T>
double residual(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return INFINITY;
  return (a - b).max_abs();
}

}  // namespace cosimplex::linalg
