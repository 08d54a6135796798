#pragma once

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <initializer_list>
#include <type_traits>
#include <vector>

#include "cosimplex/rational.hpp"

namespace cosimplex {

// Dense row-major matrix over Rational or double.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}
  Matrix(std::initializer_list<std::initializer_list<T>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      assert(r.size() == cols_);
      for (const auto& x : r) data_.push_back(x);
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  static Matrix column(const std::vector<T>& v) {
    Matrix m(v.size(), 1);
    for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
    return m;
  }

  // Unit column e_i of length n.
  static Matrix unit(std::size_t n, std::size_t i) {
    Matrix m(n, 1);
    m(i, 0) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Matrix col(std::size_t j) const {
    Matrix c(rows_, 1);
    for (std::size_t i = 0; i < rows_; ++i) c(i, 0) = (*this)(i, j);
    return c;
  }

  Matrix select_cols(const std::vector<std::size_t>& idx) const {
    Matrix m(rows_, idx.size());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < idx.size(); ++k) m(i, k) = (*this)(i, idx[k]);
    return m;
  }

  Matrix select_rows(const std::vector<std::size_t>& idx) const {
    Matrix m(idx.size(), cols_);
    for (std::size_t k = 0; k < idx.size(); ++k)
      for (std::size_t j = 0; j < cols_; ++j) m(k, j) = (*this)(idx[k], j);
    return m;
  }

  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    Matrix m(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) m(i, j) = (*this)(r0 + i, c0 + j);
    return m;
  }

  void set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
  }

  void set_col(std::size_t j, const Matrix& c) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = c(i, 0);
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  // Horizontal concatenation; an empty operand with zero rows adopts the other's row count.
  static Matrix hcat(const Matrix& a, const Matrix& b) {
    if (a.cols_ == 0 && a.rows_ != b.rows_) return b;
    if (b.cols_ == 0 && a.rows_ != b.rows_) return a;
    assert(a.rows_ == b.rows_);
    Matrix m(a.rows_, a.cols_ + b.cols_);
    m.set_block(0, 0, a);
    m.set_block(0, a.cols_, b);
    return m;
  }

  static Matrix vcat(const Matrix& a, const Matrix& b) {
    assert(a.cols_ == b.cols_);
    Matrix m(a.rows_ + b.rows_, a.cols_);
    m.set_block(0, 0, a);
    m.set_block(a.rows_, 0, b);
    return m;
  }

  Matrix operator*(const Matrix& b) const {
    assert(cols_ == b.rows_);
    Matrix c(rows_, b.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const T& a = (*this)(i, k);
        if (a == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          const T& y = b(k, j);
          if (y == 0) continue;
          c(i, j) += a * y;
        }
      }
    return c;
  }

  Matrix operator+(const Matrix& b) const {
    assert(rows_ == b.rows_ && cols_ == b.cols_);
    Matrix c = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) c.data_[i] += b.data_[i];
    return c;
  }

  Matrix operator-(const Matrix& b) const {
    assert(rows_ == b.rows_ && cols_ == b.cols_);
    Matrix c = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) c.data_[i] -= b.data_[i];
    return c;
  }

  Matrix operator-() const {
    Matrix c = *this;
    for (auto& x : c.data_) x = -x;
    return c;
  }

  Matrix scaled(const T& s) const {
    Matrix c = *this;
    for (auto& x : c.data_) x *= s;
    return c;
  }

  bool operator==(const Matrix& b) const {
    return rows_ == b.rows_ && cols_ == b.cols_ && data_ == b.data_;
  }

  bool is_zero(double tol) const {
    return std::all_of(data_.begin(), data_.end(), [tol](const T& x) { return Field<T>::is_zero(x, tol); });
  }

  double max_abs() const {
    double m = 0;
    for (const auto& x : data_) m = std::max(m, Field<T>::magnitude(x));
    return m;
  }

  template <class U>
  Matrix<U> cast() const {
    Matrix<U> m(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) {
        if constexpr (std::is_same_v<U, double>)
          m(i, j) = Field<T>::to_double((*this)(i, j));
        else
          m(i, j) = U((*this)(i, j));
      }
    return m;
  }

  const std::vector<T>& data() const { return data_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using QMatrix = Matrix<Rational>;
using DMatrix = Matrix<double>;

}  // namespace cosimplex
