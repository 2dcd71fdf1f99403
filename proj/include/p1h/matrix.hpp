/*
   Copyright 2026 The p1h Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

// Dense matrices over k or k[T] with fraction-free elimination.

#pragma once

#include <utility>
#include <vector>

#include "p1h/poly.hpp"

namespace p1h {

template <class C>
class Matrix {
 public:
  explicit Matrix(Field f = Field{}, int rows = 0, int cols = 0)
      : field_(f), rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows * cols), Ring<C>::zero(f)) {}

  static Matrix identity(Field f, int n) {
    Matrix m(f, n, n);
    for (int i = 0; i < n; ++i) m(i, i) = Ring<C>::one(f);
    return m;
  }
  static Matrix from_rows(Field f, const std::vector<std::vector<C>>& rows) {
    const int r = static_cast<int>(rows.size());
    const int c = r ? static_cast<int>(rows[0].size()) : 0;
    Matrix m(f, r, c);
    for (int i = 0; i < r; ++i) {
      if (static_cast<int>(rows[static_cast<std::size_t>(i)].size()) != c) throw Error("ragged matrix");
      for (int j = 0; j < c; ++j) m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
    return m;
  }

  Field field() const noexcept { return field_; }
  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  C& operator()(int i, int j) { return a_[static_cast<std::size_t>(i * cols_ + j)]; }
  const C& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i * cols_ + j)]; }

  Matrix transpose() const {
    Matrix t(field_, cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }
  bool is_symmetric() const {
    if (rows_ != cols_) return false;
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < i; ++j)
        if (!((*this)(i, j) == (*this)(j, i))) return false;
    return true;
  }
  Matrix block(int r0, int c0, int r, int c) const {
    Matrix b(field_, r, c);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
  }

  friend Matrix operator*(const Matrix& x, const Matrix& y) {
    if (x.cols_ != y.rows_) throw Error("matrix shape mismatch");
    Matrix z(x.field_, x.rows_, y.cols_);
    for (int i = 0; i < x.rows_; ++i)
      for (int k = 0; k < x.cols_; ++k) {
        if (Ring<C>::is_zero(x(i, k))) continue;
        for (int j = 0; j < y.cols_; ++j) z(i, j) += x(i, k) * y(k, j);
      }
    return z;
  }
  friend Matrix operator+(Matrix x, const Matrix& y) {
    if (x.rows_ != y.rows_ || x.cols_ != y.cols_) throw Error("matrix shape mismatch");
    for (std::size_t i = 0; i < x.a_.size(); ++i) x.a_[i] += y.a_[i];
    return x;
  }
  friend bool operator==(const Matrix& x, const Matrix& y) {
    return x.field_ == y.field_ && x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
  }

 private:
  Field field_;
  int rows_, cols_;
  std::vector<C> a_;
};

// Bareiss elimination; exact over k and k[T].
template <class C>
C determinant(Matrix<C> m) {
  const int n = m.rows();
  if (n != m.cols()) throw Error("determinant of a non-square matrix");
  const Field f = m.field();
  if (n == 0) return Ring<C>::one(f);
  bool neg = false;
  C prev = Ring<C>::one(f);
  for (int k = 0; k + 1 < n; ++k) {
    if (Ring<C>::is_zero(m(k, k))) {
      int p = k + 1;
      while (p < n && Ring<C>::is_zero(m(p, k))) ++p;
      if (p == n) return Ring<C>::zero(f);
      for (int j = 0; j < n; ++j) std::swap(m(k, j), m(p, j));
      neg = !neg;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) m(i, j) = Ring<C>::exact_div(m(i, j) * m(k, k) - m(i, k) * m(k, j), prev);
      m(i, k) = Ring<C>::zero(f);
    }
    prev = m(k, k);
  }
  C d = m(n - 1, n - 1);
  return neg ? C(-d) : d;
}

// Matrix with row r and column c removed.
template <class C>
Matrix<C> minor_matrix(const Matrix<C>& m, int r, int c) {
  Matrix<C> out(m.field(), m.rows() - 1, m.cols() - 1);
  for (int i = 0, oi = 0; i < m.rows(); ++i) {
    if (i == r) continue;
    for (int j = 0, oj = 0; j < m.cols(); ++j) {
      if (j == c) continue;
      out(oi, oj++) = m(i, j);
    }
    ++oi;
  }
  return out;
}

Matrix<Scalar> inverse(const Matrix<Scalar>& m);
std::vector<Scalar> solve(const Matrix<Scalar>& m, const std::vector<Scalar>& rhs);

// Inverse over k[T] through the adjugate; the determinant must be a unit.
Matrix<KPoly> inverse(const Matrix<KPoly>& m);
// Cramer's rule; the determinant must be a unit.
std::vector<KPoly> solve(const Matrix<KPoly>& m, const std::vector<KPoly>& rhs);

Matrix<Scalar> eval_t(const Matrix<KPoly>& m, const Scalar& t);
Matrix<KPoly> lift_t(const Matrix<Scalar>& m);

}  // namespace p1h
