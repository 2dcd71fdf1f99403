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

#include "p1h/matrix.hpp"

namespace p1h {

Matrix<Scalar> inverse(const Matrix<Scalar>& m) {
  const int n = m.rows();
  if (n != m.cols()) throw Error("inverse of a non-square matrix");
  const Field f = m.field();
  Matrix<Scalar> a = m, inv = Matrix<Scalar>::identity(f, n);
  for (int k = 0; k < n; ++k) {
    int p = k;
    while (p < n && a(p, k).is_zero()) ++p;
    if (p == n) throw Error("singular matrix");
    for (int j = 0; j < n; ++j) {
      std::swap(a(k, j), a(p, j));
      std::swap(inv(k, j), inv(p, j));
    }
    const Scalar s = a(k, k).inverse();
    for (int j = 0; j < n; ++j) {
      a(k, j) *= s;
      inv(k, j) *= s;
    }
    for (int i = 0; i < n; ++i) {
      if (i == k || a(i, k).is_zero()) continue;
      const Scalar c = a(i, k);
      for (int j = 0; j < n; ++j) {
        a(i, j) -= c * a(k, j);
        inv(i, j) -= c * inv(k, j);
      }
    }
  }
  return inv;
}

std::vector<Scalar> solve(const Matrix<Scalar>& m, const std::vector<Scalar>& rhs) {
  const Matrix<Scalar> inv = inverse(m);
  std::vector<Scalar> x(static_cast<std::size_t>(m.rows()), Scalar::zero(m.field()));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) x[static_cast<std::size_t>(i)] += inv(i, j) * rhs[static_cast<std::size_t>(j)];
  return x;
}

Matrix<KPoly> inverse(const Matrix<KPoly>& m) {
  const int n = m.rows();
  const Field f = m.field();
  const KPoly det = determinant(m);
  if (det.degree() != 0) throw Error("matrix over k[T] is not unimodular");
  const Scalar dinv = det.lead().inverse();
  Matrix<KPoly> out(f, n, n);
  if (n == 1) {
    out(0, 0) = KPoly::constant(f, dinv);
    return out;
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      KPoly c = determinant(minor_matrix(m, j, i)).scaled(dinv);
      out(i, j) = (i + j) % 2 ? -c : c;
    }
  return out;
}

std::vector<KPoly> solve(const Matrix<KPoly>& m, const std::vector<KPoly>& rhs) {
  const int n = m.rows();
  const KPoly det = determinant(m);
  if (det.degree() != 0) throw Error("linear system over k[T] is not unimodular");
  const Scalar dinv = det.lead().inverse();
  std::vector<KPoly> x;
  for (int c = 0; c < n; ++c) {
    Matrix<KPoly> mc = m;
    for (int i = 0; i < n; ++i) mc(i, c) = rhs[static_cast<std::size_t>(i)];
    x.push_back(determinant(mc).scaled(dinv));
  }
  return x;
}

Matrix<Scalar> eval_t(const Matrix<KPoly>& m, const Scalar& t) {
  Matrix<Scalar> out(m.field(), m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out(i, j) = evaluate(m(i, j), t);
  return out;
}

Matrix<KPoly> lift_t(const Matrix<Scalar>& m) {
  Matrix<KPoly> out(m.field(), m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out(i, j) = KPoly::constant(m.field(), m(i, j));
  return out;
}

}  // namespace p1h
