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

// Bezout forms, their Hankel inverses and the reconstruction maps.

#pragma once

#include <utility>
#include <vector>

#include "p1h/ratmap.hpp"

namespace p1h {

// Coefficients c_pq of (A(X)B(Y) - A(Y)B(X)) / (X - Y) at formal degree n.
template <class C>
Matrix<C> bezout_matrix(const Poly<C>& A, const Poly<C>& B, int n) {
  const Field f = A.field();
  Matrix<C> m(f, n, n);
  for (int i = 1; i <= n; ++i)
    for (int j = 0; j < i; ++j) {
      C d = A.coeff(i) * B.coeff(j) - A.coeff(j) * B.coeff(i);
      if (Ring<C>::is_zero(d)) continue;
      // (X^i Y^j - X^j Y^i)/(X - Y) = sum_k X^(j+k) Y^(i-1-k)
      for (int k = 0; k < i - j; ++k) m(j + k, i - 1 - k) += d;
    }
  return m;
}

template <class C>
Matrix<C> bezout_form(const PointedRat<C>& f) {
  return bezout_matrix(f.A(), f.B(), f.degree());
}

template <class C>
struct Hankel {
  Field field;
  int n = 0;
  std::vector<C> s;  // s_1 .. s_{2n-1}

  Matrix<C> matrix() const {
    Matrix<C> m(field, n, n);
    for (int p = 0; p < n; ++p)
      for (int q = 0; q < n; ++q) m(p, q) = s[static_cast<std::size_t>(p + q)];
    return m;
  }
  static Hankel from_matrix(const Matrix<C>& m) {
    const int n = m.rows();
    Hankel h{m.field(), n, {}};
    for (int k = 0; k + 1 < 2 * n; ++k) {
      const int p = k < n ? 0 : k - n + 1;
      h.s.push_back(m(p, k - p));
    }
    if (!(h.matrix() == m)) throw Error("matrix is not Hankel");
    return h;
  }
  friend bool operator==(const Hankel& a, const Hankel& b) { return a.n == b.n && a.s == b.s; }
};

template <class C>
Hankel<C> hankel_of(const PointedRat<C>& f) {
  const int n = f.degree();
  if (n < 1) throw Error("hankel_of requires degree at least 1");
  return {f.field(), n, laurent_expand(f.V(), f.A(), 2 * n - 1)};
}

// Inverse of hankel_of x phi_n.
template <class C>
PointedRat<C> psi_n(const Hankel<C>& H, const C& v) {
  const Field f = H.field;
  const int n = H.n;
  if (n < 1) throw Error("psi_n requires size at least 1");
  auto s = [&](int i) -> const C& { return H.s[static_cast<std::size_t>(i - 1)]; };
  std::vector<C> rhs;
  for (int i = n + 1; i <= 2 * n - 1; ++i) rhs.push_back(-s(i));
  rhs.push_back(v);
  std::vector<C> a;
  try {
    a = solve(H.matrix(), rhs);
  } catch (const Error&) {
    throw Error("degenerate Hankel matrix");
  }
  a.push_back(Ring<C>::one(f));
  Poly<C> A(f, a);
  // V = polynomial part of (sum_{i<=n} s_i X^-i) * A.
  std::vector<C> vc(static_cast<std::size_t>(n), Ring<C>::zero(f));
  for (int k = 0; k < n; ++k)
    for (int i = 1; i <= n && k + i <= n; ++i) vc[static_cast<std::size_t>(k)] += s(i) * A.coeff(k + i);
  Poly<C> V(f, vc);
  std::pair<Poly<C>, Poly<C>> uv;
  try {
    uv = bezout_pair(A, V);
  } catch (const Error&) {
    throw Error("internal: reconstructed A and V are not coprime");
  }
  PointedRat<C> out = PointedRat<C>::make(A, uv.second);
  if (!(out.V() == V)) throw Error("internal: reconstruction mismatch");
  return out;
}

template <class C>
std::pair<Matrix<C>, C> f2_iso(const PointedRat<C>& f) {
  if (f.degree() != 2) throw Error("f2_iso requires degree 2");
  return {bezout_form(f), phi_n(f)};
}

template <class C>
PointedRat<C> f2_iso_inv(const Matrix<C>& S, const C& t) {
  if (S.rows() != 2 || S.cols() != 2 || !S.is_symmetric()) throw Error("f2_iso_inv requires a symmetric 2x2 matrix");
  Matrix<C> H;
  try {
    H = inverse(S);
  } catch (const Error&) {
    throw Error("degenerate symmetric matrix");
  }
  return psi_n(Hankel<C>::from_matrix(H), t);
}

}  // namespace p1h
