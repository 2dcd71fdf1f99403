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

// Gcds, resultants, Bezout relations, Laurent expansions, square classes
// and factorization over prime fields.

#pragma once

#include <gmpxx.h>

#include <utility>
#include <vector>

#include "p1h/matrix.hpp"

namespace p1h {

struct Xgcd {
  KPoly g, s, t;  // a*s + b*t = g, g monic
};

Xgcd xgcd(const KPoly& a, const KPoly& b);
KPoly poly_gcd(const KPoly& a, const KPoly& b);
KPoly make_monic(const KPoly& a);
KPoly powmod(const KPoly& a, const mpz_class& e, const KPoly& m);

// 2n x 2n Sylvester matrix with a and b read at formal degree n. Rows 0..n-1
// hold shifts of a, rows n..2n-1 shifts of b, highest coefficient first.
template <class C>
Matrix<C> sylvester_matrix(const Poly<C>& a, const Poly<C>& b, int n) {
  if (n < a.degree() || n < b.degree()) throw Error("formal degree below actual degree");
  const Field f = a.field();
  Matrix<C> s(f, 2 * n, 2 * n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k <= n; ++k) {
      s(i, i + k) = a.coeff(n - k);
      s(n + i, i + k) = b.coeff(n - k);
    }
  return s;
}

template <class C>
C resultant_nn(const Poly<C>& a, const Poly<C>& b, int n) {
  if (n < 0) throw Error("negative formal degree");
  return determinant(sylvester_matrix(a, b, n));
}

// The unique (U, V) with A*U + B*V = 1, deg U <= n-2, deg V <= n-1.
template <class C>
std::pair<Poly<C>, Poly<C>> bezout_pair(const Poly<C>& A, const Poly<C>& B) {
  const Field f = A.field();
  const int n = A.degree();
  if (!A.is_monic()) throw Error("bezout_pair: A must be monic");
  if (B.degree() >= n) throw Error("bezout_pair: deg B must be below deg A");
  if (n == 0) return {Poly<C>::one(f), Poly<C>(f)};
  if constexpr (std::is_same_v<C, Scalar>) {
    if (B.is_zero()) throw Error("not coprime / not a point of F_n");
    Xgcd r = xgcd(A, B);
    if (r.g.degree() != 0) throw Error("not coprime / not a point of F_n");
    // Reduce to the minimal solution: V mod A, then U from the relation.
    auto [q, V] = divmod(r.t, A);
    Poly<C> U = r.s + q * B;
    return {U, V};
  } else {
    // Unknowns: U_0..U_{n-2}, V_0..V_{n-1}; equations: X^0..X^{2n-2}.
    const int m = 2 * n - 1;
    Matrix<C> M(f, m, m);
    for (int j = 0; j < n - 1; ++j)
      for (int k = 0; k <= n; ++k) M(j + k, j) = A.coeff(k);
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) M(j + k, n - 1 + j) = B.coeff(k);
    std::vector<C> rhs(static_cast<std::size_t>(m), Ring<C>::zero(f));
    rhs[0] = Ring<C>::one(f);
    std::vector<C> x;
    try {
      x = solve(M, rhs);
    } catch (const Error&) {
      throw Error("not coprime / not a point of F_n");
    }
    std::vector<C> u(x.begin(), x.begin() + (n - 1)), v(x.begin() + (n - 1), x.end());
    return {Poly<C>(f, std::move(u)), Poly<C>(f, std::move(v))};
  }
}

// s_1..s_m with V/A = sum s_i X^-i + O(X^-(m+1)).
template <class C>
std::vector<C> laurent_expand(const Poly<C>& V, const Poly<C>& A, int m) {
  const Field f = A.field();
  const int n = A.degree();
  if (V.degree() >= n) throw Error("laurent_expand: deg V must be below deg A");
  const C inv = Ring<C>::inverse(A.lead());
  std::vector<C> r(static_cast<std::size_t>(n), Ring<C>::zero(f));
  for (int i = 0; i <= V.degree(); ++i) r[static_cast<std::size_t>(i)] = V.coeffs()[static_cast<std::size_t>(i)];
  std::vector<C> s;
  s.reserve(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    // r <- X*r, then subtract the A-multiple that kills X^n.
    C top = n ? r[static_cast<std::size_t>(n - 1)] : Ring<C>::zero(f);
    for (int k = n - 1; k > 0; --k) r[static_cast<std::size_t>(k)] = r[static_cast<std::size_t>(k - 1)];
    if (n) r[0] = Ring<C>::zero(f);
    C si = top * inv;
    for (int k = 0; k < n; ++k) r[static_cast<std::size_t>(k)] -= si * A.coeff(k);
    s.push_back(si);
  }
  return s;
}

Scalar square_class(const Scalar& a);

using Factorization = std::vector<std::pair<KPoly, int>>;

// Monic irreducible factors with multiplicities, sorted; leading unit dropped.
Factorization factor_fp(const KPoly& a);
// Same contract, by exhaustive trial division with monic polynomials.
Factorization factor_fp_trial(const KPoly& a);

}  // namespace p1h
