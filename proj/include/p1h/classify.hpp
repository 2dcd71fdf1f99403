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

// Homotopy invariants of pointed, unpointed and P^d-valued maps.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "p1h/bezout_hankel.hpp"
#include "p1h/quadform.hpp"
#include "p1h/ratmap.hpp"

namespace p1h {

struct PointedInvariant {
  int n = 0;
  WittInvariant witt;
  Scalar res;

  // square_class(disc) == square_class((-1)^(n(n-1)/2) res)
  bool coherent() const;
  std::string key() const;
};

PointedInvariant pointed_invariant(const RatFun& f);
bool invariant_equal(const PointedInvariant& a, const PointedInvariant& b);
bool pointed_equiv(const RatFun& f, const RatFun& g);
PointedInvariant oplus_invariant(const PointedInvariant& a, const PointedInvariant& b);
PointedInvariant compose_invariant(const PointedInvariant& a, const PointedInvariant& b);

// Canonical representative of a modulo m-th powers.
Scalar power_class(const Scalar& a, int m);

struct UnpointedInvariant {
  int n = 0;
  WittInvariant witt;
  Scalar res_class;  // res modulo (k^x)^(2n)
  std::string key() const;
};

UnpointedInvariant unpointed_invariant(const UnpointedRat& u);
bool unpointed_invariant_equal(const UnpointedInvariant& a, const UnpointedInvariant& b);
bool unpointed_equiv(const UnpointedRat& u, const UnpointedRat& v);

// Solves A c0 + sum B_i c_i = 1 over R[X] for R = k or k[T], with A monic.
// The search runs in R[X]/(A), a free R-module, by column reduction of the
// multiplication maps of the B_i.
template <class C>
std::optional<std::vector<Poly<C>>> unimodular_cofactors(const Poly<C>& A, const std::vector<Poly<C>>& Bs) {
  using P = Poly<C>;
  const Field f = A.field();
  const int n = A.degree();
  const int d = static_cast<int>(Bs.size());
  std::vector<P> out(static_cast<std::size_t>(d) + 1, P(f));
  if (n == 0) {
    out[0] = P::one(f);
    return out;
  }
  const int m = d * n;
  Matrix<C> M(f, n, m), Q = Matrix<C>::identity(f, m);
  for (int i = 0; i < d; ++i) {
    P col = divmod(Bs[static_cast<std::size_t>(i)], A).second;
    for (int j = 0; j < n; ++j) {
      for (int r = 0; r < n; ++r) M(r, i * n + j) = col.coeff(r);
      col = divmod(col.shifted(1), A).second;
    }
  }
  auto colop = [&](int tgt, int src, const C& c) {
    for (int r = 0; r < n; ++r) M(r, tgt) -= c * M(r, src);
    for (int r = 0; r < m; ++r) Q(r, tgt) -= c * Q(r, src);
  };
  auto swap_cols = [&](int a, int b) {
    if (a == b) return;
    for (int r = 0; r < n; ++r) std::swap(M(r, a), M(r, b));
    for (int r = 0; r < m; ++r) std::swap(Q(r, a), Q(r, b));
  };
  for (int r = 0; r < n; ++r) {
    for (;;) {
      int piv = -1, cnt = 0;
      for (int j = r; j < m; ++j) {
        if (Ring<C>::is_zero(M(r, j))) continue;
        ++cnt;
        if (piv < 0 || Ring<C>::size(M(r, j)) < Ring<C>::size(M(r, piv))) piv = j;
      }
      if (piv < 0) return std::nullopt;
      if (cnt == 1) {
        swap_cols(r, piv);
        break;
      }
      for (int j = r; j < m; ++j)
        if (j != piv && !Ring<C>::is_zero(M(r, j))) colop(j, piv, Ring<C>::quotient(M(r, j), M(r, piv)));
    }
    if (!Ring<C>::is_unit(M(r, r))) return std::nullopt;
  }
  std::vector<C> z(static_cast<std::size_t>(n), Ring<C>::zero(f));
  for (int r = 0; r < n; ++r) {
    C acc = r == 0 ? Ring<C>::one(f) : Ring<C>::zero(f);
    for (int k = 0; k < r; ++k) acc -= M(r, k) * z[static_cast<std::size_t>(k)];
    z[static_cast<std::size_t>(r)] = acc * Ring<C>::inverse(M(r, r));
  }
  P sum(f);
  for (int i = 0; i < d; ++i) {
    std::vector<C> c(static_cast<std::size_t>(n), Ring<C>::zero(f));
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) c[static_cast<std::size_t>(j)] += Q(i * n + j, k) * z[static_cast<std::size_t>(k)];
    out[static_cast<std::size_t>(i) + 1] = P(f, c);
    sum = sum + Bs[static_cast<std::size_t>(i)] * out[static_cast<std::size_t>(i) + 1];
  }
  auto [q, rem] = divmod(P::one(f) - sum, A);
  if (!rem.is_zero()) throw Error("internal: cofactor remainder");
  out[0] = q;
  return out;
}

class RejectedPd : public Error {
 public:
  RejectedPd() : Error("(A, B_1, ..., B_d) does not generate the unit ideal: not a point of F_n^d") {}
};

// (A, B_1, ..., B_d) with A monic of degree n, deg B_i < n, generating the
// unit ideal; cofactors c_0..c_d with A c_0 + sum B_i c_i = 1.
template <class C>
struct PdPointT {
  using poly_type = Poly<C>;
  poly_type A;
  std::vector<poly_type> B;
  std::vector<poly_type> cofactors;

  static PdPointT make(poly_type A, std::vector<poly_type> Bs) {
    if (Bs.empty()) throw Error("at least one B_i is required");
    if (!A.is_monic()) throw Error("A must be monic");
    for (const auto& b : Bs)
      if (b.degree() >= A.degree()) throw Error("deg B_i must be below deg A");
    auto c = unimodular_cofactors(A, Bs);
    if (!c) throw RejectedPd();
    return {std::move(A), std::move(Bs), std::move(*c)};
  }
  Field field() const { return A.field(); }
  int degree() const { return A.degree(); }
  int d() const { return static_cast<int>(B.size()); }
  bool check() const {
    if (cofactors.size() != B.size() + 1) return false;
    poly_type s = A * cofactors[0];
    for (std::size_t i = 0; i < B.size(); ++i) s = s + B[i] * cofactors[i + 1];
    return s == poly_type::one(field());
  }
  friend bool operator==(const PdPointT& p, const PdPointT& q) { return p.A == q.A && p.B == q.B; }
};

using PdPoint = PdPointT<Scalar>;
using PdPath = PdPointT<KPoly>;

bool pd_equiv(const PdPoint& p, const PdPoint& q);

}  // namespace p1h
