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

// Pointed and unpointed rational functions, their sum, continued
// fractions, composition and translation.

#pragma once

#include <string>
#include <vector>

#include "p1h/algebra.hpp"

namespace p1h {

class RejectedPoint : public Error {
 public:
  explicit RejectedPoint(Scalar res)
      : Error("resultant " + res.str() + " is not a unit: not a point of F_n"), res_(std::move(res)) {}
  const Scalar& resultant() const noexcept { return res_; }

 private:
  Scalar res_;
};

class RejectedPath : public Error {
 public:
  explicit RejectedPath(KPoly res)
      : Error("resultant " + to_string(res, 'T') + " is not a nonzero constant: not a point of F_n(k[T])"),
        res_(std::move(res)) {}
  const KPoly& resultant() const noexcept { return res_; }

 private:
  KPoly res_;
};

// A/B with A monic of degree n, deg B < n and unit resultant, together with
// the Bezout pair A*U + B*V = 1. C = Scalar gives points over k, C = KPoly
// points over k[T] (homotopies).
template <class C>
class PointedRat {
 public:
  using poly_type = Poly<C>;

  static PointedRat make(poly_type A, poly_type B) {
    const Field f = A.field();
    if (!A.is_monic()) throw Error("numerator must be monic");
    const int n = A.degree();
    if (B.degree() >= n) throw Error("deg B must be below deg A");
    C res = resultant_nn(A, B, n);
    if constexpr (std::is_same_v<C, Scalar>) {
      if (res.is_zero()) throw RejectedPoint(res);
    } else {
      if (res.degree() != 0) throw RejectedPath(res);
    }
    auto [U, V] = bezout_pair(A, B);
    (void)f;
    return PointedRat(std::move(A), std::move(B), std::move(U), std::move(V), std::move(res));
  }

  static PointedRat identity(Field f) {
    return PointedRat(poly_type::one(f), poly_type(f), poly_type::one(f), poly_type(f), Ring<C>::one(f));
  }

  // No validation: the caller guarantees A*U + B*V = 1 and res = res(A, B).
  static PointedRat trusted(poly_type A, poly_type B, poly_type U, poly_type V, C res) {
    return PointedRat(std::move(A), std::move(B), std::move(U), std::move(V), std::move(res));
  }

  Field field() const noexcept { return A_.field(); }
  int degree() const noexcept { return A_.degree(); }
  const poly_type& A() const noexcept { return A_; }
  const poly_type& B() const noexcept { return B_; }
  const poly_type& U() const noexcept { return U_; }
  const poly_type& V() const noexcept { return V_; }
  const C& resultant() const noexcept { return res_; }

  friend bool operator==(const PointedRat& f, const PointedRat& g) { return f.A_ == g.A_ && f.B_ == g.B_; }

 private:
  PointedRat(poly_type A, poly_type B, poly_type U, poly_type V, C res)
      : A_(std::move(A)), B_(std::move(B)), U_(std::move(U)), V_(std::move(V)), res_(std::move(res)) {}

  poly_type A_, B_, U_, V_;
  C res_;
};

using RatFun = PointedRat<Scalar>;
using RatPath = PointedRat<KPoly>;

// [A3 -V3; B3 U3] = [A1 -V1; B1 U1] [A2 -V2; B2 U2].
template <class C>
PointedRat<C> oplus(const PointedRat<C>& f, const PointedRat<C>& g) {
  using P = Poly<C>;
  P A = f.A() * g.A() - f.V() * g.B();
  P V = f.A() * g.V() + f.V() * g.U();
  P B = f.B() * g.A() + f.U() * g.B();
  P U = f.U() * g.U() - f.B() * g.V();
  C res = f.resultant() * g.resultant();
  if ((f.degree() * g.degree()) % 2) res = -res;
  return PointedRat<C>::trusted(std::move(A), std::move(B), std::move(U), std::move(V), std::move(res));
}

// (A + hB)/B, Bezout pair (U, V - hU).
template <class C>
PointedRat<C> ga_act(const C& h, const PointedRat<C>& f) {
  const Field fld = f.field();
  const Poly<C> hp = Poly<C>::constant(fld, h);
  return PointedRat<C>::trusted(f.A() + hp * f.B(), f.B(), f.U(), f.V() - hp * f.U(), f.resultant());
}

// Minus the X^(n-1) coefficient of V1 where A*U1 + B*V1 = X^(2n-1).
template <class C>
C phi_n(const PointedRat<C>& f) {
  const int n = f.degree();
  if (n < 1) throw Error("phi_n requires degree at least 1");
  const Field fld = f.field();
  const int m = 2 * n;
  Matrix<C> M(fld, m, m);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k <= n; ++k) M(j + k, j) = f.A().coeff(k);
    for (int k = 0; k < n; ++k) M(j + k, n + j) = f.B().coeff(k);
  }
  std::vector<C> rhs(static_cast<std::size_t>(m), Ring<C>::zero(fld));
  rhs.back() = Ring<C>::one(fld);
  std::vector<C> x = solve(M, rhs);
  return -x.back();
}

// The same coordinate as minus s_{2n} of the expansion of V/A.
template <class C>
C phi_n_laurent(const PointedRat<C>& f) {
  const int n = f.degree();
  if (n < 1) throw Error("phi_n requires degree at least 1");
  return -laurent_expand(f.V(), f.A(), 2 * n).back();
}

struct CFTerm {
  KPoly P;   // monic, positive degree
  Scalar b;  // unit
  friend bool operator==(const CFTerm&, const CFTerm&) = default;
};
using CFExpansion = std::vector<CFTerm>;

CFExpansion cf_expand(const RatFun& f);
RatFun cf_assemble(const CFExpansion& terms);

// f o g for pointed maps of degrees m, n >= 1.
RatFun compose(const RatFun& f, const RatFun& g);

RatFun eval_path(const RatPath& F, const Scalar& t);
RatPath constant_path(const RatFun& f);
// T := p(T) in every coefficient; p = 1 - T reverses a path.
RatPath reparametrize(const RatPath& F, const KPoly& p);
RatPath reverse_path(const RatPath& F);

// Degree-n map of P^1 given by a homogeneous pair, scaled so that the first
// nonzero entry of (a_n..a_0, b_n..b_0) equals 1.
class UnpointedRat {
 public:
  static UnpointedRat make(KPoly A, KPoly B, int n);
  static UnpointedRat from_pointed(const RatFun& f);

  Field field() const noexcept { return A_.field(); }
  int degree() const noexcept { return n_; }
  const KPoly& A() const noexcept { return A_; }
  const KPoly& B() const noexcept { return B_; }
  bool is_pointed() const { return B_.degree() < n_ && A_.degree() == n_; }
  std::vector<Scalar> coordinates() const;

  friend bool operator==(const UnpointedRat& u, const UnpointedRat& v) {
    return u.n_ == v.n_ && u.A_ == v.A_ && u.B_ == v.B_;
  }

 private:
  UnpointedRat(KPoly A, KPoly B, int n) : A_(std::move(A)), B_(std::move(B)), n_(n) {}
  KPoly A_, B_;
  int n_;
};

// [[1, x], [0, 1]] when upper, [[1, 0], [x, 1]] otherwise.
struct Elementary {
  bool upper;
  Scalar x;
};

// A path (A(T), B(T)) of homogeneous pairs of formal degree n.
struct UnpointedPath {
  int n = 0;
  KTPoly A, B;
};

// Scaling-insensitive endpoint of a path, or of a pair of polynomials.
UnpointedRat eval_unpointed(const UnpointedPath& p, const Scalar& t);
UnpointedPath constant_unpointed_path(const UnpointedRat& u);
UnpointedPath unpointed_from_pointed(const RatPath& F);

// (A(T), B(T)) -> M(T) (A, B) where M(T) is the product of elementary
// factors with entries scaled by T.
UnpointedPath elementary_path(const KPoly& A, const KPoly& B, int n, const std::vector<Elementary>& factors);

struct NormalizedUnpointed {
  RatFun pointed;
  std::vector<Elementary> alpha;  // alpha_1 sends infinity to u(infinity)
  UnpointedPath path;             // from u (T = 0) to the pointed map (T = 1)
};

NormalizedUnpointed normalize_unpointed(const UnpointedRat& u);

}  // namespace p1h
