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

#include "p1h/ratmap.hpp"

namespace p1h {

CFExpansion cf_expand(const RatFun& f) {
  if (f.degree() < 1) throw Error("cf_expand requires degree at least 1");
  CFExpansion out;
  KPoly A = f.A(), B = f.B();
  for (;;) {
    const Scalar b0 = B.lead();
    if (B.degree() == 0) {
      out.push_back({A, b0});
      return out;
    }
    KPoly A1 = B.scaled(b0.inverse());
    auto [P, R] = divmod(A, A1);
    out.push_back({P, b0});
    B = R.scaled(-b0);
    A = std::move(A1);
  }
}

RatFun cf_assemble(const CFExpansion& terms) {
  if (terms.empty()) throw Error("empty continued fraction");
  RatFun acc = RatFun::make(terms[0].P, KPoly::constant(terms[0].b.field(), terms[0].b));
  for (std::size_t i = 1; i < terms.size(); ++i)
    acc = oplus(acc, RatFun::make(terms[i].P, KPoly::constant(terms[i].b.field(), terms[i].b)));
  return acc;
}

RatFun compose(const RatFun& f, const RatFun& g) {
  const int m = f.degree();
  if (m < 1 || g.degree() < 1) throw Error("compose requires positive degrees");
  const Field fld = f.field();
  std::vector<KPoly> Cp{KPoly::one(fld)}, Dp{KPoly::one(fld)};
  for (int i = 1; i <= m; ++i) {
    Cp.push_back(Cp.back() * g.A());
    Dp.push_back(Dp.back() * g.B());
  }
  KPoly A(fld), B(fld);
  for (int i = 0; i <= m; ++i) {
    KPoly term = Cp[static_cast<std::size_t>(i)] * Dp[static_cast<std::size_t>(m - i)];
    A += term.scaled(f.A().coeff(i));
    B += term.scaled(f.B().coeff(i));
  }
  return RatFun::make(A, B);
}

RatFun eval_path(const RatPath& F, const Scalar& t) {
  auto ev = [&](const KTPoly& p) { return eval_t(p, t); };
  return RatFun::trusted(ev(F.A()), ev(F.B()), ev(F.U()), ev(F.V()), F.resultant().coeff(0));
}

RatPath constant_path(const RatFun& f) {
  return RatPath::trusted(lift_t(f.A()), lift_t(f.B()), lift_t(f.U()), lift_t(f.V()),
                          KPoly::constant(f.field(), f.resultant()));
}

RatPath reparametrize(const RatPath& F, const KPoly& p) {
  auto sub = [&](const KTPoly& q) { return map_coeffs(q, [&](const KPoly& c) { return substitute(c, p); }); };
  return RatPath::trusted(sub(F.A()), sub(F.B()), sub(F.U()), sub(F.V()), F.resultant());
}

RatPath reverse_path(const RatPath& F) {
  const Field f = F.field();
  return reparametrize(F, KPoly(f, {Scalar::one(f), -Scalar::one(f)}));
}

UnpointedRat UnpointedRat::make(KPoly A, KPoly B, int n) {
  const Field f = A.field();
  if (n < 0) throw Error("negative degree");
  if (A.degree() > n || B.degree() > n) throw Error("polynomial degree exceeds the formal degree");
  if (A.is_zero() && B.is_zero()) throw Error("zero homogeneous vector");
  if (n > 0) {
    Scalar res = resultant_nn(A, B, n);
    if (res.is_zero()) throw RejectedPoint(res);
  }
  Scalar first = A.degree() == n ? A.lead() : Scalar::zero(f);
  for (int i = n; first.is_zero() && i >= 0; --i) first = A.coeff(i);
  for (int i = n; first.is_zero() && i >= 0; --i) first = B.coeff(i);
  const Scalar inv = first.inverse();
  return UnpointedRat(A.scaled(inv), B.scaled(inv), n);
}

UnpointedRat UnpointedRat::from_pointed(const RatFun& f) { return make(f.A(), f.B(), f.degree()); }

std::vector<Scalar> UnpointedRat::coordinates() const {
  std::vector<Scalar> v;
  for (int i = n_; i >= 0; --i) v.push_back(A_.coeff(i));
  for (int i = n_; i >= 0; --i) v.push_back(B_.coeff(i));
  return v;
}

UnpointedRat eval_unpointed(const UnpointedPath& p, const Scalar& t) {
  return UnpointedRat::make(eval_t(p.A, t), eval_t(p.B, t), p.n);
}

UnpointedPath constant_unpointed_path(const UnpointedRat& u) { return {u.degree(), lift_t(u.A()), lift_t(u.B())}; }

UnpointedPath unpointed_from_pointed(const RatPath& F) { return {F.degree(), F.A(), F.B()}; }

UnpointedPath elementary_path(const KPoly& A, const KPoly& B, int n, const std::vector<Elementary>& factors) {
  const Field f = A.field();
  KTPoly a = lift_t(A), b = lift_t(B);
  for (auto it = factors.rbegin(); it != factors.rend(); ++it) {
    const KTPoly xt = KTPoly::constant(f, KPoly(f, {Scalar::zero(f), it->x}));
    if (it->upper)
      a = a + xt * b;
    else
      b = b + xt * a;
  }
  return {n, a, b};
}

NormalizedUnpointed normalize_unpointed(const UnpointedRat& u) {
  const Field f = u.field();
  const int n = u.degree();
  const Scalar an = u.A().coeff(n), bn = u.B().coeff(n);
  std::vector<Elementary> alpha;
  if (!bn.is_zero()) {
    if (!an.is_zero())
      alpha = {{false, bn / an}};
    else
      alpha = {{true, -Scalar::one(f)}, {false, Scalar::one(f)}};
  }
  // alpha(T)^-1 = product of the inverted factors in reverse order.
  std::vector<Elementary> inv;
  for (auto it = alpha.rbegin(); it != alpha.rend(); ++it) inv.push_back({it->upper, -it->x});
  UnpointedPath path = elementary_path(u.A(), u.B(), n, inv);
  KPoly A1 = eval_t(path.A, Scalar::one(f)), B1 = eval_t(path.B, Scalar::one(f));
  const Scalar lc = A1.coeff(n);
  if (n > 0 && (lc.is_zero() || B1.degree() >= n)) throw Error("internal: normalization did not reach a pointed map");
  const Scalar s = lc.inverse();
  RatFun g = n == 0 ? RatFun::identity(f) : RatFun::make(A1.scaled(s), B1.scaled(s));
  return {g, alpha, path};
}

}  // namespace p1h
