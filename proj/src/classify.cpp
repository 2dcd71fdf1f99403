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

#include "p1h/classify.hpp"

#include <numeric>

#include "p1h/number_theory.hpp"

namespace p1h {

namespace {

Scalar bezout_sign(Field f, long n) { return (n * (n - 1) / 2) % 2 ? -Scalar::one(f) : Scalar::one(f); }

}  // namespace

bool PointedInvariant::coherent() const {
  if (n == 0) return res.is_one();
  return witt.disc == square_class(bezout_sign(res.field(), n) * res);
}

std::string PointedInvariant::key() const { return "n" + std::to_string(n) + "|" + witt.key() + "|res" + res.str(); }

PointedInvariant pointed_invariant(const RatFun& f) {
  const Field fld = f.field();
  PointedInvariant inv;
  inv.n = f.degree();
  inv.res = f.resultant();
  inv.witt = inv.n == 0 ? witt_of_diag(fld, {}) : stable_invariant(bezout_form(f));
  if (!inv.coherent()) throw Error("internal: incoherent pointed invariant");
  return inv;
}

bool invariant_equal(const PointedInvariant& a, const PointedInvariant& b) {
  return a.n == b.n && a.res == b.res && stable_equal(a.witt, b.witt);
}

bool pointed_equiv(const RatFun& f, const RatFun& g) {
  if (f.field() != g.field()) throw Error("field mismatch");
  return invariant_equal(pointed_invariant(f), pointed_invariant(g));
}

PointedInvariant oplus_invariant(const PointedInvariant& a, const PointedInvariant& b) {
  PointedInvariant out;
  out.n = a.n + b.n;
  out.witt = orthogonal_sum(a.witt, b.witt);
  out.res = a.res * b.res;
  if ((a.n * b.n) % 2) out.res = -out.res;
  return out;
}

// The multiplicative datum is det Bez = (-1)^(n(n-1)/2) res; the law
// (b1, l1) o (b2, l2) = (b1 (x) b2, l1^dim b2 * l2^(dim b1)^2) is stated on it.
PointedInvariant compose_invariant(const PointedInvariant& a, const PointedInvariant& b) {
  const Field f = a.res.field();
  if (f != b.res.field()) throw Error("field mismatch");
  PointedInvariant out;
  out.n = a.n * b.n;
  if (out.n == 0) {
    out.witt = witt_of_diag(f, {});
    out.res = Scalar::one(f);
    return out;
  }
  out.witt = tensor_product(a.witt, b.witt);
  const Scalar da = bezout_sign(f, a.n) * a.res, db = bezout_sign(f, b.n) * b.res;
  out.res = bezout_sign(f, out.n) * da.pow(b.n) * db.pow(static_cast<long>(a.n) * a.n);
  return out;
}

Scalar power_class(const Scalar& a, int m) {
  if (a.is_zero()) throw Error("power_class of zero");
  if (m < 1) throw Error("power_class needs a positive exponent");
  const Field f = a.field();
  if (f.is_rationals()) {
    const mpq_class& q = a.rational();
    mpq_class rep = sgn(q) < 0 ? -1 : 1;
    auto fold = [&](const mpz_class& x, bool denom) {
      for (const auto& [p, e] : nt::factor(abs(x))) {
        int r = ((denom ? -e : e) % m + m) % m;
        mpz_class pe;
        mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(r));
        rep *= pe;
      }
    };
    fold(q.get_num(), false);
    fold(q.get_den(), true);
    return Scalar(f, rep);
  }
  const std::uint64_t p = f.characteristic();
  if (p == 2) return Scalar::one(f);
  const std::uint64_t g = nt::primitive_root(p);
  const std::uint64_t k = nt::discrete_log(a.residue(), g, p);
  const std::uint64_t h = std::gcd(static_cast<std::uint64_t>(m), p - 1);
  return Scalar(f, static_cast<long>(nt::powmod(g, k % h, p)));
}

std::string UnpointedInvariant::key() const {
  return "n" + std::to_string(n) + "|" + witt.key() + "|resclass" + res_class.str();
}

UnpointedInvariant unpointed_invariant(const UnpointedRat& u) {
  const Field f = u.field();
  UnpointedInvariant out;
  out.n = u.degree();
  if (out.n == 0) {
    out.witt = witt_of_diag(f, {});
    out.res_class = Scalar::one(f);
    return out;
  }
  PointedInvariant p = pointed_invariant(normalize_unpointed(u).pointed);
  out.witt = p.witt;
  out.res_class = power_class(p.res, 2 * out.n);
  return out;
}

bool unpointed_invariant_equal(const UnpointedInvariant& a, const UnpointedInvariant& b) {
  return a.n == b.n && a.res_class == b.res_class && stable_equal(a.witt, b.witt);
}

bool unpointed_equiv(const UnpointedRat& u, const UnpointedRat& v) {
  if (u.field() != v.field()) throw Error("field mismatch");
  return unpointed_invariant_equal(unpointed_invariant(u), unpointed_invariant(v));
}

bool pd_equiv(const PdPoint& p, const PdPoint& q) {
  if (p.field() != q.field()) throw Error("field mismatch");
  if (p.d() < 2 || q.d() < 2) throw Error("pd_equiv requires d >= 2");
  if (p.d() != q.d()) throw Error("pd_equiv requires equal d");
  return p.degree() == q.degree();
}

}  // namespace p1h
