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

#include "p1h/algebra.hpp"

#include <algorithm>
#include <random>

#include "p1h/number_theory.hpp"

namespace p1h {

KPoly make_monic(const KPoly& a) {
  if (a.is_zero()) return a;
  return a.scaled(a.lead().inverse());
}

Xgcd xgcd(const KPoly& a, const KPoly& b) {
  if (a.is_zero() && b.is_zero()) throw Error("xgcd of two zero polynomials");
  const Field f = a.field();
  KPoly r0 = a, r1 = b, s0 = KPoly::one(f), s1(f), t0(f), t1 = KPoly::one(f);
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    KPoly s2 = s0 - q * s1, t2 = t0 - q * t1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  const Scalar inv = r0.lead().inverse();
  return {r0.scaled(inv), s0.scaled(inv), t0.scaled(inv)};
}

KPoly poly_gcd(const KPoly& a, const KPoly& b) {
  KPoly x = a, y = b;
  while (!y.is_zero()) {
    KPoly r = divmod(x, y).second;
    x = std::move(y);
    y = std::move(r);
  }
  return make_monic(x);
}

KPoly powmod(const KPoly& a, const mpz_class& e, const KPoly& m) {
  KPoly result = divmod(KPoly::one(a.field()), m).second;
  KPoly base = divmod(a, m).second;
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    result = divmod(result * result, m).second;
    if (mpz_tstbit(e.get_mpz_t(), i)) result = divmod(result * base, m).second;
  }
  return result;
}

Scalar square_class(const Scalar& a) {
  if (a.is_zero()) throw Error("square class of zero");
  const Field f = a.field();
  if (f.is_rationals()) return Scalar(f, mpq_class(nt::squarefree_part(a.rational())));
  const std::uint64_t p = f.characteristic();
  if (p == 2) return Scalar::one(f);
  if (nt::powmod(a.residue(), (p - 1) / 2, p) == 1) return Scalar::one(f);
  return Scalar(f, static_cast<long>(nt::smallest_nonresidue(p)));
}

namespace {

bool poly_less(const KPoly& a, const KPoly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (int i = a.degree(); i >= 0; --i)
    if (!(a.coeff(i) == b.coeff(i))) return a.coeff(i) < b.coeff(i);
  return false;
}

void require_prime_field(const KPoly& a) {
  if (!a.field().is_prime_field()) throw Error("factorization supported over prime fields only");
  if (a.is_zero()) throw Error("factorization of the zero polynomial");
}

KPoly pth_root(const KPoly& a) {
  const int p = static_cast<int>(a.field().characteristic());
  std::vector<Scalar> v;
  for (int i = 0; i <= a.degree(); i += p) v.push_back(a.coeff(i));
  return KPoly(a.field(), std::move(v));
}

// Yun/Musser square-free decomposition of a monic polynomial.
void squarefree(const KPoly& f, int mult, std::vector<std::pair<KPoly, int>>& out) {
  if (f.degree() <= 0) return;
  const int p = static_cast<int>(f.field().characteristic());
  KPoly d = derivative(f);
  if (d.is_zero()) {
    squarefree(pth_root(f), mult * p, out);
    return;
  }
  KPoly c = poly_gcd(f, d);
  KPoly w = divmod(f, c).first;
  int i = 1;
  while (w.degree() > 0) {
    KPoly y = poly_gcd(w, c);
    KPoly z = divmod(w, y).first;
    if (z.degree() > 0) out.emplace_back(make_monic(z), i * mult);
    ++i;
    w = y;
    c = divmod(c, y).first;
  }
  if (c.degree() > 0) squarefree(pth_root(c), mult * p, out);
}

void equal_degree(const KPoly& f, int d, std::mt19937_64& rng, std::vector<KPoly>& out) {
  if (f.degree() == d) {
    out.push_back(f);
    return;
  }
  const Field fld = f.field();
  const std::uint64_t p = fld.characteristic();
  mpz_class q;
  mpz_ui_pow_ui(q.get_mpz_t(), p, static_cast<unsigned long>(d));
  for (;;) {
    std::vector<Scalar> coeffs;
    for (int i = 0; i < f.degree(); ++i) coeffs.emplace_back(fld, static_cast<long>(rng() % p));
    KPoly a(fld, std::move(coeffs));
    if (a.degree() <= 0) continue;
    KPoly b;
    if (p == 2) {
      b = KPoly(fld);
      KPoly t = a;
      for (int i = 0; i < d; ++i) {
        b += t;
        t = divmod(t * t, f).second;
      }
    } else {
      b = powmod(a, mpz_class((q - 1) / 2), f) - KPoly::one(fld);
    }
    KPoly g = poly_gcd(b, f);
    if (g.degree() > 0 && g.degree() < f.degree()) {
      equal_degree(g, d, rng, out);
      equal_degree(divmod(f, g).first, d, rng, out);
      return;
    }
  }
}

Factorization normalize(Factorization fs) {
  std::sort(fs.begin(), fs.end(), [](const auto& x, const auto& y) {
    if (!(x.first == y.first)) return poly_less(x.first, y.first);
    return x.second < y.second;
  });
  Factorization out;
  for (auto& [g, m] : fs) {
    if (!out.empty() && out.back().first == g)
      out.back().second += m;
    else
      out.emplace_back(g, m);
  }
  return out;
}

}  // namespace

Factorization factor_fp(const KPoly& a) {
  require_prime_field(a);
  const Field fld = a.field();
  std::mt19937_64 rng(0x5eed);
  std::vector<std::pair<KPoly, int>> sqf;
  squarefree(make_monic(a), 1, sqf);
  Factorization out;
  for (auto& [g0, mult] : sqf) {
    KPoly g = g0;
    KPoly h = KPoly::x(fld);
    const KPoly x = KPoly::x(fld);
    for (int d = 1; g.degree() >= 2 * d; ++d) {
      h = powmod(h, mpz_class(static_cast<unsigned long>(fld.characteristic())), g);
      KPoly c = poly_gcd(h - x, g);
      if (c.degree() > 0) {
        std::vector<KPoly> parts;
        equal_degree(c, d, rng, parts);
        for (auto& part : parts) out.emplace_back(part, mult);
        g = divmod(g, c).first;
        h = divmod(h, g).second;
      }
    }
    if (g.degree() > 0) out.emplace_back(g, mult);
  }
  return normalize(std::move(out));
}

Factorization factor_fp_trial(const KPoly& a) {
  require_prime_field(a);
  const Field fld = a.field();
  const std::uint64_t p = fld.characteristic();
  KPoly rest = make_monic(a);
  Factorization out;
  for (int d = 1; 2 * d <= rest.degree(); ++d) {
    std::vector<std::uint64_t> digits(static_cast<std::size_t>(d), 0);
    for (;;) {
      std::vector<Scalar> coeffs;
      for (auto x : digits) coeffs.emplace_back(fld, static_cast<long>(x));
      coeffs.push_back(Scalar::one(fld));
      KPoly g(fld, std::move(coeffs));
      int m = 0;
      for (;;) {
        auto [q, r] = divmod(rest, g);
        if (!r.is_zero()) break;
        rest = q;
        ++m;
      }
      if (m) out.emplace_back(g, m);
      std::size_t i = 0;
      while (i < digits.size() && ++digits[i] == p) digits[i++] = 0;
      if (i == digits.size()) break;
    }
  }
  if (rest.degree() > 0) out.emplace_back(rest, 1);
  return normalize(std::move(out));
}

}  // namespace p1h
