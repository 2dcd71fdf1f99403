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

// Shared generators for the unit and acceptance tests.

#pragma once

#include <random>
#include <vector>

#include "p1h/ratmap.hpp"

namespace p1h::testing {

inline KPoly poly(Field f, std::vector<long> c) {
  std::vector<Scalar> v;
  for (long x : c) v.emplace_back(f, x);
  return KPoly(f, v);
}

inline KPoly tpoly(Field f, std::vector<long> c) { return poly(f, std::move(c)); }

inline Scalar rnd_scalar(Field f, std::mt19937_64& rng, bool nonzero = false, long height = 5) {
  for (;;) {
    Scalar s = f.is_rationals()
                   ? Scalar(f, mpq_class(static_cast<long>(rng() % static_cast<unsigned long>(2 * height + 1)) - height,
                                         static_cast<long>(rng() % 3 + 1)))
                   : Scalar(f, static_cast<long>(rng() % f.characteristic()));
    if (!nonzero || !s.is_zero()) return s;
  }
}

inline KPoly rnd_poly(Field f, int deg, std::mt19937_64& rng, bool monic = false, long height = 5) {
  std::vector<Scalar> v;
  for (int i = 0; i < deg; ++i) v.push_back(rnd_scalar(f, rng, false, height));
  v.push_back(monic ? Scalar::one(f) : rnd_scalar(f, rng, true, height));
  return KPoly(f, v);
}

inline RatFun rnd_ratfun(Field f, int n, std::mt19937_64& rng, long height = 5) {
  for (;;) {
    KPoly A = rnd_poly(f, n, rng, true, height);
    KPoly B = n == 0 ? KPoly(f) : rnd_poly(f, static_cast<int>(rng() % static_cast<unsigned long>(n)), rng, false, height);
    try {
      return n == 0 ? RatFun::identity(f) : RatFun::make(A, B);
    } catch (const RejectedPoint&) {
    }
  }
}

// Every point of F_n(F_q).
inline std::vector<RatFun> all_ratfuns(Field f, int n) {
  const long q = static_cast<long>(f.characteristic());
  std::vector<RatFun> out;
  if (n == 0) return {RatFun::identity(f)};
  long total = 1;
  for (int i = 0; i < 2 * n; ++i) total *= q;
  for (long code = 0; code < total; ++code) {
    std::vector<Scalar> a, b;
    long c = code;
    for (int i = 0; i < n; ++i, c /= q) a.emplace_back(f, c % q);
    for (int i = 0; i < n; ++i, c /= q) b.emplace_back(f, c % q);
    a.push_back(Scalar::one(f));
    KPoly B(f, b);
    if (B.is_zero()) continue;
    try {
      out.push_back(RatFun::make(KPoly(f, a), B));
    } catch (const RejectedPoint&) {
    }
  }
  return out;
}

inline Matrix<Scalar> random_sym(Field f, int n, std::mt19937_64& rng) {
  for (;;) {
    Matrix<Scalar> S(f, n, n);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) S(i, j) = S(j, i) = rnd_scalar(f, rng);
    if (!determinant(S).is_zero()) return S;
  }
}

// Random product of T-dependent transvections.
inline Matrix<KPoly> random_sl_path(Field f, int n, int steps, std::mt19937_64& rng) {
  Matrix<KPoly> P = Matrix<KPoly>::identity(f, n);
  if (n < 2) return P;
  for (int s = 0; s < steps; ++s) {
    int i = static_cast<int>(rng() % static_cast<unsigned long>(n));
    int j = static_cast<int>(rng() % static_cast<unsigned long>(n - 1));
    if (j >= i) ++j;
    KPoly c = rnd_poly(f, static_cast<int>(rng() % 2), rng, false, 2);
    for (int r = 0; r < n; ++r) P(r, i) += c * P(r, j);
  }
  return P;
}

}  // namespace p1h::testing
