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

#include "p1h/number_theory.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>
#include <vector>

namespace p1h::nt {

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

namespace {

mpz_class rho(const mpz_class& n, unsigned long seed) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  std::mt19937_64 rng(seed);
  for (;;) {
    mpz_class y = rng() % 1000000 + 2, c = rng() % 1000000 + 1, g = 1, q = 1, x, ys;
    const unsigned long m = 128;
    unsigned long r = 1;
    auto f = [&](const mpz_class& v) {
      mpz_class w = v * v + c;
      return mpz_class(w % n);
    };
    do {
      x = y;
      for (unsigned long i = 0; i < r; ++i) y = f(y);
      unsigned long k = 0;
      do {
        ys = y;
        for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = (q * abs(x - y)) % n;
        }
        mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        k += m;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        mpz_class d = abs(x - ys);
        mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_into(mpz_class n, std::map<mpz_class, int>& out, unsigned long& seed) {
  if (n == 1) return;
  if (mpz_probab_prime_p(n.get_mpz_t(), 30) > 0) {
    ++out[n];
    return;
  }
  mpz_class d = rho(n, seed++);
  factor_into(d, out, seed);
  factor_into(mpz_class(n / d), out, seed);
}

}  // namespace

std::map<mpz_class, int> factor(const mpz_class& n0) {
  if (n0 == 0) throw std::invalid_argument("factor: zero");
  mpz_class n = abs(n0);
  std::map<mpz_class, int> out;
  for (unsigned long p = 2; p < 10000 && p * p <= n; p += (p == 2 ? 1 : 2)) {
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      ++out[mpz_class(p)];
      n /= p;
    }
  }
  unsigned long seed = 1;
  factor_into(n, out, seed);
  return out;
}

mpz_class squarefree_part(const mpq_class& a) {
  if (a == 0) throw std::invalid_argument("squarefree_part: zero");
  mpz_class prod = a.get_num() * a.get_den();
  mpz_class out = 1;
  for (const auto& [p, e] : factor(prod))
    if (e % 2) out *= p;
  return sgn(a) < 0 ? mpz_class(-out) : out;
}

int valuation(const mpq_class& a, const mpz_class& p) {
  int v = 0;
  mpz_class x = a.get_num();
  while (x != 0 && mpz_divisible_p(x.get_mpz_t(), p.get_mpz_t())) {
    x /= p;
    ++v;
  }
  x = a.get_den();
  while (mpz_divisible_p(x.get_mpz_t(), p.get_mpz_t())) {
    x /= p;
    --v;
  }
  return v;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

std::uint64_t primitive_root(std::uint64_t p) {
  if (p == 2) return 1;
  std::vector<std::uint64_t> qs;
  std::uint64_t m = p - 1;
  for (std::uint64_t d = 2; d * d <= m; ++d)
    if (m % d == 0) {
      qs.push_back(d);
      while (m % d == 0) m /= d;
    }
  if (m > 1) qs.push_back(m);
  for (std::uint64_t g = 2;; ++g) {
    bool ok = true;
    for (auto q : qs)
      if (powmod(g, (p - 1) / q, p) == 1) ok = false;
    if (ok) return g;
  }
}

std::uint64_t discrete_log(std::uint64_t a, std::uint64_t g, std::uint64_t p) {
  std::uint64_t x = 1 % p;
  for (std::uint64_t k = 0; k < p; ++k) {
    if (x == a % p) return k;
    x = mulmod(x, g, p);
  }
  throw std::invalid_argument("discrete_log: no solution");
}

std::uint64_t smallest_nonresidue(std::uint64_t p) {
  for (std::uint64_t a = 2; a < p; ++a)
    if (powmod(a, (p - 1) / 2, p) != 1) return a;
  throw std::invalid_argument("smallest_nonresidue: p must be an odd prime");
}

}  // namespace p1h::nt
