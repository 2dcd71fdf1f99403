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

// Integer helpers: factorization, square-free parts, residue symbols.

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>

namespace p1h::nt {

bool is_prime_u64(std::uint64_t n);

// Prime factorization of |n| (n != 0). Trial division, then Pollard-Brent.
std::map<mpz_class, int> factor(const mpz_class& n);

// Signed square-free part of a nonzero rational: sign * prod p^(v_p mod 2).
mpz_class squarefree_part(const mpq_class& a);

// p-adic valuation of a nonzero rational.
int valuation(const mpq_class& a, const mpz_class& p);

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m);

// Smallest generator of (Z/p)^x.
std::uint64_t primitive_root(std::uint64_t p);
// Exponent k with g^k = a mod p (brute force, desk scale).
std::uint64_t discrete_log(std::uint64_t a, std::uint64_t g, std::uint64_t p);

// Smallest quadratic non-residue mod an odd prime.
std::uint64_t smallest_nonresidue(std::uint64_t p);

}  // namespace p1h::nt
