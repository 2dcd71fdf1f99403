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

// Symmetric bilinear forms over k and k[T]: congruence normal forms,
// stable invariants and the k[T] reduction to constant blocks.

#pragma once

#include <gmpxx.h>

#include <map>
#include <string>
#include <vector>

#include "p1h/matrix.hpp"

namespace p1h {

struct DiagForm {
  std::vector<Scalar> units;
  friend bool operator==(const DiagForm&, const DiagForm&) = default;
};

struct BlockNormalForm {
  std::vector<Scalar> diag;
  int hblocks = 0;
  int rank() const { return static_cast<int>(diag.size()) + 2 * hblocks; }
};

// Column `target` += factor * column `source` (and the matching row move).
struct CongruenceOp {
  int target;
  int source;
  Scalar factor;
};

struct Diagonalization {
  BlockNormalForm form;
  std::vector<int> layout;  // block sizes along the diagonal, each 1 or 2
  std::vector<CongruenceOp> oplog;
  Matrix<Scalar> transform;  // product of the logged transvections
  Matrix<Scalar> normal;     // transform^T S transform
};

// Char != 2 always yields hblocks == 0; char 2 leaves alternating blocks.
Diagonalization diagonalize(const Matrix<Scalar>& S);

Matrix<Scalar> oplog_matrix(Field f, int n, const std::vector<CongruenceOp>& ops);
// P(T)^T S P(T) with every transvection scaled by T: S at T = 0, the normal
// form at T = 1, determinant constant.
Matrix<KPoly> oplog_path(const Matrix<Scalar>& S, const std::vector<CongruenceOp>& ops);

DiagForm canonical(const DiagForm& d);
DiagForm tensor_diag(const DiagForm& a, const DiagForm& b);

// Place of Q: a prime, or the real place when p == 0.
struct Place {
  mpz_class p;
  static Place real() { return {mpz_class(0)}; }
  bool is_real() const { return p == 0; }
};

int hilbert_symbol(const mpq_class& a, const mpq_class& b, const Place& v);

struct WittInvariant {
  Field field;
  int rank = 0;
  Scalar disc;                      // square class of the determinant
  int pos = 0, neg = 0;             // Q only
  std::map<mpz_class, int> hasse;   // Q only: relevant primes -> +-1
  DiagForm rep;                     // diagonal representative, reduced modulo squares

  int hasse_at(const mpz_class& p) const;
  std::string disc_label() const;
  std::string key() const;
};

WittInvariant witt_of_diag(Field f, const DiagForm& d);
WittInvariant stable_invariant(const Matrix<Scalar>& S);
bool stable_equal(const WittInvariant& a, const WittInvariant& b);
WittInvariant orthogonal_sum(const WittInvariant& a, const WittInvariant& b);
WittInvariant tensor_product(const WittInvariant& a, const WittInvariant& b);

// Primitive x over k[T] with deg b(x, x) <= 0.
std::vector<KPoly> kt_short_vector(const Matrix<KPoly>& S);

struct HermiteReduction {
  Matrix<KPoly> transform;  // det 1
  Matrix<KPoly> normal;     // transform^T S transform
  std::vector<int> layout;  // 1: constant unit, 2: [[0, b], [b, a(T)]] with b a constant unit
};

HermiteReduction hermite_reduce(const Matrix<KPoly>& S);

}  // namespace p1h
