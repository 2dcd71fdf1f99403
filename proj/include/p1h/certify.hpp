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

// Explicit homotopy certificates and their verifier.

#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "p1h/classify.hpp"

namespace p1h {

enum class CertKind { Pointed, Unpointed, Pd };

std::string kind_name(CertKind k);
CertKind parse_kind(const std::string& s);

// One k[T]-point. Pointed: B has one entry. Unpointed: one entry, and A, B
// are read at formal degree n. Pd: d entries and optional cofactors.
struct CertStep {
  int n = 0;
  KTPoly A;
  std::vector<KTPoly> B;
  std::vector<KTPoly> cofactors;
};

struct CertEnd {
  int n = 0;
  KPoly A;
  std::vector<KPoly> B;
};

struct Certificate {
  CertKind kind = CertKind::Pointed;
  Field field;
  std::vector<CertStep> steps;
  CertEnd source, target;
};

struct Verdict {
  bool ok = false;
  std::string diagnostic;
};

Verdict verify(const Certificate& c);

CertStep to_step(const RatPath& F);
CertStep to_step(const UnpointedPath& p);
CertStep to_step(const PdPath& p);
CertEnd to_end(const RatFun& f);
CertEnd to_end(const UnpointedRat& u);
CertEnd to_end(const PdPoint& p);

Certificate reverse(const Certificate& c);
// c1 followed by c2; the target of c1 must be the source of c2.
Certificate concat(const Certificate& c1, const Certificate& c2);
// Pointed certificate c with every step summed with constant paths: left + c + right.
Certificate embed(const RatFun& left, const Certificate& c, const RatFun& right);

// [u_1, ..., u_n] = X/u_1 + ... + X/u_n.
RatFun unit_sum(Field f, const std::vector<Scalar>& units);

struct NormalFormCert {
  std::vector<Scalar> units;
  Certificate cert;  // f -> unit_sum(units)
};

NormalFormCert normal_form_cert(const RatFun& f);

// <a, b> at positions (pos, pos+1) becomes <c, d> via P^T diag(a, b) P = diag(c, d), det P = 1.
struct DiagMove {
  int pos = 0;
  Scalar a, b, c, d;
  Matrix<Scalar> P;
};

enum class SearchStatus { Found, NotEquivalent, Exhausted };

struct DiagChain {
  SearchStatus status = SearchStatus::Found;
  std::vector<DiagMove> moves;
};

struct ChainOptions {
  int budget = 64;   // moves
  long height = 50;  // coordinate height for representation search over Q
};

DiagChain diag_chain(const std::vector<Scalar>& us, const std::vector<Scalar>& vs, const ChainOptions& opt = {});
std::vector<Scalar> apply_moves(std::vector<Scalar> us, const std::vector<DiagMove>& moves);

// Elementary factors of an SL2 matrix, leftmost first.
std::vector<Elementary> sl2_factors(const Matrix<Scalar>& P);
Matrix<KPoly> elementary_product(Field f, const std::vector<Elementary>& factors);

Certificate lift_chain_to_cert(Field f, const std::vector<Scalar>& us, const std::vector<DiagMove>& moves);

struct ConnectResult {
  SearchStatus status = SearchStatus::Found;
  Certificate cert;
  std::string reason;  // differing invariant components when not equivalent
};

ConnectResult connect(const RatFun& f, const RatFun& g, const ChainOptions& opt = {});

ConnectResult unpointed_connect(const UnpointedRat& u, const UnpointedRat& v, const ChainOptions& opt = {});

Certificate pd_cert(const PdPoint& p);
PdPoint pd_base_point(Field f, int n, int d);

// Paths in S_n(k[T]) joining two symmetric matrices.
struct FormChain {
  std::vector<Matrix<KPoly>> steps;
  Matrix<Scalar> source, target;
};

Verdict verify_forms(const FormChain& c);
std::optional<FormChain> connect_forms(const Matrix<Scalar>& S1, const Matrix<Scalar>& S2, const ChainOptions& opt = {});

}  // namespace p1h
