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

// Exhaustive ground truth over small prime fields: enumerate points and
// bounded T-degree paths, then compare path components with invariant fibers.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "p1h/certify.hpp"

namespace p1h::oracle {

enum class Target { RatFun, SymMat, Pd, Unpointed };

std::string target_name(Target t);
Target parse_target(const std::string& s);

struct EnumSpec {
  unsigned q = 2;
  int n = 1;
  int D = -1;  // negative: n for RatFun, 1 otherwise
  Target target = Target::RatFun;
  int d = 2;  // Pd only
  int workers = 1;

  int degree_bound() const { return D >= 0 ? D : (target == Target::RatFun ? n : 1); }
  // Coordinates of a point in F_q.
  int slots() const;
  std::uint64_t point_space() const;
  std::uint64_t candidate_count() const;
};

inline constexpr std::uint64_t kMaxCandidates = 1'000'000'000ULL;

// Throws Error if the enumeration is out of range or too large.
void validate(const EnumSpec& s);

// Mixed-radix indices of all valid points, canonical representatives for
// unpointed targets.
std::vector<std::uint64_t> enumerate_points(const EnumSpec& s);
std::string point_text(const EnumSpec& s, std::uint64_t index);
std::string point_invariant(const EnumSpec& s, std::uint64_t index);

RatFun ratfun_at(const EnumSpec& s, std::uint64_t index);
UnpointedRat unpointed_at(const EnumSpec& s, std::uint64_t index);
Matrix<Scalar> symmat_at(const EnumSpec& s, std::uint64_t index);
PdPoint pd_at(const EnumSpec& s, std::uint64_t index);

struct Component {
  std::uint64_t size = 0;
  std::uint64_t representative = 0;
  std::string invariant;
};

struct ComponentReport {
  std::uint64_t points = 0;
  std::uint64_t candidates = 0;
  std::uint64_t edges = 0;
  std::uint64_t unsound_edges = 0;  // edges whose endpoints have different invariants
  std::vector<Component> components;  // sorted by representative
  std::vector<std::uint64_t> point_index;  // valid points, increasing
  std::vector<std::uint32_t> label;        // component of point_index[i]
  std::size_t fibers = 0;
  bool invariant_constant = true;  // each component lies in one fiber
  bool agreement = false;          // components equal fibers without bridging
};

ComponentReport components(const EnumSpec& s);

struct Bridge {
  std::uint64_t from = 0, to = 0;
  bool verified = false;
  std::size_t steps = 0;
};

struct CrossCheck {
  ComponentReport raw;
  std::vector<Bridge> bridges;
  std::size_t final_components = 0;
  std::vector<std::uint32_t> final_label;  // merged component of raw.point_index[i]
  bool agreement = false;
  std::string verdict;
};

CrossCheck cross_check(const EnumSpec& s, const ChainOptions& opt = {});

}  // namespace p1h::oracle
