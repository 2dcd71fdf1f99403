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

#include "p1h/poly.hpp"

#include <algorithm>

namespace p1h {

KPoly eval_t(const KTPoly& p, const Scalar& t) {
  std::vector<Scalar> v;
  v.reserve(p.coeffs().size());
  for (const auto& c : p.coeffs()) v.push_back(evaluate(c, t));
  return KPoly(p.field(), std::move(v));
}

KTPoly lift_t(const KPoly& p) {
  std::vector<KPoly> v;
  v.reserve(p.coeffs().size());
  for (const auto& c : p.coeffs()) v.push_back(KPoly::constant(p.field(), c));
  return KTPoly(p.field(), std::move(v));
}

int t_degree(const KTPoly& p) {
  int d = -1;
  for (const auto& c : p.coeffs()) d = std::max(d, c.degree());
  return d;
}

namespace {

std::string monomial(char var, int k) {
  if (k == 0) return "";
  if (k == 1) return std::string(1, var);
  return std::string(1, var) + "^" + std::to_string(k);
}

}  // namespace

std::string to_string(const KPoly& p, char var) {
  if (p.is_zero()) return "0";
  std::string out;
  for (int k = p.degree(); k >= 0; --k) {
    Scalar c = p.coeff(k);
    if (c.is_zero()) continue;
    bool neg = p.field().is_rationals() && sgn(c.rational()) < 0;
    if (neg) c = -c;
    if (out.empty())
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    const std::string m = monomial(var, k);
    if (m.empty())
      out += c.str();
    else if (c.is_one())
      out += m;
    else
      out += c.str() + "*" + m;
  }
  return out;
}

std::string to_string(const KTPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (int k = p.degree(); k >= 0; --k) {
    const KPoly& c = p.coeffs()[static_cast<std::size_t>(k)];
    if (c.is_zero()) continue;
    if (!out.empty()) out += " + ";
    const std::string m = monomial('X', k);
    if (m.empty())
      out += "(" + to_string(c, 'T') + ")";
    else if (c == KPoly::one(p.field()))
      out += m;
    else
      out += "(" + to_string(c, 'T') + ")*" + m;
  }
  return out;
}

}  // namespace p1h
