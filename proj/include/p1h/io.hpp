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

// Text and JSON forms of the library objects.

#pragma once

#include <string>
#include <string_view>
#include <variant>

#include "json.hpp"
#include "p1h/certify.hpp"
#include "p1h/oracle.hpp"

namespace p1h::io {

using json = nlohmann::json;

class ParseError : public Error {
 public:
  ParseError(const std::string& msg, std::size_t pos)
      : Error("syntax error at position " + std::to_string(pos) + ": " + msg), pos_(pos) {}
  std::size_t position() const noexcept { return pos_; }

 private:
  std::size_t pos_;
};

Scalar parse_scalar(std::string_view text, Field f);
// Polynomial in one variable ('X' or 'T').
KPoly parse_poly(std::string_view text, Field f, char var = 'X');

using Function = std::variant<RatFun, UnpointedRat>;

// "A/B" or "(A)/(B)". Pointed when A is monic of degree above deg B,
// otherwise the homogeneous pair at degree max(deg A, deg B).
Function parse_function(std::string_view text, Field f);
// Forced unpointed reading; also accepts "aN .. a0 ; bN .. b0".
UnpointedRat parse_unpointed(std::string_view text, Field f);
// A pointed function or a "+"-separated list of them, summed with oplus.
RatFun parse_pointed(std::string_view text, Field f);
// "A; B1, B2, ..."
PdPoint parse_pd(std::string_view text, Field f);
// Rows separated by ';', entries by ','; entries are polynomials in T.
Matrix<KPoly> parse_kt_matrix(std::string_view text, Field f);

std::string format(const RatFun& r);
std::string format(const UnpointedRat& u);
std::string format(const PdPoint& p);
std::string format(const Matrix<Scalar>& m);
std::string format(const Matrix<KPoly>& m);

json to_json(const Scalar& s);
json to_json(const KPoly& p);
json to_json(const KTPoly& p);
json to_json(const Matrix<Scalar>& m);
json to_json(const Matrix<KPoly>& m);
json to_json(const WittInvariant& w);
json to_json(const PointedInvariant& inv);
json to_json(const UnpointedInvariant& inv);
json to_json(const Certificate& c);
json to_json(const oracle::EnumSpec& s, const oracle::CrossCheck& r);

Certificate certificate_from_json(const json& j);

}  // namespace p1h::io
