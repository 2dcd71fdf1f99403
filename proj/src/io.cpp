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

#include "p1h/io.hpp"

#include <cctype>

namespace p1h::io {

namespace {

struct Parts {
  KPoly A, B;
};

class Parser {
 public:
  Parser(std::string_view s, Field f, char var, std::size_t offset = 0) : s_(s), f_(f), var_(var), off_(offset) {}

  void ws() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool at_end() {
    ws();
    return i_ == s_.size();
  }
  char peek() {
    ws();
    return i_ < s_.size() ? s_[i_] : '\0';
  }
  bool accept(char c) {
    if (peek() != c) return false;
    ++i_;
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, off_ + i_); }
  void expect_end() {
    if (!at_end()) fail(std::string("unexpected '") + s_[i_] + "'");
  }

  mpz_class integer() {
    ws();
    const std::size_t start = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (start == i_) fail("expected an integer");
    return mpz_class(std::string(s_.substr(start, i_ - start)));
  }

  Scalar coeff(bool allow_frac) {
    mpq_class v(integer());
    if (allow_frac) {
      const std::size_t save = i_;
      if (accept('/')) {
        if (!std::isdigit(static_cast<unsigned char>(peek()))) {
          i_ = save;
        } else {
          const mpz_class d = integer();
          if (d == 0) fail("zero denominator");
          v = mpq_class(v.get_num(), d);
          v.canonicalize();
        }
      }
    }
    if (!f_.is_rationals() && v.get_den() != 1) {
      const mpz_class r = v.get_den() % static_cast<unsigned long>(f_.characteristic());
      if (r == 0) fail("denominator divisible by the characteristic");
    }
    return Scalar(f_, v);
  }

  bool is_var(char c) const { return c == var_ || c == std::tolower(static_cast<unsigned char>(var_)); }

  KPoly term(bool allow_frac) {
    Scalar c = Scalar::one(f_);
    const char p = peek();
    bool have_coeff = false;
    if (std::isdigit(static_cast<unsigned char>(p))) {
      c = coeff(allow_frac);
      have_coeff = true;
    } else if (!is_var(p)) {
      fail("expected a term");
    }
    const bool star = accept('*');
    if (!is_var(peek())) {
      if (star || !have_coeff) fail(std::string("expected '") + var_ + "'");
      return KPoly::constant(f_, c);
    }
    ++i_;
    long e = 1;
    if (accept('^')) {
      const mpz_class k = integer();
      if (!k.fits_slong_p() || k > 100000) fail("exponent too large");
      e = k.get_si();
    }
    return KPoly::monomial(f_, c, static_cast<int>(e));
  }

  KPoly poly(bool allow_frac, bool single_term = false) {
    bool neg = false;
    if (accept('-'))
      neg = true;
    else
      accept('+');
    KPoly acc = term(allow_frac);
    if (neg) acc = -acc;
    if (single_term) return acc;
    for (;;) {
      const char c = peek();
      if (c != '+' && c != '-') break;
      ++i_;
      KPoly t = term(allow_frac);
      acc = c == '+' ? acc + t : acc - t;
    }
    return acc;
  }

  KPoly group(bool single_term) {
    if (accept('(')) {
      KPoly p = poly(true);
      expect(')');
      return p;
    }
    return poly(false, single_term);
  }

  Parts function(bool sum_mode) {
    KPoly A = group(false);
    KPoly B = KPoly::one(f_);
    if (accept('/')) B = group(sum_mode);
    return {A, B};
  }

 private:
  std::string_view s_;
  Field f_;
  char var_;
  std::size_t off_;
  std::size_t i_ = 0;
};

bool looks_pointed(const Parts& p) { return p.A.is_monic() && p.A.degree() > p.B.degree(); }

Parts parse_parts(std::string_view text, Field f) {
  Parser p(text, f, 'X');
  Parts out = p.function(false);
  p.expect_end();
  return out;
}

std::vector<std::pair<std::string_view, std::size_t>> split(std::string_view s, char sep) {
  std::vector<std::pair<std::string_view, std::size_t>> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i)
    if (i == s.size() || s[i] == sep) {
      out.emplace_back(s.substr(start, i - start), start);
      start = i + 1;
    }
  return out;
}

std::vector<Scalar> scalar_list(std::string_view s, std::size_t off, Field f) {
  std::vector<Scalar> out;
  Parser p(s, f, 'X', off);
  while (!p.at_end()) {
    bool neg = p.accept('-');
    Scalar c = p.coeff(true);
    out.push_back(neg ? -c : c);
    p.accept(',');
  }
  return out;
}

}  // namespace

Scalar parse_scalar(std::string_view text, Field f) {
  Parser p(text, f, 'X');
  const bool neg = p.accept('-');
  Scalar c = p.coeff(true);
  p.expect_end();
  return neg ? -c : c;
}

KPoly parse_poly(std::string_view text, Field f, char var) {
  Parser p(text, f, var);
  KPoly out = p.poly(true);
  p.expect_end();
  return out;
}

Function parse_function(std::string_view text, Field f) {
  Parts p = parse_parts(text, f);
  if (looks_pointed(p)) return RatFun::make(p.A, p.B);
  return UnpointedRat::make(p.A, p.B, std::max(p.A.degree(), p.B.degree()));
}

UnpointedRat parse_unpointed(std::string_view text, Field f) {
  const auto halves = split(text, ';');
  if (halves.size() == 2) {
    std::vector<Scalar> a = scalar_list(halves[0].first, halves[0].second, f);
    std::vector<Scalar> b = scalar_list(halves[1].first, halves[1].second, f);
    if (a.empty() || a.size() != b.size()) throw ParseError("coefficient vectors must have equal nonzero length", halves[1].second);
    std::reverse(a.begin(), a.end());
    std::reverse(b.begin(), b.end());
    return UnpointedRat::make(KPoly(f, a), KPoly(f, b), static_cast<int>(a.size()) - 1);
  }
  if (halves.size() > 2) throw ParseError("at most one ';' expected", halves[2].second - 1);
  Parts p = parse_parts(text, f);
  return UnpointedRat::make(p.A, p.B, std::max(p.A.degree(), p.B.degree()));
}

RatFun parse_pointed(std::string_view text, Field f) {
  std::vector<Parts> terms;
  try {
    terms.push_back(parse_parts(text, f));
  } catch (const ParseError& first) {
    // "f1+f2+..." with single-term unparenthesized denominators.
    Parser p(text, f, 'X');
    try {
      terms.push_back(p.function(true));
      while (p.accept('+')) terms.push_back(p.function(true));
      p.expect_end();
    } catch (const ParseError&) {
      throw first;
    }
  }
  RatFun acc = RatFun::identity(f);
  for (const auto& t : terms) {
    if (!looks_pointed(t)) throw Error("not a pointed rational function: numerator must be monic of larger degree");
    acc = oplus(acc, RatFun::make(t.A, t.B));
  }
  return acc;
}

PdPoint parse_pd(std::string_view text, Field f) {
  const auto halves = split(text, ';');
  if (halves.size() != 2) throw ParseError("expected 'A; B1, B2, ...'", 0);
  auto poly_at = [&](std::string_view s, std::size_t off) {
    Parser p(s, f, 'X', off);
    KPoly out = p.poly(true);
    p.expect_end();
    return out;
  };
  KPoly A = poly_at(halves[0].first, halves[0].second);
  std::vector<KPoly> bs;
  for (auto [s, off] : split(halves[1].first, ',')) bs.push_back(poly_at(s, halves[1].second + off));
  return PdPoint::make(A, bs);
}

Matrix<KPoly> parse_kt_matrix(std::string_view text, Field f) {
  std::vector<std::vector<KPoly>> rows;
  for (auto [row, roff] : split(text, ';'))
    if (!row.empty() || rows.empty()) {
      std::vector<KPoly> r;
      for (auto [e, eoff] : split(row, ',')) {
        Parser p(e, f, 'T', roff + eoff);
        KPoly v = p.poly(true);
        p.expect_end();
        r.push_back(v);
      }
      rows.push_back(r);
    }
  const int n = static_cast<int>(rows.size());
  Matrix<KPoly> m(f, n, n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(rows[static_cast<std::size_t>(i)].size()) != n) throw Error("matrix must be square");
    for (int j = 0; j < n; ++j) m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
  return m;
}

std::string format(const RatFun& r) { return "(" + to_string(r.A()) + ")/(" + to_string(r.B()) + ")"; }
std::string format(const UnpointedRat& u) { return "(" + to_string(u.A()) + ")/(" + to_string(u.B()) + ")"; }

std::string format(const PdPoint& p) {
  std::string out = to_string(p.A) + ";";
  for (std::size_t j = 0; j < p.B.size(); ++j) out += (j ? ", " : " ") + to_string(p.B[j]);
  return out;
}

namespace {

template <class C, class F>
std::string format_matrix(const Matrix<C>& m, F&& entry) {
  std::string out;
  for (int i = 0; i < m.rows(); ++i) {
    out += "[";
    for (int j = 0; j < m.cols(); ++j) out += (j ? ", " : "") + entry(m(i, j));
    out += "]\n";
  }
  return out;
}

}  // namespace

std::string format(const Matrix<Scalar>& m) {
  return format_matrix(m, [](const Scalar& s) { return s.str(); });
}
std::string format(const Matrix<KPoly>& m) {
  return format_matrix(m, [](const KPoly& p) { return to_string(p, 'T'); });
}

json to_json(const Scalar& s) { return s.str(); }

json to_json(const KPoly& p) {
  json a = json::array();
  for (const auto& c : p.coeffs()) a.push_back(c.str());
  return a;
}

json to_json(const KTPoly& p) {
  json a = json::array();
  for (const auto& c : p.coeffs()) a.push_back(to_json(c));
  return a;
}

json to_json(const Matrix<Scalar>& m) {
  json a = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json r = json::array();
    for (int j = 0; j < m.cols(); ++j) r.push_back(m(i, j).str());
    a.push_back(r);
  }
  return a;
}

json to_json(const Matrix<KPoly>& m) {
  json a = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json r = json::array();
    for (int j = 0; j < m.cols(); ++j) r.push_back(to_json(m(i, j)));
    a.push_back(r);
  }
  return a;
}

json to_json(const WittInvariant& w) {
  json j{{"rank", w.rank}, {"disc", w.disc_label()}};
  if (w.field.is_rationals()) {
    j["signature"] = {w.pos, w.neg};
    json h = json::object();
    for (const auto& [p, v] : w.hasse) h[p.get_str()] = v;
    j["hasse"] = h;
  }
  return j;
}

json to_json(const PointedInvariant& inv) {
  return {{"degree", inv.n}, {"resultant", inv.res.str()}, {"witt", to_json(inv.witt)}, {"coherent", inv.coherent()}};
}

json to_json(const UnpointedInvariant& inv) {
  return {{"degree", inv.n}, {"resultant_class", inv.res_class.str()}, {"witt", to_json(inv.witt)}};
}

namespace {

json end_json(const CertEnd& e) {
  json b = json::array();
  for (const auto& x : e.B) b.push_back(to_json(x));
  return {{"n", e.n}, {"A", to_json(e.A)}, {"B", b}};
}

json step_json(const CertStep& s) {
  json b = json::array();
  for (const auto& x : s.B) b.push_back(to_json(x));
  json j{{"n", s.n}, {"A", to_json(s.A)}, {"B", b}};
  if (!s.cofactors.empty()) {
    json c = json::array();
    for (const auto& x : s.cofactors) c.push_back(to_json(x));
    j["cofactors"] = c;
  }
  return j;
}

Scalar scalar_from(const json& j, Field f) {
  if (!j.is_string()) throw Error("certificate: scalars must be strings");
  return parse_scalar(j.get<std::string>(), f);
}

KPoly kpoly_from(const json& j, Field f) {
  if (!j.is_array()) throw Error("certificate: polynomial must be an array");
  std::vector<Scalar> v;
  for (const auto& c : j) v.push_back(scalar_from(c, f));
  return KPoly(f, v);
}

KTPoly ktpoly_from(const json& j, Field f) {
  if (!j.is_array()) throw Error("certificate: polynomial must be an array");
  std::vector<KPoly> v;
  for (const auto& c : j) v.push_back(kpoly_from(c, f));
  return KTPoly(f, v);
}

int int_from(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number_integer()) throw Error(std::string("certificate: missing integer '") + key + "'");
  return j.at(key).get<int>();
}

const json& field_of(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(std::string("certificate: missing '") + key + "'");
  return j.at(key);
}

CertEnd end_from(const json& j, Field f) {
  CertEnd e{int_from(j, "n"), kpoly_from(field_of(j, "A"), f), {}};
  for (const auto& b : field_of(j, "B")) e.B.push_back(kpoly_from(b, f));
  return e;
}

CertStep step_from(const json& j, Field f) {
  CertStep s{int_from(j, "n"), ktpoly_from(field_of(j, "A"), f), {}, {}};
  for (const auto& b : field_of(j, "B")) s.B.push_back(ktpoly_from(b, f));
  if (j.contains("cofactors"))
    for (const auto& c : j.at("cofactors")) s.cofactors.push_back(ktpoly_from(c, f));
  return s;
}

}  // namespace

json to_json(const Certificate& c) {
  json steps = json::array();
  for (const auto& s : c.steps) steps.push_back(step_json(s));
  return {{"kind", kind_name(c.kind)}, {"field", c.field.name()}, {"source", end_json(c.source)},
          {"target", end_json(c.target)}, {"steps", steps}};
}

Certificate certificate_from_json(const json& j) {
  try {
    const json& kind = field_of(j, "kind");
    const json& field = field_of(j, "field");
    if (!kind.is_string() || !field.is_string()) throw Error("certificate: kind and field must be strings");
    const Field f = Field::parse(field.get<std::string>());
    Certificate c{parse_kind(kind.get<std::string>()), f, {}, end_from(field_of(j, "source"), f),
                  end_from(field_of(j, "target"), f)};
    const json& steps = field_of(j, "steps");
    if (!steps.is_array()) throw Error("certificate: steps must be an array");
    for (const auto& s : steps) c.steps.push_back(step_from(s, f));
    return c;
  } catch (const json::exception& e) {
    throw Error(std::string("certificate: ") + e.what());
  }
}

json to_json(const oracle::EnumSpec& s, const oracle::CrossCheck& r) {
  json comps = json::array();
  for (const auto& c : r.raw.components)
    comps.push_back({{"size", c.size}, {"representative", oracle::point_text(s, c.representative)}, {"invariant", c.invariant}});
  json bridges = json::array();
  for (const auto& b : r.bridges)
    bridges.push_back({{"from", oracle::point_text(s, b.from)}, {"to", oracle::point_text(s, b.to)},
                       {"verified", b.verified}, {"steps", b.steps}});
  json spec{{"q", s.q}, {"n", s.n}, {"D", s.degree_bound()}, {"target", oracle::target_name(s.target)}};
  if (s.target == oracle::Target::Pd) spec["d"] = s.d;
  return {{"spec", spec},
          {"points", r.raw.points},
          {"candidates", r.raw.candidates},
          {"edges", r.raw.edges},
          {"unsound_edges", r.raw.unsound_edges},
          {"components", comps},
          {"fibers", r.raw.fibers},
          {"bridges", bridges},
          {"final_components", r.final_components},
          {"agreement", r.agreement},
          {"verdict", r.verdict}};
}

}  // namespace p1h::io
