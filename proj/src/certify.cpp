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

#include "p1h/certify.hpp"

#include <map>
#include <set>

#include "p1h/number_theory.hpp"

namespace p1h {

namespace {

KPoly one_minus_t(Field f) { return KPoly(f, {Scalar::one(f), -Scalar::one(f)}); }
KPoly t_poly(Field f) { return KPoly(f, {Scalar::zero(f), Scalar::one(f)}); }

KTPoly reverse_t(const KTPoly& p) {
  const KPoly s = one_minus_t(p.field());
  return map_coeffs(p, [&](const KPoly& c) { return substitute(c, s); });
}

Matrix<KPoly> reverse_t(const Matrix<KPoly>& m) {
  Matrix<KPoly> out = m;
  const KPoly s = one_minus_t(m.field());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out(i, j) = substitute(m(i, j), s);
  return out;
}

CertEnd eval_step(const CertStep& s, const Scalar& t) {
  CertEnd e{s.n, eval_t(s.A, t), {}};
  for (const auto& b : s.B) e.B.push_back(eval_t(b, t));
  return e;
}

bool same_end(CertKind kind, const CertEnd& x, const CertEnd& y) {
  if (x.n != y.n) return false;
  if (kind != CertKind::Unpointed) return x.A == y.A && x.B == y.B;
  if (x.B.size() != 1 || y.B.size() != 1) return false;
  try {
    return UnpointedRat::make(x.A, x.B[0], x.n) == UnpointedRat::make(y.A, y.B[0], y.n);
  } catch (const Error&) {
    return false;
  }
}

std::optional<std::string> check_end(CertKind kind, const CertEnd& e) {
  try {
    switch (kind) {
      case CertKind::Pointed:
        if (e.B.size() != 1) return "pointed endpoint needs one denominator";
        if (e.A.degree() != e.n) return "degree mismatch";
        (void)RatFun::make(e.A, e.B[0]);
        break;
      case CertKind::Unpointed:
        if (e.B.size() != 1) return "unpointed endpoint needs one denominator";
        (void)UnpointedRat::make(e.A, e.B[0], e.n);
        break;
      case CertKind::Pd:
        if (e.A.degree() != e.n) return "degree mismatch";
        (void)PdPoint::make(e.A, e.B);
        break;
    }
  } catch (const Error& err) {
    return std::string(err.what());
  }
  return std::nullopt;
}

bool same_field(const KTPoly& p, Field f) {
  if (p.field() != f) return false;
  for (const auto& c : p.coeffs())
    if (c.field() != f) return false;
  return true;
}

std::optional<std::string> check_step(CertKind kind, Field f, const CertStep& s) {
  if (!same_field(s.A, f)) return "field mismatch";
  for (const auto& b : s.B)
    if (!same_field(b, f)) return "field mismatch";
  switch (kind) {
    case CertKind::Pointed: {
      if (s.B.size() != 1) return "pointed step needs one denominator";
      if (s.A.degree() != s.n) return "degree mismatch";
      try {
        (void)RatPath::make(s.A, s.B[0]);
      } catch (const RejectedPath&) {
        return "non-constant resultant";
      } catch (const Error& e) {
        return std::string(e.what());
      }
      return std::nullopt;
    }
    case CertKind::Unpointed: {
      if (s.B.size() != 1) return "unpointed step needs one denominator";
      if (s.n < 0 || s.A.degree() > s.n || s.B[0].degree() > s.n) return "degree exceeds formal degree";
      if (s.n == 0) {
        if (s.A.is_zero() && s.B[0].is_zero()) return "zero pair";
        KPoly a = s.A.coeff(0), b = s.B[0].coeff(0);
        // (a, b) must not vanish simultaneously at any T.
        if (poly_gcd(a, b).degree() != 0) return "non-constant resultant";
        return std::nullopt;
      }
      if (resultant_nn(s.A, s.B[0], s.n).degree() != 0) return "non-constant resultant";
      return std::nullopt;
    }
    case CertKind::Pd: {
      if (s.B.size() < 2) return "pd step needs at least two B_i";
      if (s.A.degree() != s.n || !s.A.is_monic()) return "numerator must be monic of degree n";
      for (const auto& b : s.B)
        if (b.degree() >= s.n) return "deg B_i must be below n";
      if (!s.cofactors.empty()) {
        PdPath p{s.A, s.B, s.cofactors};
        if (!p.check()) return "cofactor identity fails";
        return std::nullopt;
      }
      if (!unimodular_cofactors(s.A, s.B)) return "not unimodular";
      return std::nullopt;
    }
  }
  return std::nullopt;
}

}  // namespace

std::string kind_name(CertKind k) {
  switch (k) {
    case CertKind::Pointed:
      return "pointed";
    case CertKind::Unpointed:
      return "unpointed";
    case CertKind::Pd:
      return "pd";
  }
  return "";
}

CertKind parse_kind(const std::string& s) {
  if (s == "pointed") return CertKind::Pointed;
  if (s == "unpointed") return CertKind::Unpointed;
  if (s == "pd") return CertKind::Pd;
  throw Error("unknown certificate kind '" + s + "'");
}

Verdict verify(const Certificate& c) {
  for (std::size_t i = 0; i < c.steps.size(); ++i)
    if (auto e = check_step(c.kind, c.field, c.steps[i])) return {false, *e + " at step " + std::to_string(i)};
  if (auto e = check_end(c.kind, c.source)) return {false, "invalid source: " + *e};
  if (auto e = check_end(c.kind, c.target)) return {false, "invalid target: " + *e};
  const Scalar zero = Scalar::zero(c.field), one = Scalar::one(c.field);
  if (c.steps.empty()) {
    if (!same_end(c.kind, c.source, c.target)) return {false, "endpoint mismatch: empty chain with distinct endpoints"};
    return {true, "ok"};
  }
  if (!same_end(c.kind, c.source, eval_step(c.steps.front(), zero))) return {false, "endpoint mismatch at step 0"};
  for (std::size_t i = 0; i + 1 < c.steps.size(); ++i)
    if (!same_end(c.kind, eval_step(c.steps[i], one), eval_step(c.steps[i + 1], zero)))
      return {false, "endpoint mismatch at step " + std::to_string(i + 1)};
  if (!same_end(c.kind, eval_step(c.steps.back(), one), c.target))
    return {false, "endpoint mismatch at step " + std::to_string(c.steps.size() - 1)};
  return {true, "ok"};
}

CertStep to_step(const RatPath& F) { return {F.degree(), F.A(), {F.B()}, {}}; }
CertStep to_step(const UnpointedPath& p) { return {p.n, p.A, {p.B}, {}}; }
CertStep to_step(const PdPath& p) { return {p.degree(), p.A, p.B, p.cofactors}; }
CertEnd to_end(const RatFun& f) { return {f.degree(), f.A(), {f.B()}}; }
CertEnd to_end(const UnpointedRat& u) { return {u.degree(), u.A(), {u.B()}}; }
CertEnd to_end(const PdPoint& p) { return {p.degree(), p.A, p.B}; }

Certificate reverse(const Certificate& c) {
  Certificate out{c.kind, c.field, {}, c.target, c.source};
  for (auto it = c.steps.rbegin(); it != c.steps.rend(); ++it) {
    CertStep s{it->n, reverse_t(it->A), {}, {}};
    for (const auto& b : it->B) s.B.push_back(reverse_t(b));
    for (const auto& x : it->cofactors) s.cofactors.push_back(reverse_t(x));
    out.steps.push_back(std::move(s));
  }
  return out;
}

Certificate concat(const Certificate& c1, const Certificate& c2) {
  if (c1.kind != c2.kind || c1.field != c2.field) throw Error("concat: incompatible certificates");
  if (!same_end(c1.kind, c1.target, c2.source)) throw Error("internal: concat endpoints differ");
  Certificate out = c1;
  out.steps.insert(out.steps.end(), c2.steps.begin(), c2.steps.end());
  out.target = c2.target;
  return out;
}

Certificate embed(const RatFun& left, const Certificate& c, const RatFun& right) {
  if (c.kind != CertKind::Pointed) throw Error("embed: pointed certificate required");
  const RatPath L = constant_path(left), R = constant_path(right);
  Certificate out{c.kind, c.field, {}, {}, {}};
  for (const auto& s : c.steps) out.steps.push_back(to_step(oplus(oplus(L, RatPath::make(s.A, s.B[0])), R)));
  out.source = to_end(oplus(oplus(left, RatFun::make(c.source.A, c.source.B[0])), right));
  out.target = to_end(oplus(oplus(left, RatFun::make(c.target.A, c.target.B[0])), right));
  return out;
}

RatFun unit_sum(Field f, const std::vector<Scalar>& units) {
  RatFun acc = RatFun::identity(f);
  for (const auto& u : units) acc = oplus(acc, RatFun::make(KPoly::x(f), KPoly::constant(f, u)));
  return acc;
}

namespace {

Certificate single_step(const RatPath& F) {
  const Field f = F.field();
  return {CertKind::Pointed, f, {to_step(F)}, to_end(eval_path(F, Scalar::zero(f))), to_end(eval_path(F, Scalar::one(f)))};
}

Certificate empty_cert(const RatFun& f) { return {CertKind::Pointed, f.field(), {}, to_end(f), to_end(f)}; }

RatFun assemble_range(Field f, const CFExpansion& t, std::size_t lo, std::size_t hi) {
  if (lo >= hi) return RatFun::identity(f);
  return cf_assemble(CFExpansion(t.begin() + static_cast<long>(lo), t.begin() + static_cast<long>(hi)));
}

}  // namespace

NormalFormCert normal_form_cert(const RatFun& f) {
  const Field fld = f.field();
  NormalFormCert out{{}, empty_cert(f)};
  if (f.degree() == 0) return out;
  CFExpansion terms = cf_expand(f);
  for (;;) {
    std::size_t i = 0;
    while (i < terms.size() && terms[i].P == KPoly::x(fld)) ++i;
    if (i == terms.size()) break;
    const CFTerm term = terms[i];
    const int m = term.P.degree();
    const KPoly lead = KPoly::monomial(fld, Scalar::one(fld), m);
    RatPath path = RatPath::identity(fld);
    CFExpansion replacement;
    if (!(term.P == lead)) {
      // (X^m + (1 - T) lower) / b: a polynomial is homotopic to its leading term.
      KTPoly A = lift_t(lead) + lift_t(term.P - lead).scaled(one_minus_t(fld));
      path = RatPath::make(A, KTPoly::constant(fld, KPoly::constant(fld, term.b)));
      replacement = {{lead, term.b}};
    } else {
      // X^m / (T X^(m-1) + b)
      KTPoly B = KTPoly::monomial(fld, t_poly(fld), m - 1) + KTPoly::constant(fld, KPoly::constant(fld, term.b));
      path = RatPath::make(lift_t(lead), B);
      replacement = cf_expand(eval_path(path, Scalar::one(fld)));
    }
    const RatFun left = assemble_range(fld, terms, 0, i), right = assemble_range(fld, terms, i + 1, terms.size());
    out.cert = concat(out.cert, embed(left, single_step(path), right));
    terms.erase(terms.begin() + static_cast<long>(i));
    terms.insert(terms.begin() + static_cast<long>(i), replacement.begin(), replacement.end());
  }
  for (const auto& t : terms) out.units.push_back(t.b);
  if (!(unit_sum(fld, out.units) == RatFun::make(out.cert.target.A, out.cert.target.B[0])))
    throw Error("internal: normal form mismatch");
  return out;
}

namespace {

std::optional<std::uint64_t> sqrt_mod(std::uint64_t a, std::uint64_t p) {
  a %= p;
  if (a == 0 || p == 2) return a;
  if (nt::powmod(a, (p - 1) / 2, p) != 1) return std::nullopt;
  std::uint64_t q = p - 1, s = 0;
  while (q % 2 == 0) {
    q /= 2;
    ++s;
  }
  const std::uint64_t z = nt::smallest_nonresidue(p);
  std::uint64_t m = s, c = nt::powmod(z, q, p), t = nt::powmod(a, q, p), r = nt::powmod(a, (q + 1) / 2, p);
  while (t != 1) {
    std::uint64_t i = 0, tt = t;
    while (tt != 1) {
      tt = nt::mulmod(tt, tt, p);
      ++i;
    }
    std::uint64_t b = c;
    for (std::uint64_t k = 0; k + 1 < m - i; ++k) b = nt::mulmod(b, b, p);
    m = i;
    c = nt::mulmod(b, b, p);
    t = nt::mulmod(t, c, p);
    r = nt::mulmod(r, b, p);
  }
  return r;
}

// P with e_1 -> x, P^T diag(a, b) P = diag(c, ab/c), c = a x1^2 + b x2^2.
DiagMove make_move(int pos, const Scalar& a, const Scalar& b, const Scalar& x1, const Scalar& x2) {
  const Field f = a.field();
  const Scalar c = a * x1 * x1 + b * x2 * x2;
  Matrix<Scalar> P = Matrix<Scalar>::from_rows(f, {{x1, -(b * x2) / c}, {x2, (a * x1) / c}});
  return {pos, a, b, c, a * b / c, P};
}

DiagMove scale_move(int pos, const Scalar& a, const Scalar& b, const Scalar& z) {
  const Field f = a.field();
  Matrix<Scalar> P = Matrix<Scalar>::from_rows(f, {{z, Scalar::zero(f)}, {Scalar::zero(f), z.inverse()}});
  return {pos, a, b, a * z * z, b / (z * z), P};
}

std::optional<Scalar> rational_sqrt(const mpq_class& r) {
  if (sgn(r) <= 0) return std::nullopt;
  if (!mpz_perfect_square_p(r.get_num().get_mpz_t()) || !mpz_perfect_square_p(r.get_den().get_mpz_t())) return std::nullopt;
  mpz_class n, d;
  mpz_sqrt(n.get_mpz_t(), r.get_num().get_mpz_t());
  mpz_sqrt(d.get_mpz_t(), r.get_den().get_mpz_t());
  return Scalar(Field::rationals(), mpq_class(n, d));
}

// Moves turning w[i] into v using the tail w[i..], or nothing if the
// bounded search fails.
std::optional<std::vector<DiagMove>> represent_q(const std::vector<Scalar>& w, std::size_t i, const Scalar& v,
                                                 long height) {
  const std::size_t m = w.size() - i;
  const Field f = v.field();
  std::vector<long> y(m, 0);
  long budget = 400000;
  for (long h = 1; h <= height; ++h) {
    // Vectors of max-norm exactly h, in odometer order.
    std::vector<long> c(m, -h);
    for (;;) {
      bool on_shell = false;
      for (long x : c) on_shell = on_shell || x == h || x == -h;
      if (on_shell) {
        if (--budget < 0) return std::nullopt;
        Scalar s = Scalar::zero(f);
        for (std::size_t k = 0; k < m; ++k) s += w[i + k] * Scalar(f, c[k] * c[k]);
        if (!s.is_zero()) {
          if (auto r = rational_sqrt((s / v).rational())) {
            std::vector<Scalar> z;
            for (std::size_t k = 0; k < m; ++k) z.push_back(Scalar(f, c[k]) / *r);
            std::vector<Scalar> ww(w.begin() + static_cast<long>(i), w.end());
            std::vector<DiagMove> moves;
            bool ok = true;
            for (std::size_t j = m - 1; j-- > 0 && ok;) {
              if (z[j + 1].is_zero()) continue;
              const Scalar val = ww[j] * z[j] * z[j] + ww[j + 1] * z[j + 1] * z[j + 1];
              if (val.is_zero()) {
                ok = false;
                break;
              }
              DiagMove mv = make_move(static_cast<int>(i + j), ww[j], ww[j + 1], z[j], z[j + 1]);
              ww[j] = mv.c;
              ww[j + 1] = mv.d;
              z[j] = Scalar::one(f);
              z[j + 1] = Scalar::zero(f);
              moves.push_back(mv);
            }
            if (ok && !(ww[0] == v)) {
              if (z[0].is_zero() || m < 2) {
                ok = false;
              } else {
                DiagMove mv = scale_move(static_cast<int>(i), ww[0], ww[1], z[0]);
                ww[0] = mv.c;
                moves.push_back(mv);
              }
            }
            if (ok && ww[0] == v) return moves;
          }
        }
      }
      std::size_t k = 0;
      while (k < m && c[k] == h) c[k++] = -h;
      if (k == m) break;
      ++c[k];
    }
  }
  return std::nullopt;
}

std::optional<DiagMove> represent_fp(int pos, const Scalar& a, const Scalar& b, const Scalar& v) {
  const Field f = a.field();
  const std::uint64_t p = f.characteristic();
  for (std::uint64_t x = 0; x < p; ++x) {
    const Scalar x1(f, static_cast<long>(x));
    const Scalar y = (v - a * x1 * x1) / b;
    if (auto r = sqrt_mod(y.residue(), p)) {
      const Scalar x2(f, static_cast<long>(*r));
      if ((a * x1 * x1 + b * x2 * x2).is_zero()) continue;
      return make_move(pos, a, b, x1, x2);
    }
  }
  return std::nullopt;
}

}  // namespace

std::vector<Scalar> apply_moves(std::vector<Scalar> us, const std::vector<DiagMove>& moves) {
  for (const auto& mv : moves) {
    const auto p = static_cast<std::size_t>(mv.pos);
    if (p + 1 >= us.size() || !(us[p] == mv.a) || !(us[p + 1] == mv.b)) throw Error("move does not apply");
    Matrix<Scalar> D = Matrix<Scalar>::from_rows(mv.a.field(), {{mv.a, Scalar::zero(mv.a.field())}, {Scalar::zero(mv.a.field()), mv.b}});
    Matrix<Scalar> E = mv.P.transpose() * D * mv.P;
    if (!determinant(mv.P).is_one() || !(E(0, 0) == mv.c) || !(E(1, 1) == mv.d) || !E(0, 1).is_zero())
      throw Error("move is not an SL2 congruence");
    us[p] = mv.c;
    us[p + 1] = mv.d;
  }
  return us;
}

DiagChain diag_chain(const std::vector<Scalar>& us, const std::vector<Scalar>& vs, const ChainOptions& opt) {
  DiagChain out;
  if (us.size() != vs.size()) return {SearchStatus::NotEquivalent, {}};
  if (us.empty()) return out;
  const Field f = us[0].field();
  Scalar pu = Scalar::one(f), pv = Scalar::one(f);
  for (const auto& u : us) pu *= u;
  for (const auto& v : vs) pv *= v;
  if (!(pu == pv) || !stable_equal(witt_of_diag(f, {us}), witt_of_diag(f, {vs}))) return {SearchStatus::NotEquivalent, {}};
  std::vector<Scalar> w = us;
  for (std::size_t i = 0; i + 1 < w.size(); ++i) {
    if (w[i] == vs[i]) continue;
    std::vector<DiagMove> mv;
    if (f.is_rationals()) {
      auto r = represent_q(w, i, vs[i], opt.height);
      if (!r) return {SearchStatus::Exhausted, out.moves};
      mv = *r;
    } else {
      auto r = represent_fp(static_cast<int>(i), w[i], w[i + 1], vs[i]);
      if (!r) throw Error("internal: binary form over a finite field fails to represent a unit");
      mv = {*r};
    }
    w = apply_moves(w, mv);
    out.moves.insert(out.moves.end(), mv.begin(), mv.end());
    if (static_cast<int>(out.moves.size()) > opt.budget) return {SearchStatus::Exhausted, out.moves};
  }
  if (!(w == vs)) throw Error("internal: diagonal chain does not reach its target");
  return out;
}

std::vector<Elementary> sl2_factors(const Matrix<Scalar>& P) {
  const Field f = P.field();
  if (!determinant(P).is_one()) throw Error("sl2_factors requires determinant one");
  const Scalar p = P(0, 0), r = P(1, 0), s = P(1, 1);
  std::vector<Elementary> out;
  if (r.is_zero()) {
    // P = L(1) (L(-1) P), and L(-1) P has a nonzero lower-left entry.
    Matrix<Scalar> Lm = Matrix<Scalar>::identity(f, 2);
    Lm(1, 0) = -Scalar::one(f);
    out.push_back({false, Scalar::one(f)});
    for (auto& e : sl2_factors(Lm * P)) out.push_back(e);
    return out;
  }
  // [[p, q], [r, s]] = U((p - 1)/r) L(r) U((s - 1)/r)
  const Scalar x = (p - Scalar::one(f)) / r, y = (s - Scalar::one(f)) / r;
  if (!x.is_zero()) out.push_back({true, x});
  out.push_back({false, r});
  if (!y.is_zero()) out.push_back({true, y});
  return out;
}

Matrix<KPoly> elementary_product(Field f, const std::vector<Elementary>& factors) {
  Matrix<KPoly> M = Matrix<KPoly>::identity(f, 2);
  for (const auto& e : factors) {
    Matrix<KPoly> E = Matrix<KPoly>::identity(f, 2);
    (e.upper ? E(0, 1) : E(1, 0)) = KPoly(f, {Scalar::zero(f), e.x});
    M = M * E;
  }
  return M;
}

Certificate lift_chain_to_cert(Field f, const std::vector<Scalar>& us, const std::vector<DiagMove>& moves) {
  Certificate out = empty_cert(unit_sum(f, us));
  std::vector<Scalar> w = us;
  for (const auto& mv : moves) {
    const auto pos = static_cast<std::size_t>(mv.pos);
    const RatFun g0 = unit_sum(f, {mv.a, mv.b}), g1 = unit_sum(f, {mv.c, mv.d});
    // Bez(X/a + X/b) = diag(b, a), so the move acts through Q = J P J.
    Matrix<Scalar> Q = Matrix<Scalar>::from_rows(f, {{mv.P(1, 1), mv.P(1, 0)}, {mv.P(0, 1), mv.P(0, 0)}});
    Matrix<Scalar> S0 = bezout_form(g0);
    if (!(S0 == Matrix<Scalar>::from_rows(f, {{mv.b, Scalar::zero(f)}, {Scalar::zero(f), mv.a}})))
      throw Error("internal: unexpected Bezout form of a unit pair");
    Matrix<KPoly> QT = elementary_product(f, sl2_factors(Q));
    Matrix<KPoly> ST = QT.transpose() * lift_t(S0) * QT;
    const Scalar phi0 = phi_n(g0), phi1 = phi_n(g1);
    const KPoly t(f, {phi0, phi1 - phi0});
    RatPath F = f2_iso_inv(ST, t);
    if (!(eval_path(F, Scalar::zero(f)) == g0) || !(eval_path(F, Scalar::one(f)) == g1))
      throw Error("internal: transported path has wrong endpoints");
    const std::vector<Scalar> lw(w.begin(), w.begin() + static_cast<long>(pos));
    const std::vector<Scalar> rw(w.begin() + static_cast<long>(pos) + 2, w.end());
    out = concat(out, embed(unit_sum(f, lw), single_step(F), unit_sum(f, rw)));
    w = apply_moves(w, {mv});
  }
  return out;
}

namespace {

std::string describe_difference(const PointedInvariant& a, const PointedInvariant& b) {
  if (a.n != b.n) return "degree " + std::to_string(a.n) + " vs " + std::to_string(b.n);
  if (!(a.res == b.res)) return "resultant " + a.res.str() + " vs " + b.res.str();
  return "Bezout form class " + a.witt.key() + " vs " + b.witt.key();
}

}  // namespace

ConnectResult connect(const RatFun& f, const RatFun& g, const ChainOptions& opt) {
  if (f.field() != g.field()) throw Error("field mismatch");
  const PointedInvariant fi = pointed_invariant(f), gi = pointed_invariant(g);
  if (!invariant_equal(fi, gi)) return {SearchStatus::NotEquivalent, {}, describe_difference(fi, gi)};
  if (f == g) return {SearchStatus::Found, empty_cert(f), ""};
  NormalFormCert nf = normal_form_cert(f), ng = normal_form_cert(g);
  DiagChain ch = diag_chain(nf.units, ng.units, opt);
  if (ch.status == SearchStatus::Exhausted) return {SearchStatus::Exhausted, {}, "diagonal chain search exhausted"};
  if (ch.status == SearchStatus::NotEquivalent) throw Error("internal: equal invariants but unrelated normal forms");
  Certificate c = concat(concat(nf.cert, lift_chain_to_cert(f.field(), nf.units, ch.moves)), reverse(ng.cert));
  return {SearchStatus::Found, c, ""};
}

namespace {

UnpointedPath reverse_path(const UnpointedPath& p) { return {p.n, reverse_t(p.A), reverse_t(p.B)}; }

Certificate unpointed_single(const UnpointedPath& p) {
  const Field f = p.A.field();
  return {CertKind::Unpointed, f, {to_step(p)}, to_end(eval_unpointed(p, Scalar::zero(f))),
          to_end(eval_unpointed(p, Scalar::one(f)))};
}

Certificate as_unpointed(const Certificate& c) {
  Certificate out = c;
  out.kind = CertKind::Unpointed;
  auto fix = [](CertEnd& e) {
    const UnpointedRat u = UnpointedRat::make(e.A, e.B[0], e.n);
    e = to_end(u);
  };
  fix(out.source);
  fix(out.target);
  return out;
}

// M in SL2(k) with M (a, b) = (c, d) for nonzero vectors.
Matrix<Scalar> sl2_moving(const Scalar& a, const Scalar& b, const Scalar& c, const Scalar& d) {
  const Field f = a.field();
  auto from_e1 = [&](const Scalar& x, const Scalar& y) {
    if (!x.is_zero()) return Matrix<Scalar>::from_rows(f, {{x, Scalar::zero(f)}, {y, x.inverse()}});
    return Matrix<Scalar>::from_rows(f, {{Scalar::zero(f), -y.inverse()}, {y, Scalar::zero(f)}});
  };
  return from_e1(c, d) * inverse(from_e1(a, b));
}

std::optional<Scalar> scaling_witness(const Scalar& r, int n) {
  const Field f = r.field();
  // lambda with lambda^(2n) = r
  if (f.is_rationals()) {
    const mpq_class& q = r.rational();
    if (sgn(q) <= 0) return std::nullopt;
    mpz_class a, b;
    const unsigned long k = 2UL * static_cast<unsigned long>(n);
    if (!mpz_root(a.get_mpz_t(), q.get_num().get_mpz_t(), k)) return std::nullopt;
    if (!mpz_root(b.get_mpz_t(), q.get_den().get_mpz_t(), k)) return std::nullopt;
    return Scalar(f, mpq_class(a, b));
  }
  for (std::uint64_t x = 1; x < f.characteristic(); ++x) {
    Scalar l(f, static_cast<long>(x));
    if (l.pow(2L * n) == r) return l;
  }
  return std::nullopt;
}

}  // namespace

ConnectResult unpointed_connect(const UnpointedRat& u, const UnpointedRat& v, const ChainOptions& opt) {
  const Field f = u.field();
  if (f != v.field()) throw Error("field mismatch");
  const int n = u.degree();
  const UnpointedInvariant ui = unpointed_invariant(u), vi = unpointed_invariant(v);
  if (!unpointed_invariant_equal(ui, vi)) {
    std::string why = ui.n != vi.n ? "degree " + std::to_string(ui.n) + " vs " + std::to_string(vi.n)
                      : !(ui.res_class == vi.res_class) ? "resultant class " + ui.res_class.str() + " vs " + vi.res_class.str()
                                                        : "Bezout form class " + ui.witt.key() + " vs " + vi.witt.key();
    return {SearchStatus::NotEquivalent, {}, why};
  }
  Certificate empty{CertKind::Unpointed, f, {}, to_end(u), to_end(u)};
  if (u == v) return {SearchStatus::Found, empty, ""};
  if (n == 0) {
    Matrix<Scalar> M = sl2_moving(u.A().coeff(0), u.B().coeff(0), v.A().coeff(0), v.B().coeff(0));
    return {SearchStatus::Found, unpointed_single(elementary_path(u.A(), u.B(), 0, sl2_factors(M))), ""};
  }
  const NormalizedUnpointed N1 = normalize_unpointed(u), N2 = normalize_unpointed(v);
  const RatFun& f1 = N1.pointed;
  const RatFun& f2 = N2.pointed;
  auto lam = scaling_witness(f2.resultant() / f1.resultant(), n);
  if (!lam) throw Error("internal: no scaling witness for equal unpointed invariants");
  // lambda^2 f2 = A2 / (lambda^-2 B2), reached from f2 through diag(lambda, 1/lambda).
  const Scalar l2inv = (*lam * *lam).inverse();
  const RatFun g = RatFun::make(f2.A(), f2.B().scaled(l2inv));
  ConnectResult pc = connect(f1, g, opt);
  if (pc.status != SearchStatus::Found) return pc;
  Matrix<Scalar> D = Matrix<Scalar>::from_rows(f, {{*lam, Scalar::zero(f)}, {Scalar::zero(f), lam->inverse()}});
  const UnpointedPath scale = elementary_path(f2.A(), f2.B(), n, sl2_factors(D));
  Certificate c = empty;
  auto append = [&](const Certificate& next) { c = concat(c, next); };
  if (!N1.alpha.empty()) append(unpointed_single(N1.path));
  append(as_unpointed(pc.cert));
  if (!(*lam * *lam).is_one()) append(unpointed_single(reverse_path(scale)));
  if (!N2.alpha.empty()) append(unpointed_single(reverse_path(N2.path)));
  c.target = to_end(v);
  return {SearchStatus::Found, c, ""};
}

PdPoint pd_base_point(Field f, int n, int d) {
  if (d < 1) throw Error("d must be positive");
  if (n == 0) return PdPoint::make(KPoly::one(f), std::vector<KPoly>(static_cast<std::size_t>(d), KPoly(f)));
  return PdPoint::make(KPoly::monomial(f, Scalar::one(f), n), std::vector<KPoly>(static_cast<std::size_t>(d), KPoly::one(f)));
}

Certificate pd_cert(const PdPoint& p) {
  const Field f = p.field();
  if (f.is_rationals()) throw Error("pd certificates are supported over prime fields only");
  if (p.d() < 2) throw Error("pd certificates require d >= 2");
  const int n = p.degree();
  Certificate out{CertKind::Pd, f, {}, to_end(p), to_end(p)};
  if (n == 0) return out;
  const KPoly& A = p.A;
  std::vector<KPoly> B = p.B;
  auto push = [&](const KTPoly& At, const std::vector<KTPoly>& Bt) {
    PdPath path = PdPath::make(At, Bt);
    out.steps.push_back(to_step(path));
  };
  auto lift_all = [](const std::vector<KPoly>& v) {
    std::vector<KTPoly> o;
    for (const auto& x : v) o.push_back(lift_t(x));
    return o;
  };
  // 1. B_1 += sum c_j B_j with c_j chosen by CRT so that B_1 becomes a unit modulo every prime factor of A.
  if (poly_gcd(A, B[0]).degree() != 0) {
    std::vector<KPoly> primes;
    for (const auto& [P, e] : factor_fp(A)) primes.push_back(P);
    KPoly rad = KPoly::one(f);
    for (const auto& P : primes) rad = rad * P;
    std::vector<KPoly> c(B.size(), KPoly(f));
    for (const auto& P : primes) {
      if (!divmod(B[0], P).second.is_zero()) continue;
      std::size_t j = 1;
      while (j < B.size() && divmod(B[j], P).second.is_zero()) ++j;
      if (j == B.size()) throw Error("internal: tuple is not unimodular at a prime");
      // Idempotent e_P: 1 mod P, 0 mod the other prime factors.
      const KPoly other = divmod(rad, P).first;
      const Xgcd g = xgcd(other, P);
      c[j] = c[j] + g.s * other;
    }
    KPoly B1 = B[0];
    for (std::size_t j = 1; j < B.size(); ++j) B1 = B1 + c[j] * B[j];
    B1 = divmod(B1, A).second;
    if (poly_gcd(A, B1).degree() != 0) throw Error("internal: CRT adjustment failed");
    std::vector<KTPoly> Bt = lift_all(B);
    Bt[0] = lift_t(B[0]) + lift_t(B1 - B[0]).scaled(t_poly(f));
    push(lift_t(A), Bt);
    B[0] = B1;
  }
  const KPoly one = KPoly::one(f);
  // 2. B_j -> 1 for j >= 2, valid since B_1 is coprime to A.
  bool rest_one = true;
  for (std::size_t j = 1; j < B.size(); ++j) rest_one = rest_one && B[j] == one;
  if (!rest_one) {
    std::vector<KTPoly> Bt = lift_all(B);
    for (std::size_t j = 1; j < B.size(); ++j)
      Bt[j] = lift_t(B[j]).scaled(one_minus_t(f)) + KTPoly::constant(f, t_poly(f));
    push(lift_t(A), Bt);
    for (std::size_t j = 1; j < B.size(); ++j) B[j] = one;
  }
  // 3. B_1 -> 1.
  if (!(B[0] == one)) {
    std::vector<KTPoly> Bt = lift_all(B);
    Bt[0] = lift_t(B[0]).scaled(one_minus_t(f)) + KTPoly::constant(f, t_poly(f));
    push(lift_t(A), Bt);
    B[0] = one;
  }
  // 4. A -> X^n.
  const KPoly Xn = KPoly::monomial(f, Scalar::one(f), n);
  if (!(A == Xn)) push(lift_t(A).scaled(one_minus_t(f)) + lift_t(Xn).scaled(t_poly(f)), lift_all(B));
  out.target = to_end(pd_base_point(f, n, p.d()));
  return out;
}

namespace {

Matrix<KPoly> embed_2x2(const Matrix<KPoly>& Q, int n, int pos) {
  Matrix<KPoly> P = Matrix<KPoly>::identity(Q.field(), n);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) P(pos + i, pos + j) = Q(i, j);
  return P;
}

// Paths from S to a diagonal matrix.
std::vector<Matrix<KPoly>> to_diagonal(Matrix<Scalar>& S) {
  std::vector<Matrix<KPoly>> steps;
  const Field f = S.field();
  for (int guard = 0; guard < 4; ++guard) {
    Diagonalization d = diagonalize(S);
    if (!d.oplog.empty()) steps.push_back(oplog_path(S, d.oplog));
    S = d.normal;
    if (d.form.hblocks == 0) return steps;
    // Alternating planes [[0, b], [b, 0]] become [[1, b], [b, 0]] along [[T, b], [b, 0]].
    Matrix<KPoly> path = lift_t(S);
    int pos = 0;
    for (int b : d.layout) {
      if (b == 2) {
        path(pos, pos) = t_poly(f);
        S(pos, pos) = Scalar::one(f);
      }
      pos += b;
    }
    steps.push_back(path);
  }
  throw Error("internal: diagonalization did not settle");
}

}  // namespace

Verdict verify_forms(const FormChain& c) {
  const Field f = c.source.field();
  if (!c.source.is_symmetric() || !c.target.is_symmetric()) return {false, "endpoints are not symmetric"};
  if (determinant(c.source).is_zero()) return {false, "degenerate source"};
  const Scalar zero = Scalar::zero(f), one = Scalar::one(f);
  Matrix<Scalar> cur = c.source;
  for (std::size_t i = 0; i < c.steps.size(); ++i) {
    const auto& s = c.steps[i];
    if (!s.is_symmetric()) return {false, "non-symmetric step " + std::to_string(i)};
    if (determinant(s).degree() != 0) return {false, "non-constant determinant at step " + std::to_string(i)};
    if (!(eval_t(s, zero) == cur)) return {false, "endpoint mismatch at step " + std::to_string(i)};
    cur = eval_t(s, one);
  }
  if (!(cur == c.target)) return {false, "endpoint mismatch at target"};
  return {true, "ok"};
}

std::optional<FormChain> connect_forms(const Matrix<Scalar>& S1, const Matrix<Scalar>& S2, const ChainOptions& opt) {
  const Field f = S1.field();
  if (f != S2.field() || S1.rows() != S2.rows()) return std::nullopt;
  if (!(determinant(S1) == determinant(S2))) return std::nullopt;
  if (!stable_equal(stable_invariant(S1), stable_invariant(S2))) return std::nullopt;
  const int n = S1.rows();
  FormChain out{{}, S1, S2};
  Matrix<Scalar> D1 = S1, D2 = S2;
  std::vector<Matrix<KPoly>> l1 = to_diagonal(D1), l2 = to_diagonal(D2);
  std::vector<Scalar> u1, u2;
  for (int i = 0; i < n; ++i) {
    u1.push_back(D1(i, i));
    u2.push_back(D2(i, i));
  }
  DiagChain ch = diag_chain(u1, u2, opt);
  if (ch.status != SearchStatus::Found) return std::nullopt;
  out.steps = l1;
  Matrix<Scalar> cur = D1;
  for (const auto& mv : ch.moves) {
    Matrix<KPoly> P = embed_2x2(elementary_product(f, sl2_factors(mv.P)), n, mv.pos);
    Matrix<KPoly> step = P.transpose() * lift_t(cur) * P;
    out.steps.push_back(step);
    cur = eval_t(step, Scalar::one(f));
  }
  for (auto it = l2.rbegin(); it != l2.rend(); ++it) out.steps.push_back(reverse_t(*it));
  return out;
}

}  // namespace p1h
