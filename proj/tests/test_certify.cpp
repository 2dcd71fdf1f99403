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

#include <random>

#include "doctest.h"
#include "p1h/certify.hpp"
#include "support.hpp"

using namespace p1h;
using namespace p1h::testing;

namespace {

const Field Q = Field::rationals();
const Field F2 = Field::prime(2);
const Field F3 = Field::prime(3);
const Field F5 = Field::prime(5);

Scalar q(long a, long b = 1) { return Scalar(Q, mpq_class(a, b)); }
RatFun R(Field f, std::vector<long> a, std::vector<long> b) { return RatFun::make(poly(f, a), poly(f, b)); }

KTPoly XT(Field f, std::vector<std::vector<long>> c) {
  std::vector<KPoly> v;
  for (auto& x : c) v.push_back(poly(f, x));
  return KTPoly(f, v);
}

Certificate pointed_cert(const RatPath& F) {
  const Field f = F.field();
  return {CertKind::Pointed, f, {to_step(F)}, to_end(eval_path(F, Scalar::zero(f))), to_end(eval_path(F, Scalar::one(f)))};
}

bool ends_are(const Certificate& c, const RatFun& f, const RatFun& g) {
  return RatFun::make(c.source.A, c.source.B[0]) == f && RatFun::make(c.target.A, c.target.B[0]) == g;
}

std::vector<RatFun> all_upto(Field f, int n) {
  std::vector<RatFun> out;
  for (int k = 1; k <= n; ++k)
    for (auto& g : all_ratfuns(f, k)) out.push_back(g);
  return out;
}

}  // namespace

TEST_CASE("example homotopies verify") {
  // Leading-term homotopy (X^2 + T a1 X + T a0)/b0.
  RatPath F = RatPath::make(XT(Q, {{0, 1}, {0, 3}, {1}}), XT(Q, {{2}}));
  Certificate c = pointed_cert(F);
  CHECK(verify(c).ok);
  CHECK(ends_are(c, R(Q, {0, 0, 1}, {2}), R(Q, {1, 3, 1}, {2})));
  // X^3/(T b2 X^2 + T b1 X + b0).
  RatPath G = RatPath::make(XT(Q, {{}, {}, {}, {1}}), XT(Q, {{5}, {0, 2}, {0, -1}}));
  Certificate d = pointed_cert(G);
  CHECK(verify(d).ok);
  CHECK(ends_are(d, R(Q, {0, 0, 0, 1}, {5}), R(Q, {0, 0, 0, 1}, {5, 2, -1})));
  // Translation (A + T h B)/B.
  RatFun f = R(Q, {1, 0, 1}, {3, 1});
  RatPath H = RatPath::make(lift_t(f.A()) + lift_t(f.B()).scaled(KPoly(Q, {q(0), q(7)})), lift_t(f.B()));
  Certificate e = pointed_cert(H);
  CHECK(verify(e).ok);
  CHECK(ends_are(e, f, ga_act(q(7), f)));
}

TEST_CASE("verifier diagnostics") {
  Certificate bad{CertKind::Pointed, Q, {{2, XT(Q, {{0, 1}, {}, {1}}), {XT(Q, {{}, {1}})}, {}}},
                  {2, poly(Q, {0, 0, 1}), {poly(Q, {0, 1})}}, {2, poly(Q, {1, 0, 1}), {poly(Q, {0, 1})}}};
  Verdict v = verify(bad);
  CHECK_FALSE(v.ok);
  CHECK(v.diagnostic == "non-constant resultant at step 0");

  NormalFormCert nf = normal_form_cert(R(Q, {1, 3, 1}, {2}));
  REQUIRE(nf.cert.steps.size() >= 2);
  CHECK(verify(nf.cert).ok);
  Certificate shuffled = nf.cert;
  std::swap(shuffled.steps[0], shuffled.steps[1]);
  Verdict s = verify(shuffled);
  CHECK_FALSE(s.ok);
  CHECK(s.diagnostic.rfind("endpoint mismatch", 0) == 0);

  Certificate wrong_target = nf.cert;
  wrong_target.target = to_end(R(Q, {0, 1}, {1}));
  CHECK_FALSE(verify(wrong_target).ok);

  Certificate empty{CertKind::Pointed, Q, {}, to_end(R(Q, {0, 1}, {1})), to_end(R(Q, {0, 1}, {2}))};
  CHECK_FALSE(verify(empty).ok);
}

TEST_CASE("normal form certificates") {
  NormalFormCert a = normal_form_cert(R(Q, {0, 1}, {3}));
  CHECK(a.cert.steps.empty());
  CHECK(a.units == std::vector<Scalar>{q(3)});

  NormalFormCert b = normal_form_cert(R(Q, {0, 0, 1}, {5}));
  CHECK(verify(b.cert).ok);
  CHECK(b.units.size() == 2);
  CHECK(RatFun::make(b.cert.target.A, b.cert.target.B[0]) == unit_sum(Q, b.units));
  CHECK(invariant_equal(pointed_invariant(R(Q, {0, 0, 1}, {5})), pointed_invariant(unit_sum(Q, b.units))));

  NormalFormCert c = normal_form_cert(R(Q, {1, 3, 1}, {2}));
  CHECK(verify(c.cert).ok);
  CHECK(c.cert.steps[0].A == lift_t(poly(Q, {0, 0, 1})) + XT(Q, {{1, -1}, {3, -3}}));

  std::mt19937_64 rng(3);
  for (Field f : {Q, F3, F5})
    for (int it = 0; it < 40; ++it) {
      RatFun g = rnd_ratfun(f, 1 + static_cast<int>(rng() % 4), rng);
      NormalFormCert n = normal_form_cert(g);
      CHECK(verify(n.cert).ok);
      CHECK(RatFun::make(n.cert.source.A, n.cert.source.B[0]) == g);
      CHECK(invariant_equal(pointed_invariant(g), pointed_invariant(unit_sum(f, n.units))));
    }
}

TEST_CASE("diagonal chains") {
  DiagChain e = diag_chain({q(1), q(3)}, {q(1), q(3)});
  CHECK(e.status == SearchStatus::Found);
  CHECK(e.moves.empty());

  DiagChain m = diag_chain({q(1), q(1)}, {q(2), q(1, 2)});
  REQUIRE(m.status == SearchStatus::Found);
  CHECK(apply_moves({q(1), q(1)}, m.moves) == std::vector<Scalar>{q(2), q(1, 2)});

  CHECK(diag_chain({q(1), q(1)}, {q(-1), q(-1)}).status == SearchStatus::NotEquivalent);
  CHECK(diag_chain({q(1), q(3)}, {q(3), q(1)}).status == SearchStatus::Found);
  CHECK(diag_chain({q(1), q(5)}, {q(5), q(1)}).status == SearchStatus::Found);
  CHECK(diag_chain({q(1), q(2)}, {q(3), q(2, 3)}).status == SearchStatus::Found);
  CHECK(diag_chain({q(1), q(1), q(1)}, {q(2), q(3), q(1, 6)}).status == SearchStatus::Found);

  // Same discriminant class but different determinants: congruent, yet no SL2 chain.
  Scalar one(F5, 1L), two(F5, 2L), three(F5, 3L);
  CHECK(diag_chain({one, one}, {two, two}).status == SearchStatus::NotEquivalent);
  DiagChain f5 = diag_chain({one, one}, {two, three});
  REQUIRE(f5.status == SearchStatus::Found);
  CHECK(apply_moves({one, one}, f5.moves) == std::vector<Scalar>{two, three});
}

TEST_CASE("SL2 factorizations") {
  std::mt19937_64 rng(5);
  for (Field f : {Q, F2, F3, F5})
    for (int it = 0; it < 50; ++it) {
      Scalar a = rnd_scalar(f, rng), b = rnd_scalar(f, rng), c = rnd_scalar(f, rng);
      if (a.is_zero()) continue;
      Scalar d = (Scalar::one(f) + b * c) / a;
      Matrix<Scalar> P = Matrix<Scalar>::from_rows(f, {{a, b}, {c, d}});
      std::vector<Elementary> fs = sl2_factors(P);
      CHECK(fs.size() <= 4);
      Matrix<KPoly> M = elementary_product(f, fs);
      CHECK(eval_t(M, Scalar::one(f)) == P);
      CHECK(eval_t(M, Scalar::zero(f)) == Matrix<Scalar>::identity(f, 2));
    }
}

TEST_CASE("lifted chains") {
  CHECK(lift_chain_to_cert(Q, {q(1), q(1)}, {}).steps.empty());
  DiagChain m = diag_chain({q(1), q(1)}, {q(2), q(1, 2)});
  Certificate c = lift_chain_to_cert(Q, {q(1), q(1)}, m.moves);
  CHECK(verify(c).ok);
  CHECK(c.steps.size() >= 1);
  CHECK(c.steps.size() <= 3);
  CHECK(ends_are(c, unit_sum(Q, {q(1), q(1)}), unit_sum(Q, {q(2), q(1, 2)})));

  DiagChain m3 = diag_chain({q(1), q(1), q(7)}, {q(2), q(1, 2), q(7)});
  Certificate c3 = lift_chain_to_cert(Q, {q(1), q(1), q(7)}, m3.moves);
  CHECK(verify(c3).ok);
  CHECK(ends_are(c3, unit_sum(Q, {q(1), q(1), q(7)}), unit_sum(Q, {q(2), q(1, 2), q(7)})));
  for (const auto& s : c3.steps) CHECK(s.n == 3);
}

TEST_CASE("connect") {
  RatFun f = R(Q, {1, 3, 1}, {2});
  ConnectResult self = connect(f, f);
  CHECK(self.status == SearchStatus::Found);
  CHECK(self.cert.steps.empty());

  RatFun x = RatFun::make(KPoly::x(Q), KPoly::one(Q));
  ConnectResult fc = connect(oplus(x, x), R(Q, {-1, 0, 1}, {0, 1}));
  CHECK(fc.status == SearchStatus::Found);
  CHECK(fc.cert.steps.empty());

  ConnectResult ne = connect(R(Q, {0, 1}, {1}), R(Q, {0, 1}, {2}));
  CHECK(ne.status == SearchStatus::NotEquivalent);
  CHECK(ne.reason.find("resultant") != std::string::npos);

  std::mt19937_64 rng(9);
  int found = 0;
  for (int it = 0; it < 30; ++it) {
    RatFun g = rnd_ratfun(Q, 1 + static_cast<int>(rng() % 3), rng, 3);
    RatFun h = ga_act(rnd_scalar(Q, rng), g);
    ConnectResult r = connect(g, h);
    REQUIRE(r.status != SearchStatus::NotEquivalent);
    if (r.status == SearchStatus::Found) {
      ++found;
      CHECK(verify(r.cert).ok);
      CHECK(ends_are(r.cert, g, h));
    }
  }
  CHECK(found == 30);
}

TEST_CASE("connect is complete over small fields") {
  struct Case {
    Field f;
    int n;
  };
  for (Case cs : {Case{F2, 1}, Case{F2, 2}, Case{F2, 3}, Case{F3, 1}, Case{F3, 2}}) {
    std::vector<RatFun> pts = all_ratfuns(cs.f, cs.n);
    // Connect every point to the first representative of its class.
    std::vector<RatFun> reps;
    for (const auto& g : pts) {
      bool matched = false;
      for (const auto& r : reps) {
        const bool eq = pointed_equiv(g, r);
        ConnectResult c = connect(g, r);
        CHECK((c.status == SearchStatus::Found) == eq);
        CHECK((c.status == SearchStatus::NotEquivalent) == !eq);
        if (c.status == SearchStatus::Found) {
          Verdict v = verify(c.cert);
          CHECK(v.ok);
          matched = true;
          break;
        }
      }
      if (!matched) reps.push_back(g);
    }
  }
}

TEST_CASE("reversal and sums of certificates") {
  std::mt19937_64 rng(11);
  for (Field f : {Q, F3, F5})
    for (int it = 0; it < 15; ++it) {
      RatFun g = rnd_ratfun(f, 1 + static_cast<int>(rng() % 3), rng, 3);
      NormalFormCert n = normal_form_cert(g);
      Certificate r = reverse(n.cert);
      CHECK(verify(r).ok);
      CHECK(RatFun::make(r.target.A, r.target.B[0]) == g);
      RatFun h = rnd_ratfun(f, 1 + static_cast<int>(rng() % 2), rng, 3);
      Certificate s = embed(RatFun::identity(f), n.cert, h);
      CHECK(verify(s).ok);
      CHECK(ends_are(s, oplus(g, h), oplus(unit_sum(f, n.units), h)));
      Certificate t = embed(h, n.cert, RatFun::identity(f));
      CHECK(verify(t).ok);
    }
}

TEST_CASE("unpointed certificates") {
  UnpointedRat a = UnpointedRat::from_pointed(R(Q, {0, 1}, {1}));
  UnpointedRat b = UnpointedRat::from_pointed(R(Q, {0, 1}, {4}));
  ConnectResult r = unpointed_connect(a, b);
  REQUIRE(r.status == SearchStatus::Found);
  Verdict v = verify(r.cert);
  CHECK(v.ok);
  CHECK(UnpointedRat::make(r.cert.source.A, r.cert.source.B[0], 1) == a);
  CHECK(UnpointedRat::make(r.cert.target.A, r.cert.target.B[0], 1) == b);

  UnpointedRat c = UnpointedRat::from_pointed(R(Q, {0, 1}, {2}));
  CHECK(unpointed_connect(a, c).status == SearchStatus::NotEquivalent);

  // 1/X against -X.
  UnpointedRat inv = UnpointedRat::make(poly(Q, {1}), poly(Q, {0, 1}), 1);
  UnpointedRat neg = UnpointedRat::make(poly(Q, {0, -1}), poly(Q, {1}), 1);
  ConnectResult in = unpointed_connect(inv, neg);
  REQUIRE(in.status == SearchStatus::Found);
  CHECK(verify(in.cert).ok);

  std::mt19937_64 rng(13);
  for (Field f : {Q, F3, F5})
    for (int it = 0; it < 15; ++it) {
      RatFun g = rnd_ratfun(f, 1 + static_cast<int>(rng() % 3), rng, 3);
      UnpointedRat u = UnpointedRat::from_pointed(g);
      Scalar x = rnd_scalar(f, rng, true), y = rnd_scalar(f, rng);
      // [[x, y], [0, 1/x]] then [[1, 0], [y, 1]]
      UnpointedRat w = UnpointedRat::make(u.A().scaled(x) + u.B().scaled(y), u.B().scaled(x.inverse()), u.degree());
      w = UnpointedRat::make(w.A(), w.A().scaled(y) + w.B(), w.degree());
      ConnectResult t = unpointed_connect(u, w);
      REQUIRE(t.status == SearchStatus::Found);
      CHECK(verify(t.cert).ok);
      CHECK(UnpointedRat::make(t.cert.target.A, t.cert.target.B[0], u.degree()) == w);
    }

  // Degree zero: constants.
  UnpointedRat k1 = UnpointedRat::make(poly(F5, {2}), poly(F5, {3}), 0);
  UnpointedRat k2 = UnpointedRat::make(poly(F5, {1}), poly(F5, {0}), 0);
  ConnectResult z = unpointed_connect(k1, k2);
  REQUIRE(z.status == SearchStatus::Found);
  CHECK(verify(z.cert).ok);
}

TEST_CASE("pd certificates") {
  PdPoint base = pd_base_point(F3, 2, 2);
  CHECK(pd_cert(base).steps.empty());
  CHECK(verify(pd_cert(base)).ok);

  PdPoint p = PdPoint::make(poly(F3, {0, 0, 1}), {poly(F3, {0, 1}), poly(F3, {1})});
  Certificate c = pd_cert(p);
  Verdict v = verify(c);
  CHECK(v.ok);
  CHECK(c.target.A == base.A);
  CHECK(c.target.B == base.B);

  // A = P^2 with P = X^2 + 1 irreducible over F3; B1 = 0 mod P, B2 a unit mod P.
  KPoly P = poly(F3, {1, 0, 1});
  PdPoint sq = PdPoint::make(P * P, {P * poly(F3, {1, 1}), poly(F3, {2, 1}), poly(F3, {0, 0, 1})});
  Certificate cs = pd_cert(sq);
  CHECK(verify(cs).ok);
  CHECK(cs.steps.size() == 4);

  // Mixed prime factors where B1 vanishes modulo only some of them.
  KPoly A = poly(F5, {0, 1}) * poly(F5, {1, 1}) * poly(F5, {2, 0, 1});
  PdPoint mix = PdPoint::make(A, {poly(F5, {0, 1}) * poly(F5, {1, 1}), poly(F5, {3}), poly(F5, {0, 1})});
  CHECK(verify(pd_cert(mix)).ok);

  std::mt19937_64 rng(21);
  for (int it = 0; it < 40; ++it) {
    const int n = 1 + static_cast<int>(rng() % 4);
    KPoly a = rnd_poly(F3, n, rng, true);
    std::vector<KPoly> bs;
    for (int j = 0; j < 2; ++j) bs.push_back(rnd_poly(F3, n - 1, rng));
    for (auto& b : bs) b = divmod(b, a).second;
    try {
      PdPoint pt = PdPoint::make(a, bs);
      Certificate cc = pd_cert(pt);
      CHECK(verify(cc).ok);
      // Stored cofactors are replayed by the verifier too.
      for (const auto& s : cc.steps) CHECK(!s.cofactors.empty());
    } catch (const RejectedPd&) {
    }
  }
  CHECK_THROWS(pd_cert(PdPoint::make(poly(Q, {0, 1}), {poly(Q, {1}), poly(Q, {0})})));

  Certificate broken = c;
  broken.steps[0].B[0] = XT(F3, {{0, 1}});
  Verdict bv = verify(broken);
  CHECK_FALSE(bv.ok);
}

TEST_CASE("form chains") {
  for (Field f : {Q, F2, F3, F5}) {
    std::mt19937_64 rng(31);
    for (int it = 0; it < 10; ++it) {
      RatFun g = rnd_ratfun(f, 2 + static_cast<int>(rng() % 2), rng, 3);
      RatFun h = ga_act(rnd_scalar(f, rng), g);
      Matrix<Scalar> S1 = bezout_form(g), S2 = bezout_form(h);
      std::optional<FormChain> ch = connect_forms(S1, S2);
      if (f.is_rationals() && !ch) continue;
      REQUIRE(ch.has_value());
      CHECK(verify_forms(*ch).ok);
    }
  }
  // Unequal determinants.
  Matrix<Scalar> a = Matrix<Scalar>::from_rows(Q, {{q(1), q(0)}, {q(0), q(1)}});
  Matrix<Scalar> b = Matrix<Scalar>::from_rows(Q, {{q(1), q(0)}, {q(0), q(2)}});
  CHECK_FALSE(connect_forms(a, b).has_value());
  // Over F2 the alternating plane is joined to the identity through [[T, 1], [1, 0]].
  Scalar o2 = Scalar::one(F2), z2 = Scalar::zero(F2);
  Matrix<Scalar> H2 = Matrix<Scalar>::from_rows(F2, {{z2, o2}, {o2, z2}});
  Matrix<Scalar> I2 = Matrix<Scalar>::identity(F2, 2);
  std::optional<FormChain> h2 = connect_forms(H2, I2);
  REQUIRE(h2.has_value());
  CHECK(verify_forms(*h2).ok);
}
