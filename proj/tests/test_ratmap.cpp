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

#include "doctest.h"
#include "p1h/ratmap.hpp"
#include "support.hpp"

using namespace p1h;
using namespace p1h::testing;

namespace {

const Field Q = Field::rationals();
const Field F3 = Field::prime(3);
const Field F5 = Field::prime(5);

RatFun R(Field f, std::vector<long> a, std::vector<long> b) { return RatFun::make(poly(f, a), poly(f, b)); }

// X-polynomial with coefficients in k[T], lowest X-degree first.
KTPoly XT(Field f, std::vector<std::vector<long>> c) {
  std::vector<KPoly> v;
  for (auto& x : c) v.push_back(poly(f, x));
  return KTPoly(f, v);
}

}  // namespace

TEST_CASE("mk_pointed examples") {
  RatFun f = R(Q, {-1, 0, 1}, {0, 1});
  CHECK(f.resultant() == Scalar(Q, -1L));
  CHECK(f.degree() == 2);
  try {
    R(Q, {0, 0, 1}, {0, 1});
    FAIL("expected rejection");
  } catch (const RejectedPoint& e) {
    CHECK(e.resultant().is_zero());
  }
  RatPath F = RatPath::make(XT(Q, {{}, {0, 1}, {1}}), XT(Q, {{1}}));
  CHECK(F.resultant() == KPoly::one(Q));
  try {
    RatPath::make(XT(Q, {{0, 1}, {}, {1}}), XT(Q, {{}, {1}}));
    FAIL("expected rejection");
  } catch (const RejectedPath& e) {
    CHECK(e.resultant() == poly(Q, {0, 1}));
  }
  CHECK_THROWS_AS(RatFun::make(poly(Q, {0, 2}), poly(Q, {1})), Error);
  CHECK_THROWS_AS(RatFun::make(poly(Q, {0, 1}), poly(Q, {0, 1})), Error);
}

TEST_CASE("oplus examples") {
  RatFun X = R(Q, {0, 1}, {1});
  CHECK(oplus(X, X) == R(Q, {-1, 0, 1}, {0, 1}));
  std::mt19937_64 rng(7);
  for (int it = 0; it < 20; ++it) {
    RatFun g = rnd_ratfun(Q, 1 + static_cast<int>(rng() % 3), rng);
    RatFun left = oplus(X, g);
    CHECK(left.A() == g.A() * KPoly::x(Q) - g.B());
    CHECK(left.B() == g.A());
    RatFun right = oplus(g, X);
    CHECK(right.A() == g.A() * KPoly::x(Q) - g.V());
    CHECK(right.B() == g.B() * KPoly::x(Q) + g.U());
  }
}

TEST_CASE("oplus keeps an exact Bezout pair and resultant") {
  std::mt19937_64 rng(8);
  for (Field f : {Q, F3, Field::prime(2)})
    for (int it = 0; it < 200; ++it) {
      RatFun a = rnd_ratfun(f, static_cast<int>(rng() % 3), rng);
      RatFun b = rnd_ratfun(f, static_cast<int>(rng() % 3), rng);
      RatFun c = rnd_ratfun(f, static_cast<int>(rng() % 3), rng);
      RatFun s = oplus(a, b);
      RatFun check = RatFun::make(s.A(), s.B());
      CHECK(check.U() == s.U());
      CHECK(check.V() == s.V());
      CHECK(check.resultant() == s.resultant());
      CHECK(s.degree() == a.degree() + b.degree());
      Scalar expected = a.resultant() * b.resultant();
      if (a.degree() * b.degree() % 2) expected = -expected;
      CHECK(s.resultant() == expected);
      RatFun l = oplus(oplus(a, b), c), r = oplus(a, oplus(b, c));
      CHECK(l == r);
      CHECK(l.U() == r.U());
      CHECK(l.V() == r.V());
      CHECK(oplus(RatFun::identity(f), a) == a);
      CHECK(oplus(a, RatFun::identity(f)) == a);
    }
}

TEST_CASE("cf_expand examples") {
  CFExpansion e = cf_expand(R(Q, {-1, 0, 1}, {0, 1}));
  REQUIRE(e.size() == 2);
  CHECK(e[0] == CFTerm{poly(Q, {0, 1}), Scalar(Q, 1L)});
  CHECK(e[1] == CFTerm{poly(Q, {0, 1}), Scalar(Q, 1L)});
  CFExpansion p = cf_expand(R(Q, {0, 2, 0, 1}, {5}));
  REQUIRE(p.size() == 1);
  CHECK(p[0] == CFTerm{poly(Q, {0, 2, 0, 1}), Scalar(Q, 5L)});
  CFExpansion u = cf_expand(R(Q, {0, 1}, {7}));
  REQUIRE(u.size() == 1);
  CHECK(u[0].b == Scalar(Q, 7L));
}

TEST_CASE("cf round trip and concatenation") {
  for (int n = 1; n <= 3; ++n)
    for (const RatFun& f : all_ratfuns(F3, n)) {
      CFExpansion e = cf_expand(f);
      int deg = 0;
      for (auto& t : e) {
        CHECK(t.P.is_monic());
        CHECK(t.P.degree() >= 1);
        deg += t.P.degree();
      }
      CHECK(deg == n);
      CHECK(cf_assemble(e) == f);
    }
  std::mt19937_64 rng(9);
  for (int it = 0; it < 200; ++it) {
    RatFun f = rnd_ratfun(Q, 1 + static_cast<int>(rng() % 4), rng);
    CHECK(cf_assemble(cf_expand(f)) == f);
    RatFun g = rnd_ratfun(Q, 1 + static_cast<int>(rng() % 3), rng);
    CFExpansion ef = cf_expand(f), eg = cf_expand(g), es = cf_expand(oplus(f, g));
    ef.insert(ef.end(), eg.begin(), eg.end());
    CHECK(es == ef);
  }
}

TEST_CASE("compose examples and laws") {
  std::mt19937_64 rng(10);
  RatFun X = R(Q, {0, 1}, {1});
  for (int it = 0; it < 30; ++it) {
    RatFun f = rnd_ratfun(Q, 1 + static_cast<int>(rng() % 3), rng);
    Scalar a = rnd_scalar(Q, rng, true);
    RatFun xa = RatFun::make(KPoly::x(Q), KPoly::constant(Q, a));
    CHECK(compose(xa, f) == RatFun::make(f.A(), f.B().scaled(a)));
    CHECK(compose(f, X) == f);
    CHECK(compose(X, f) == f);
  }
  RatFun x2 = R(Q, {0, 0, 1}, {1});
  CHECK(compose(x2, x2) == R(Q, {0, 0, 0, 0, 1}, {1}));
  for (Field f : {Q, F5})
    for (int it = 0; it < 40; ++it) {
      RatFun a = rnd_ratfun(f, 1 + static_cast<int>(rng() % 2), rng);
      RatFun b = rnd_ratfun(f, 1 + static_cast<int>(rng() % 2), rng);
      RatFun c = rnd_ratfun(f, 1 + static_cast<int>(rng() % 2), rng);
      RatFun l = compose(compose(a, b), c);
      CHECK(l == compose(a, compose(b, c)));
      CHECK(l.degree() == a.degree() * b.degree() * c.degree());
    }
}

TEST_CASE("ga_act and phi_n") {
  RatFun X = R(Q, {0, 1}, {1});
  CHECK(ga_act(Scalar(Q, 0L), X) == X);
  CHECK(ga_act(Scalar(Q, 1L), X) == R(Q, {1, 1}, {1}));
  // n = 1: (X + a)/b has phi = a/b.
  RatFun f1 = R(Q, {3, 1}, {2});
  CHECK(phi_n(f1) == Scalar(Q, mpq_class(3, 2)));
  std::mt19937_64 rng(11);
  for (int it = 0; it < 200; ++it) {
    RatFun f = rnd_ratfun(F5, 1 + static_cast<int>(rng() % 3), rng);
    Scalar h = rnd_scalar(F5, rng), h2 = rnd_scalar(F5, rng);
    RatFun g = ga_act(h, f);
    RatFun check = RatFun::make(g.A(), g.B());
    CHECK(check.resultant() == f.resultant());
    CHECK(check.U() == g.U());
    CHECK(check.V() == g.V());
    CHECK(ga_act(h, ga_act(h2, f)) == ga_act(h + h2, f));
    CHECK(phi_n(g) == phi_n(f) + h);
    CHECK(phi_n(f) == phi_n_laurent(f));
  }
  for (int it = 0; it < 100; ++it) {
    RatFun f = rnd_ratfun(Q, 1 + static_cast<int>(rng() % 4), rng);
    CHECK(phi_n(ga_act(Scalar::one(Q), f)) - phi_n(f) == Scalar::one(Q));
    CHECK(phi_n(f) == phi_n_laurent(f));
  }
  CHECK_THROWS_AS(phi_n(RatFun::identity(Q)), Error);
}

TEST_CASE("eval_path on the leading-term and denominator homotopies") {
  // (X^2 + T a1 X + T a0)/b0
  RatPath F = RatPath::make(XT(Q, {{0, 4}, {0, 3}, {1}}), XT(Q, {{2}}));
  CHECK(eval_path(F, Scalar(Q, 0L)) == R(Q, {0, 0, 1}, {2}));
  CHECK(eval_path(F, Scalar(Q, 1L)) == R(Q, {4, 3, 1}, {2}));
  // X^3/(T b2 X^2 + T b1 X + b0)
  RatPath G = RatPath::make(XT(Q, {{}, {}, {}, {1}}), XT(Q, {{5}, {0, 2}, {0, -1}}));
  CHECK(eval_path(G, Scalar(Q, 0L)) == R(Q, {0, 0, 0, 1}, {5}));
  CHECK(eval_path(G, Scalar(Q, 1L)) == R(Q, {0, 0, 0, 1}, {5, 2, -1}));
  RatFun f = R(Q, {-1, 0, 1}, {0, 1});
  RatPath c = constant_path(f);
  for (long t = -2; t <= 2; ++t) CHECK(eval_path(c, Scalar(Q, t)) == f);
}

TEST_CASE("path endpoints share degree and resultant") {
  std::mt19937_64 rng(12);
  for (int it = 0; it < 100; ++it) {
    RatFun f = rnd_ratfun(F5, 1 + static_cast<int>(rng() % 3), rng);
    // Translation by h(T) and the sum with a leading-term homotopy.
    KPoly h = rnd_poly(F5, 2, rng);
    RatPath F = ga_act(h, constant_path(f));
    RatPath G = RatPath::make(KTPoly(F5, {KPoly(F5, {Scalar::zero(F5), Scalar::one(F5)}), KPoly::one(F5)}),
                              KTPoly::constant(F5, KPoly::one(F5)));
    RatPath H = oplus(F, G);
    RatPath check = RatPath::make(H.A(), H.B());
    CHECK(check.resultant() == H.resultant());
    for (long t = 0; t < 5; ++t) {
      RatFun e = eval_path(H, Scalar(F5, t));
      CHECK(e.degree() == H.degree());
      CHECK(e.resultant() == eval_path(H, Scalar(F5, 0L)).resultant());
      CHECK(RatFun::make(e.A(), e.B()).V() == e.V());
    }
    RatPath rev = reverse_path(H);
    CHECK(eval_path(rev, Scalar::zero(F5)) == eval_path(H, Scalar::one(F5)));
    CHECK(eval_path(rev, Scalar::one(F5)) == eval_path(H, Scalar::zero(F5)));
  }
}

TEST_CASE("unpointed canonical scaling") {
  UnpointedRat u = UnpointedRat::make(poly(Q, {0, 2}), poly(Q, {4}), 1);
  CHECK(u.A() == poly(Q, {0, 1}));
  CHECK(u.B() == poly(Q, {2}));
  CHECK(u.is_pointed());
  UnpointedRat v = UnpointedRat::make(poly(Q, {0, 4}), poly(Q, {8}), 1);
  CHECK(u == v);
  CHECK_THROWS_AS(UnpointedRat::make(poly(Q, {0, 1}), poly(Q, {0, 2}), 1), RejectedPoint);
  CHECK_THROWS_AS(UnpointedRat::make(poly(Q, {1}), poly(Q, {2}), 1), RejectedPoint);
}

TEST_CASE("normalize_unpointed") {
  RatFun f = R(Q, {-1, 0, 1}, {0, 1});
  NormalizedUnpointed n0 = normalize_unpointed(UnpointedRat::from_pointed(f));
  CHECK(n0.alpha.empty());
  CHECK(n0.pointed == f);
  // 1/X: A = 1, B = X.
  UnpointedRat inv = UnpointedRat::make(poly(Q, {1}), poly(Q, {0, 1}), 1);
  NormalizedUnpointed n1 = normalize_unpointed(inv);
  CHECK(n1.pointed.degree() == 1);
  CHECK(n1.alpha.size() <= 3);
  CHECK(eval_unpointed(n1.path, Scalar::zero(Q)) == inv);
  CHECK(eval_unpointed(n1.path, Scalar::one(Q)) == UnpointedRat::from_pointed(n1.pointed));
  std::mt19937_64 rng(13);
  for (Field fld : {Q, F3, F5})
    for (int it = 0; it < 100; ++it) {
      const int n = 1 + static_cast<int>(rng() % 3);
      UnpointedRat u = [&] {
        for (;;) {
          try {
            return UnpointedRat::make(rnd_poly(fld, n, rng), rnd_poly(fld, static_cast<int>(rng() % (n + 1)), rng), n);
          } catch (const Error&) {
          }
        }
      }();
      NormalizedUnpointed r = normalize_unpointed(u);
      CHECK(r.alpha.size() <= 3);
      CHECK(r.pointed.degree() == n);
      CHECK(resultant_nn(r.path.A, r.path.B, n).degree() == 0);
      CHECK(eval_unpointed(r.path, Scalar::zero(fld)) == u);
      CHECK(eval_unpointed(r.path, Scalar::one(fld)) == UnpointedRat::from_pointed(r.pointed));
    }
}
