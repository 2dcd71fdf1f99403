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

#include "p1h/quadform.hpp"

#include <algorithm>
#include <set>

#include "p1h/algebra.hpp"
#include "p1h/number_theory.hpp"

namespace p1h {

namespace {

template <class C>
struct Congruence {
  Matrix<C> G, P;

  void add(int tgt, int src, const C& c) {
    if (Ring<C>::is_zero(c)) return;
    const int n = G.rows();
    for (int i = 0; i < n; ++i) G(i, tgt) += c * G(i, src);
    for (int j = 0; j < n; ++j) G(tgt, j) += c * G(src, j);
    for (int i = 0; i < n; ++i) P(i, tgt) += c * P(i, src);
  }
  // (e_a, e_b) -> (e_b, -e_a), determinant 1.
  void signed_swap(int a, int b) {
    const Field f = G.field();
    const C one = Ring<C>::one(f);
    add(a, b, one);
    add(b, a, -one);
    add(a, b, one);
  }
};

}  // namespace

Diagonalization diagonalize(const Matrix<Scalar>& S) {
  const Field f = S.field();
  const int n = S.rows();
  if (!S.is_symmetric()) throw Error("diagonalize requires a symmetric matrix");
  if (determinant(S).is_zero()) throw Error("degenerate symmetric matrix");
  Congruence<Scalar> c{S, Matrix<Scalar>::identity(f, n)};
  Diagonalization out;
  const bool char2 = f.characteristic() == 2;
  auto add = [&](int tgt, int src, const Scalar& x) {
    if (x.is_zero()) return;
    c.add(tgt, src, x);
    out.oplog.push_back({tgt, src, x});
  };
  int i = 0;
  while (i < n) {
    if (c.G(i, i).is_zero()) {
      bool fixed = false;
      for (int j = i + 1; j < n && !fixed; ++j) {
        if (c.G(j, j).is_zero()) continue;
        // New value c*(2 G_ij + c G_jj): at most one c fails.
        for (long k = 1; k <= 2 && !fixed; ++k) {
          Scalar x(f, k);
          if (x.is_zero()) break;
          if ((Scalar(f, 2L) * c.G(i, j) + x * c.G(j, j)).is_zero()) continue;
          add(i, j, x);
          fixed = true;
        }
      }
      if (!fixed) {
        int j = i + 1;
        while (j < n && c.G(i, j).is_zero()) ++j;
        if (j == n) throw Error("internal: degenerate pivot row");
        if (!char2) {
          add(i, j, Scalar::one(f));
        } else {
          if (j != i + 1) add(i + 1, j, Scalar::one(f));
          const Scalar b = c.G(i, i + 1);
          const Scalar binv = b.inverse();
          for (int k = i + 2; k < n; ++k) {
            const Scalar s = c.G(i + 1, k) * binv, t = c.G(i, k) * binv;
            add(k, i, -s);
            add(k, i + 1, -t);
          }
          ++out.form.hblocks;
          out.layout.push_back(2);
          i += 2;
          continue;
        }
      }
    }
    const Scalar lam = c.G(i, i);
    const Scalar inv = lam.inverse();
    for (int k = i + 1; k < n; ++k) add(k, i, -(c.G(i, k) * inv));
    out.form.diag.push_back(lam);
    out.layout.push_back(1);
    ++i;
  }
  out.transform = c.P;
  out.normal = c.G;
  return out;
}

Matrix<Scalar> oplog_matrix(Field f, int n, const std::vector<CongruenceOp>& ops) {
  Matrix<Scalar> P = Matrix<Scalar>::identity(f, n);
  for (const auto& op : ops)
    for (int i = 0; i < n; ++i) P(i, op.target) += op.factor * P(i, op.source);
  return P;
}

Matrix<KPoly> oplog_path(const Matrix<Scalar>& S, const std::vector<CongruenceOp>& ops) {
  const Field f = S.field();
  const int n = S.rows();
  Matrix<KPoly> P = Matrix<KPoly>::identity(f, n);
  for (const auto& op : ops) {
    const KPoly c(f, {Scalar::zero(f), op.factor});
    for (int i = 0; i < n; ++i) P(i, op.target) += c * P(i, op.source);
  }
  return P.transpose() * lift_t(S) * P;
}

DiagForm canonical(const DiagForm& d) {
  DiagForm out;
  for (const auto& u : d.units) out.units.push_back(square_class(u));
  return out;
}

DiagForm tensor_diag(const DiagForm& a, const DiagForm& b) {
  DiagForm out;
  for (const auto& u : a.units)
    for (const auto& v : b.units) out.units.push_back(u * v);
  return out;
}

namespace {

int legendre_unit(const mpq_class& u, const mpz_class& p) {
  const int a = mpz_legendre(mpz_class(u.get_num() % p).get_mpz_t(), p.get_mpz_t());
  const int b = mpz_legendre(mpz_class(u.get_den() % p).get_mpz_t(), p.get_mpz_t());
  return a * b;
}

mpq_class strip(const mpq_class& a, const mpz_class& p, int v) {
  mpq_class u = a;
  mpz_class pv;
  mpz_pow_ui(pv.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(v < 0 ? -v : v));
  if (v > 0) u /= pv;
  if (v < 0) u *= pv;
  return u;
}

// Residue mod 8 of a 2-adic unit given as a rational with odd numerator and denominator.
int mod8(const mpq_class& u) {
  mpz_class n = u.get_num() % 8, d = u.get_den() % 8;
  long x = (n.get_si() + 8) % 8, y = (d.get_si() + 8) % 8;
  return static_cast<int>((x * y) % 8);  // d^-1 = d mod 8
}

}  // namespace

int hilbert_symbol(const mpq_class& a, const mpq_class& b, const Place& v) {
  if (a == 0 || b == 0) throw Error("hilbert_symbol of zero");
  if (v.is_real()) return (sgn(a) < 0 && sgn(b) < 0) ? -1 : 1;
  const mpz_class& p = v.p;
  const int al = nt::valuation(a, p), be = nt::valuation(b, p);
  const mpq_class u = strip(a, p, al), w = strip(b, p, be);
  if (p == 2) {
    const int uu = mod8(u), ww = mod8(w);
    const int eps_u = ((uu - 1) / 2) % 2, eps_w = ((ww - 1) / 2) % 2;
    const int om_u = ((uu * uu - 1) / 8) % 2, om_w = ((ww * ww - 1) / 8) % 2;
    const int e = eps_u * eps_w + al * om_w + be * om_u;
    return (e % 2 + 2) % 2 ? -1 : 1;
  }
  int sign = 1;
  const mpz_class eps = (p - 1) / 2;
  if ((al * be) % 2 != 0 && mpz_odd_p(eps.get_mpz_t())) sign = -sign;
  if (be % 2 != 0) sign *= legendre_unit(u, p);
  if (al % 2 != 0) sign *= legendre_unit(w, p);
  return sign;
}

int WittInvariant::hasse_at(const mpz_class& p) const {
  auto it = hasse.find(p);
  return it == hasse.end() ? 1 : it->second;
}

std::string WittInvariant::disc_label() const {
  if (field.is_rationals()) return disc.str();
  if (field.characteristic() == 2) return "square";
  return disc.is_one() ? "square" : "nonresidue";
}

std::string WittInvariant::key() const {
  std::string k = "r" + std::to_string(rank);
  if (field.characteristic() == 2) return k;
  k += "|d" + disc.str();
  if (field.is_rationals()) {
    k += "|s" + std::to_string(pos) + "," + std::to_string(neg) + "|h";
    for (const auto& [p, h] : hasse)
      if (h < 0) k += p.get_str() + ",";
  }
  return k;
}

namespace {

// Square-free reduction by small primes only; exact when the cofactor left
// after trial division is 1, a square, or a prime.
Scalar reduce_squares(const Scalar& u) {
  const Field f = u.field();
  if (!f.is_rationals()) return square_class(u);
  mpz_class n = u.rational().get_num() * u.rational().get_den();
  const int sign = sgn(n);
  n = abs(n);
  mpz_class out = 1;
  for (unsigned long p = 2; p < 1000 && p * p <= n; ++p) {
    int e = 0;
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      n /= p;
      ++e;
    }
    if (e % 2) out *= p;
  }
  if (!mpz_perfect_square_p(n.get_mpz_t())) out *= n;
  return Scalar(f, mpq_class(sign < 0 ? mpz_class(-out) : out));
}

std::set<mpz_class> primes_of(const mpq_class& x) {
  std::set<mpz_class> out;
  for (const auto& [p, e] : nt::factor(x.get_num())) out.insert(p);
  for (const auto& [p, e] : nt::factor(x.get_den())) out.insert(p);
  return out;
}

// Assembles the invariant of <d> given its determinant class and a prime set
// outside of which the form is unimodular at every odd prime.
WittInvariant assemble(Field f, const DiagForm& d, const Scalar& disc, std::set<mpz_class> primes) {
  WittInvariant w;
  w.field = f;
  w.rank = static_cast<int>(d.units.size());
  if (f.characteristic() == 2) {
    w.disc = Scalar::one(f);
    w.rep.units.assign(d.units.size(), Scalar::one(f));
    return w;
  }
  w.disc = disc;
  for (const auto& u : d.units) w.rep.units.push_back(reduce_squares(u));
  if (!f.is_rationals()) return w;
  primes.insert(mpz_class(2));
  for (const auto& u : w.rep.units) (sgn(u.rational()) > 0 ? w.pos : w.neg) += 1;
  for (const auto& p : primes) {
    int h = 1;
    for (std::size_t i = 0; i < w.rep.units.size(); ++i)
      for (std::size_t j = i + 1; j < w.rep.units.size(); ++j)
        h *= hilbert_symbol(w.rep.units[i].rational(), w.rep.units[j].rational(), Place{p});
    w.hasse[p] = h;
  }
  return w;
}

std::set<mpz_class> prime_union(const WittInvariant& a, const WittInvariant& b) {
  std::set<mpz_class> out;
  for (const auto& [p, h] : a.hasse) out.insert(p);
  for (const auto& [p, h] : b.hasse) out.insert(p);
  return out;
}

}  // namespace

WittInvariant witt_of_diag(Field f, const DiagForm& d) {
  Scalar prod = Scalar::one(f);
  std::set<mpz_class> primes;
  for (const auto& u : d.units) {
    prod *= u;
    if (f.is_rationals())
      for (const auto& p : primes_of(u.rational())) primes.insert(p);
  }
  return assemble(f, canonical(d), square_class(prod), std::move(primes));
}

WittInvariant stable_invariant(const Matrix<Scalar>& S) {
  const Field f = S.field();
  if (S.rows() == 0) return witt_of_diag(f, {});
  Diagonalization d = diagonalize(S);
  DiagForm diag{d.form.diag};
  for (int i = 0; i < 2 * d.form.hblocks; ++i) diag.units.push_back(Scalar::one(f));
  if (f.characteristic() == 2) return assemble(f, diag, Scalar::one(f), {});
  const Scalar det = determinant(S);
  std::set<mpz_class> primes;
  if (f.is_rationals()) {
    // c^2 S is integral for c the lcm of denominators; off 2 c det it is unimodular.
    mpz_class c = 1;
    for (int i = 0; i < S.rows(); ++i)
      for (int j = 0; j < S.cols(); ++j) mpz_lcm(c.get_mpz_t(), c.get_mpz_t(), S(i, j).rational().get_den().get_mpz_t());
    primes = primes_of(det.rational());
    for (const auto& p : primes_of(mpq_class(c))) primes.insert(p);
  }
  return assemble(f, diag, square_class(det), std::move(primes));
}

bool stable_equal(const WittInvariant& a, const WittInvariant& b) {
  if (a.field != b.field) throw Error("stable_equal: field mismatch");
  if (a.rank != b.rank || !(a.disc == b.disc) || a.pos != b.pos || a.neg != b.neg) return false;
  for (const auto& p : prime_union(a, b))
    if (a.hasse_at(p) != b.hasse_at(p)) return false;
  return true;
}

WittInvariant orthogonal_sum(const WittInvariant& a, const WittInvariant& b) {
  if (a.field != b.field) throw Error("orthogonal_sum: field mismatch");
  DiagForm d = a.rep;
  d.units.insert(d.units.end(), b.rep.units.begin(), b.rep.units.end());
  return assemble(a.field, d, square_class(a.disc * b.disc), prime_union(a, b));
}

WittInvariant tensor_product(const WittInvariant& a, const WittInvariant& b) {
  if (a.field != b.field) throw Error("tensor_product: field mismatch");
  const Scalar disc = square_class(a.disc.pow(b.rank) * b.disc.pow(a.rank));
  return assemble(a.field, tensor_diag(a.rep, b.rep), disc, prime_union(a, b));
}

namespace {

KPoly t_pow(Field f, const Scalar& c, long e) { return KPoly::monomial(f, c, static_cast<int>(e)); }

int parity(long x) { return static_cast<int>(((x % 2) + 2) % 2); }

// Nonzero kernel vector of a singular square matrix over k, or empty.
std::vector<Scalar> kernel_vector(Matrix<Scalar> L) {
  const int n = L.rows();
  const Field f = L.field();
  std::vector<int> pivcol;
  int r = 0;
  for (int c = 0; c < n && r < n; ++c) {
    int p = r;
    while (p < n && L(p, c).is_zero()) ++p;
    if (p == n) continue;
    for (int j = 0; j < n; ++j) std::swap(L(r, j), L(p, j));
    const Scalar inv = L(r, c).inverse();
    for (int j = 0; j < n; ++j) L(r, j) *= inv;
    for (int i = 0; i < n; ++i) {
      if (i == r || L(i, c).is_zero()) continue;
      const Scalar m = L(i, c);
      for (int j = 0; j < n; ++j) L(i, j) -= m * L(r, j);
    }
    pivcol.push_back(c);
    ++r;
  }
  if (r == n) return {};
  int free = 0;
  while (std::find(pivcol.begin(), pivcol.end(), free) != pivcol.end()) ++free;
  std::vector<Scalar> x(static_cast<std::size_t>(n), Scalar::zero(f));
  x[static_cast<std::size_t>(free)] = Scalar::one(f);
  for (int i = 0; i < r; ++i) x[static_cast<std::size_t>(pivcol[static_cast<std::size_t>(i)])] = -L(i, free);
  return x;
}

void check_point_of_sn(const Matrix<KPoly>& S) {
  if (!S.is_symmetric()) throw Error("matrix is not symmetric");
  if (determinant(S).degree() != 0) throw Error("not a point of S_n(k[T])");
}

// Reduces the active block [pos, n) until some diagonal entry is constant.
// Weights hw are twice the usual ones so they stay integral; they bound
// deg G_jk <= floor((hw_j + hw_k) / 2).
int short_index(Congruence<KPoly>& c, int pos) {
  const int n = c.G.rows();
  const Field f = c.G.field();
  std::vector<long> hw(static_cast<std::size_t>(n), 0);
  for (int j = pos; j < n; ++j) {
    int d = 0;
    for (int k = pos; k < n; ++k) d = std::max(d, c.G(j, k).degree());
    hw[static_cast<std::size_t>(j)] = 2L * d;
  }
  for (;;) {
    for (int j = pos; j < n; ++j)
      if (c.G(j, j).degree() <= 0) return j;
    std::vector<Scalar> kv;
    std::vector<int> idx;
    for (int cls = 0; cls < 2 && kv.empty(); ++cls) {
      idx.clear();
      for (int j = pos; j < n; ++j)
        if (parity(hw[static_cast<std::size_t>(j)]) == cls) idx.push_back(j);
      if (idx.empty()) continue;
      const int m = static_cast<int>(idx.size());
      Matrix<Scalar> L(f, m, m);
      for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
          const long e = (hw[static_cast<std::size_t>(idx[a])] + hw[static_cast<std::size_t>(idx[b])]) / 2;
          L(a, b) = e < 0 ? Scalar::zero(f) : c.G(idx[static_cast<std::size_t>(a)], idx[static_cast<std::size_t>(b)]).coeff(static_cast<int>(e));
        }
      kv = kernel_vector(L);
    }
    if (kv.empty()) throw Error("internal: leading form is not singular");
    long W = 0;
    int m = -1;
    for (std::size_t a = 0; a < idx.size(); ++a) {
      if (kv[a].is_zero()) continue;
      const long w = hw[static_cast<std::size_t>(idx[a])];
      if (m < 0 || w > W) {
        W = w;
        m = static_cast<int>(a);
      }
    }
    const Scalar cm = kv[static_cast<std::size_t>(m)].inverse();
    const int tgt = idx[static_cast<std::size_t>(m)];
    for (std::size_t a = 0; a < idx.size(); ++a) {
      if (static_cast<int>(a) == m || kv[a].is_zero()) continue;
      const long e = (W - hw[static_cast<std::size_t>(idx[a])]) / 2;
      c.add(tgt, idx[a], t_pow(f, kv[a] * cm, e));
    }
    hw[static_cast<std::size_t>(tgt)] = W - 1;
  }
}

}  // namespace

std::vector<KPoly> kt_short_vector(const Matrix<KPoly>& S) {
  check_point_of_sn(S);
  const int n = S.rows();
  if (n == 0) throw Error("kt_short_vector of an empty form");
  Congruence<KPoly> c{S, Matrix<KPoly>::identity(S.field(), n)};
  const int j = short_index(c, 0);
  std::vector<KPoly> x;
  for (int i = 0; i < n; ++i) x.push_back(c.P(i, j));
  return x;
}

HermiteReduction hermite_reduce(const Matrix<KPoly>& S) {
  check_point_of_sn(S);
  const Field f = S.field();
  const int n = S.rows();
  bool constant = true;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) constant = constant && S(i, j).degree() <= 0;
  if (constant) {
    Diagonalization d = diagonalize(eval_t(S, Scalar::zero(f)));
    return {lift_t(d.transform), lift_t(d.normal), d.layout};
  }
  Congruence<KPoly> c{S, Matrix<KPoly>::identity(f, n)};
  HermiteReduction out;
  int pos = 0;
  while (pos < n) {
    const int j = short_index(c, pos);
    if (j != pos) c.signed_swap(pos, j);
    const KPoly lam = c.G(pos, pos);
    if (!lam.is_zero()) {
      const Scalar inv = lam.lead().inverse();
      for (int k = pos + 1; k < n; ++k) c.add(k, pos, -c.G(pos, k).scaled(inv));
      out.layout.push_back(1);
      ++pos;
      continue;
    }
    // Isotropic x = e_pos: pick y with b(x, y) = 1 and split off the plane.
    const int m = n - pos;
    Matrix<KPoly> inv = inverse(c.G.block(pos, pos, m, m));
    std::vector<KPoly> y;
    for (int i = 0; i < m; ++i) y.push_back(inv(i, 0));
    for (;;) {
      std::vector<int> nz;
      for (int i = 1; i < m; ++i)
        if (!y[static_cast<std::size_t>(i)].is_zero()) nz.push_back(i);
      if (nz.empty()) throw Error("internal: isotropic vector without partner");
      if (nz.size() == 1) break;
      int a = nz[0];
      for (int i : nz)
        if (y[static_cast<std::size_t>(i)].degree() < y[static_cast<std::size_t>(a)].degree()) a = i;
      for (int b : nz) {
        if (b == a) continue;
        KPoly q = divmod(y[static_cast<std::size_t>(b)], y[static_cast<std::size_t>(a)]).first;
        c.add(pos + a, pos + b, q);
        y[static_cast<std::size_t>(b)] -= q * y[static_cast<std::size_t>(a)];
      }
    }
    int l = 1;
    while (y[static_cast<std::size_t>(l)].is_zero()) ++l;
    if (l != 1) c.signed_swap(pos + 1, pos + l);
    const KPoly beta = c.G(pos, pos + 1);
    if (beta.degree() != 0) throw Error("internal: hyperbolic pair is not unimodular");
    const Scalar bi = beta.lead().inverse();
    const KPoly alpha = c.G(pos + 1, pos + 1);
    for (int k = pos + 2; k < n; ++k) {
      const KPoly g0 = c.G(pos, k), g1 = c.G(pos + 1, k);
      const KPoly t = g0.scaled(bi);
      const KPoly s = g1.scaled(bi) - (alpha * g0).scaled(bi * bi);
      c.add(k, pos, -s);
      c.add(k, pos + 1, -t);
    }
    out.layout.push_back(2);
    pos += 2;
  }
  out.transform = c.P;
  out.normal = c.G;
  return out;
}

}  // namespace p1h
