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

// Dense univariate polynomials over k and over k[T].

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "p1h/scalar.hpp"

namespace p1h {

template <class C>
struct Ring;

template <class C>
class Poly {
 public:
  using coeff_type = C;

  Poly() = default;
  explicit Poly(Field f) : field_(f) {}
  Poly(Field f, std::vector<C> coeffs) : field_(f), c_(std::move(coeffs)) { trim(); }

  static Poly constant(Field f, C c) { return Poly(f, std::vector<C>{std::move(c)}); }
  static Poly one(Field f) { return constant(f, Ring<C>::one(f)); }
  static Poly monomial(Field f, C c, int k) {
    std::vector<C> v(static_cast<std::size_t>(k) + 1, Ring<C>::zero(f));
    v.back() = std::move(c);
    return Poly(f, std::move(v));
  }
  static Poly x(Field f) { return monomial(f, Ring<C>::one(f), 1); }

  Field field() const noexcept { return field_; }
  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const noexcept { return c_.empty(); }
  bool is_constant() const noexcept { return c_.size() <= 1; }
  bool is_monic() const { return !c_.empty() && c_.back() == Ring<C>::one(field_); }
  const std::vector<C>& coeffs() const noexcept { return c_; }
  const C& lead() const { return c_.back(); }
  C coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(c_.size())) return Ring<C>::zero(field_);
    return c_[static_cast<std::size_t>(i)];
  }

  Poly operator-() const {
    Poly r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
  }
  Poly& operator+=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Ring<C>::zero(field_));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Ring<C>::zero(field_));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly(a.field_);
    std::vector<C> out(a.c_.size() + b.c_.size() - 1, Ring<C>::zero(a.field_));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (Ring<C>::is_zero(a.c_[i])) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
    }
    return Poly(a.field_, std::move(out));
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  Poly scaled(const C& s) const {
    Poly r = *this;
    for (auto& c : r.c_) c *= s;
    r.trim();
    return r;
  }
  Poly shifted(int k) const {
    if (is_zero()) return *this;
    std::vector<C> v(static_cast<std::size_t>(k), Ring<C>::zero(field_));
    v.insert(v.end(), c_.begin(), c_.end());
    return Poly(field_, std::move(v));
  }

  friend bool operator==(const Poly& a, const Poly& b) { return a.field_ == b.field_ && a.c_ == b.c_; }

 private:
  void trim() {
    while (!c_.empty() && Ring<C>::is_zero(c_.back())) c_.pop_back();
  }

  Field field_;
  std::vector<C> c_;
};

using KPoly = Poly<Scalar>;
using KTPoly = Poly<KPoly>;

template <>
struct Ring<Scalar> {
  static Scalar zero(Field f) { return Scalar::zero(f); }
  static Scalar one(Field f) { return Scalar::one(f); }
  static bool is_zero(const Scalar& c) { return c.is_zero(); }
  static bool is_unit(const Scalar& c) { return !c.is_zero(); }
  static Scalar inverse(const Scalar& c) { return c.inverse(); }
  static Scalar exact_div(const Scalar& a, const Scalar& b) { return a / b; }
  static Scalar from_scalar(const Scalar& s) { return s; }
  // Euclidean size: 0 for units, -1 for zero.
  static int size(const Scalar& c) { return c.is_zero() ? -1 : 0; }
  static Scalar quotient(const Scalar& a, const Scalar& b) { return a / b; }
};

template <class C>
std::pair<Poly<C>, Poly<C>> divmod(const Poly<C>& a, const Poly<C>& b);

template <>
struct Ring<KPoly> {
  static KPoly zero(Field f) { return KPoly(f); }
  static KPoly one(Field f) { return KPoly::one(f); }
  static bool is_zero(const KPoly& c) { return c.is_zero(); }
  static bool is_unit(const KPoly& c) { return c.degree() == 0; }
  static KPoly inverse(const KPoly& c) {
    if (c.degree() != 0) throw Error("not a unit of k[T]");
    return KPoly::constant(c.field(), c.lead().inverse());
  }
  static KPoly exact_div(const KPoly& a, const KPoly& b) {
    auto [q, r] = divmod(a, b);
    if (!r.is_zero()) throw Error("inexact division in k[T]");
    return q;
  }
  static KPoly from_scalar(const Scalar& s) { return KPoly::constant(s.field(), s); }
  static int size(const KPoly& c) { return c.degree(); }
  static KPoly quotient(const KPoly& a, const KPoly& b) { return divmod(a, b).first; }
};

template <class C>
std::pair<Poly<C>, Poly<C>> divmod(const Poly<C>& a, const Poly<C>& b) {
  if (b.is_zero()) throw Error("division by zero polynomial");
  if (!Ring<C>::is_unit(b.lead())) throw Error("non-monic divisor over polynomial ring");
  const Field f = a.field();
  const C inv = Ring<C>::inverse(b.lead());
  std::vector<C> r = a.coeffs();
  const int db = b.degree();
  if (a.degree() < db) return {Poly<C>(f), a};
  std::vector<C> q(static_cast<std::size_t>(a.degree() - db + 1), Ring<C>::zero(f));
  for (int i = a.degree(); i >= db; --i) {
    C c = r[static_cast<std::size_t>(i)] * inv;
    if (Ring<C>::is_zero(c)) continue;
    q[static_cast<std::size_t>(i - db)] = c;
    for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(i - db + j)] -= c * b.coeffs()[static_cast<std::size_t>(j)];
  }
  r.resize(static_cast<std::size_t>(db));
  return {Poly<C>(f, std::move(q)), Poly<C>(f, std::move(r))};
}

template <class C>
C evaluate(const Poly<C>& p, const C& x) {
  C acc = Ring<C>::zero(p.field());
  for (int i = p.degree(); i >= 0; --i) acc = acc * x + p.coeffs()[static_cast<std::size_t>(i)];
  return acc;
}

// p(q): Horner in the ring of polynomials.
template <class C>
Poly<C> substitute(const Poly<C>& p, const Poly<C>& q) {
  Poly<C> acc(p.field());
  for (int i = p.degree(); i >= 0; --i) acc = acc * q + Poly<C>::constant(p.field(), p.coeffs()[static_cast<std::size_t>(i)]);
  return acc;
}

template <class C>
Poly<C> power(const Poly<C>& p, int e) {
  Poly<C> r = Poly<C>::one(p.field()), b = p;
  while (e > 0) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

template <class C>
Poly<C> derivative(const Poly<C>& p) {
  std::vector<C> v;
  for (int i = 1; i <= p.degree(); ++i) v.push_back(p.coeffs()[static_cast<std::size_t>(i)] * Ring<C>::from_scalar(Scalar(p.field(), static_cast<long>(i))));
  return Poly<C>(p.field(), std::move(v));
}

// Polynomials over k[T]: apply a map to every coefficient.
template <class F>
KTPoly map_coeffs(const KTPoly& p, F&& fn) {
  std::vector<KPoly> v;
  v.reserve(p.coeffs().size());
  for (const auto& c : p.coeffs()) v.push_back(fn(c));
  return KTPoly(p.field(), std::move(v));
}

// T := t in every coefficient.
KPoly eval_t(const KTPoly& p, const Scalar& t);
// Coefficientwise constant embedding k[X] -> k[T][X].
KTPoly lift_t(const KPoly& p);
// Largest T-degree among the coefficients (-1 for zero).
int t_degree(const KTPoly& p);

std::string to_string(const KPoly& p, char var = 'X');
std::string to_string(const KTPoly& p);

}  // namespace p1h
