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

#include "p1h/scalar.hpp"

#include <charconv>

#include "p1h/number_theory.hpp"

namespace p1h {

Field Field::prime(std::uint64_t p) {
  if (p >= (1ULL << 31) || !nt::is_prime_u64(p))
    throw Error("not a supported prime: " + std::to_string(p));
  return Field(p);
}

Field Field::parse(std::string_view text) {
  if (text == "Q") return rationals();
  std::string_view digits;
  if (text.substr(0, 3) == "Fp=")
    digits = text.substr(3);
  else if (text.size() > 1 && text[0] == 'F')
    digits = text.substr(1);
  else
    throw Error("unknown field: " + std::string(text));
  std::uint64_t p = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), p);
  if (ec != std::errc() || ptr != digits.data() + digits.size() || digits.empty())
    throw Error("unknown field: " + std::string(text));
  return prime(p);
}

std::string Field::name() const { return is_rationals() ? "Q" : "F" + std::to_string(p_); }

namespace {

std::uint64_t reduce(long v, std::uint64_t p) {
  long r = v % static_cast<long>(p);
  return static_cast<std::uint64_t>(r < 0 ? r + static_cast<long>(p) : r);
}

std::uint64_t reduce(const mpz_class& v, std::uint64_t p) {
  mpz_class r;
  mpz_fdiv_r_ui(r.get_mpz_t(), v.get_mpz_t(), p);
  return r.get_ui();
}

}  // namespace

Scalar::Scalar(Field f, long value) : field_(f) {
  if (f.is_rationals())
    v_ = mpq_class(value);
  else
    v_ = reduce(value, f.characteristic());
}

Scalar::Scalar(Field f, const mpq_class& value) : field_(f) {
  if (f.is_rationals()) {
    mpq_class q = value;
    q.canonicalize();
    v_ = std::move(q);
    return;
  }
  const std::uint64_t p = f.characteristic();
  std::uint64_t den = reduce(value.get_den(), p);
  if (den == 0) throw Error("denominator vanishes in " + f.name());
  v_ = nt::mulmod(reduce(value.get_num(), p), nt::powmod(den, p - 2, p), p);
}

bool Scalar::is_zero() const noexcept {
  if (auto r = std::get_if<std::uint64_t>(&v_)) return *r == 0;
  return sgn(std::get<mpq_class>(v_)) == 0;
}

bool Scalar::is_one() const noexcept {
  if (auto r = std::get_if<std::uint64_t>(&v_)) return *r == 1 % field_.characteristic();
  return std::get<mpq_class>(v_) == 1;
}

const mpq_class& Scalar::rational() const {
  if (!field_.is_rationals()) throw Error("rational() on a prime-field scalar");
  return std::get<mpq_class>(v_);
}

std::uint64_t Scalar::residue() const {
  if (field_.is_rationals()) throw Error("residue() on a rational scalar");
  return std::get<std::uint64_t>(v_);
}

void Scalar::check_same(const Scalar& o) const {
  if (field_ != o.field_) throw Error("field mismatch: " + field_.name() + " vs " + o.field_.name());
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw Error("division by zero");
  Scalar r = *this;
  if (field_.is_rationals()) {
    std::get<mpq_class>(r.v_) = 1 / std::get<mpq_class>(v_);
  } else {
    const std::uint64_t p = field_.characteristic();
    r.v_ = nt::powmod(std::get<std::uint64_t>(v_), p - 2, p);
  }
  return r;
}

Scalar Scalar::pow(long e) const {
  Scalar base = e < 0 ? inverse() : *this;
  unsigned long k = e < 0 ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
  Scalar r = one(field_);
  while (k) {
    if (k & 1) r *= base;
    base *= base;
    k >>= 1;
  }
  return r;
}

std::string Scalar::str() const {
  if (field_.is_rationals()) return std::get<mpq_class>(v_).get_str();
  return std::to_string(std::get<std::uint64_t>(v_));
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  if (field_.is_rationals()) {
    mpq_class& q = std::get<mpq_class>(r.v_);
    q = -q;
  } else {
    std::uint64_t& x = std::get<std::uint64_t>(r.v_);
    if (x) x = field_.characteristic() - x;
  }
  return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  check_same(o);
  if (field_.is_rationals()) {
    std::get<mpq_class>(v_) += std::get<mpq_class>(o.v_);
  } else {
    std::uint64_t& x = std::get<std::uint64_t>(v_);
    x += std::get<std::uint64_t>(o.v_);
    if (x >= field_.characteristic()) x -= field_.characteristic();
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar& Scalar::operator*=(const Scalar& o) {
  check_same(o);
  if (field_.is_rationals()) {
    std::get<mpq_class>(v_) *= std::get<mpq_class>(o.v_);
  } else {
    std::uint64_t& x = std::get<std::uint64_t>(v_);
    x = nt::mulmod(x, std::get<std::uint64_t>(o.v_), field_.characteristic());
  }
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  check_same(o);
  return *this *= o.inverse();
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.field_ != b.field_) return false;
  return a.v_ == b.v_;
}

bool operator<(const Scalar& a, const Scalar& b) {
  a.check_same(b);
  if (a.field_.is_rationals()) return std::get<mpq_class>(a.v_) < std::get<mpq_class>(b.v_);
  return std::get<std::uint64_t>(a.v_) < std::get<std::uint64_t>(b.v_);
}

}  // namespace p1h
