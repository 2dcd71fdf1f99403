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

// Exact scalars: rationals backed by GMP and residues modulo a prime.

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

namespace p1h {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Field {
 public:
  constexpr Field() noexcept = default;

  static constexpr Field rationals() noexcept { return Field{}; }
  // Throws Error unless p is a prime below 2^31.
  static Field prime(std::uint64_t p);
  // Accepts "Q", "F<p>" and "Fp=<p>".
  static Field parse(std::string_view text);

  constexpr bool is_rationals() const noexcept { return p_ == 0; }
  constexpr bool is_prime_field() const noexcept { return p_ != 0; }
  constexpr std::uint64_t characteristic() const noexcept { return p_; }
  std::string name() const;

  friend constexpr bool operator==(Field, Field) noexcept = default;

 private:
  constexpr explicit Field(std::uint64_t p) noexcept : p_(p) {}
  std::uint64_t p_ = 0;
};

class Scalar {
 public:
  Scalar() : v_(mpq_class(0)) {}
  Scalar(Field f, long value);
  Scalar(Field f, const mpq_class& value);

  static Scalar zero(Field f) { return Scalar(f, 0L); }
  static Scalar one(Field f) { return Scalar(f, 1L); }

  Field field() const noexcept { return field_; }
  bool is_zero() const noexcept;
  bool is_one() const noexcept;

  const mpq_class& rational() const;
  std::uint64_t residue() const;

  Scalar inverse() const;
  Scalar pow(long e) const;
  std::string str() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend bool operator==(const Scalar& a, const Scalar& b);

  // Total order within one field, used for canonical sorting and map keys.
  friend bool operator<(const Scalar& a, const Scalar& b);

 private:
  void check_same(const Scalar& o) const;

  Field field_;
  std::variant<std::uint64_t, mpq_class> v_;
};

}  // namespace p1h
