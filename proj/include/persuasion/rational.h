// Copyright 2026 The Persuasion Lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PERSUASION_RATIONAL_H_
#define PERSUASION_RATIONAL_H_

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

namespace persuasion {

// Exact fraction, always reduced with a positive denominator. Wraps
// mpq_class without exposing its expression templates, so the type can be
// used as an Eigen scalar.
class Rational {
 public:
  Rational() = default;
  Rational(int v) : q_(v) {}            // NOLINT(runtime/explicit)
  Rational(long v) : q_(v) {}           // NOLINT(runtime/explicit)
  Rational(long long v) : q_(static_cast<long>(v)) {}  // NOLINT
  Rational(unsigned long v) : q_(v) {}  // NOLINT(runtime/explicit)
  Rational(long num, long den);
  Rational(const mpz_class& num, const mpz_class& den);
  explicit Rational(const mpz_class& v) : q_(v) {}
  explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

  // Accepts "p/q", "p" and surrounding whitespace. Throws on malformed text
  // or a zero denominator.
  static Rational parse(std::string_view text);

  std::string str() const;
  double to_double() const { return q_.get_d(); }

  const mpq_class& value() const { return q_; }
  mpz_class num() const { return q_.get_num(); }
  mpz_class den() const { return q_.get_den(); }
  const mpz_class& num_ref() const { return q_.get_num(); }
  const mpz_class& den_ref() const { return q_.get_den(); }
  int sign() const { return sgn(q_); }
  bool is_zero() const { return sgn(q_) == 0; }

  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(const Rational& a, const Rational& b) {
    return Rational(mpq_class(a.q_ + b.q_), Raw{});
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return Rational(mpq_class(a.q_ - b.q_), Raw{});
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return Rational(mpq_class(a.q_ * b.q_), Raw{});
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    Rational r(a);
    r /= b;
    return r;
  }
  friend Rational operator-(const Rational& a) {
    return Rational(mpq_class(-a.q_), Raw{});
  }
  friend Rational operator+(const Rational& a) { return a; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return mpq_equal(a.q_.get_mpq_t(), b.q_.get_mpq_t()) != 0;
  }
  friend std::strong_ordering operator<=>(const Rational& a,
                                          const Rational& b) {
    int c = cmp(a.q_, b.q_);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r);

 private:
  struct Raw {};
  // Results of mpq arithmetic are already canonical.
  Rational(mpq_class q, Raw) : q_(std::move(q)) {}

  mpq_class q_;
};

Rational abs(const Rational& r);
mpz_class floor(const Rational& r);
mpz_class ceil(const Rational& r);
// 2^e for any integer e.
Rational pow2(long e);
// Largest power of two not exceeding r (r > 0).
Rational floor_pow2(const Rational& r);
// Number of bits of |k|, with bitlen(0) = 1.
std::size_t bitlen(const mpz_class& k);

// bitlen(num) + bitlen(den).
std::size_t bit_complexity(const Rational& q);

// Maximum entry bit complexity. Throws std::invalid_argument when empty.
std::size_t vector_bit_complexity(std::span<const Rational> v);

template <typename Derived>
std::size_t vector_bit_complexity(const Derived& v) {
  return vector_bit_complexity(
      std::span<const Rational>(v.data(), static_cast<std::size_t>(v.size())));
}

class NoRationalWithinDepth : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Minimum-denominator rational strictly inside (lo, hi), found by a
// continued-fraction descent of the Stern-Brocot tree rooted at (0/1, 1/1).
// Requires 0 <= lo < hi <= 1. Throws NoRationalWithinDepth when the result
// sits deeper than `depth` levels (1/2 is at level 1).
Rational stern_brocot_search(const Rational& lo, const Rational& hi,
                             std::uint64_t depth);

// Tree level of q in (0, 1); 1/2 has level 1.
mpz_class stern_brocot_depth(const Rational& q);

}  // namespace persuasion

#endif  // PERSUASION_RATIONAL_H_
