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

#include "persuasion/rational.h"

#include "persuasion/linalg.h"

#include <algorithm>
#include <cctype>
#include <optional>
#include <ostream>
#include <vector>

namespace persuasion {
namespace {

bool parse_integer(std::string_view s, mpz_class* out) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (std::size_t k = i; k < s.size(); ++k) {
    if (!std::isdigit(static_cast<unsigned char>(s[k]))) return false;
  }
  std::string digits(s.substr(s[0] == '+' ? 1 : 0));
  return out->set_str(digits, 10) == 0;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

}  // namespace

Rational::Rational(long num, long den) : q_(num, den) {
  if (den == 0) throw std::domain_error("zero denominator");
  q_.canonicalize();
}

Rational::Rational(const mpz_class& num, const mpz_class& den)
    : q_(num, den) {
  if (den == 0) throw std::domain_error("zero denominator");
  q_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("division by zero");
  q_ /= o.q_;
  return *this;
}

Rational Rational::parse(std::string_view text) {
  std::string_view s = trim(text);
  mpz_class num, den = 1;
  std::size_t slash = s.find('/');
  if (slash == std::string_view::npos) {
    if (!parse_integer(s, &num)) {
      throw std::invalid_argument("malformed rational: '" + std::string(text) +
                                  "'");
    }
  } else {
    if (!parse_integer(trim(s.substr(0, slash)), &num) ||
        !parse_integer(trim(s.substr(slash + 1)), &den)) {
      throw std::invalid_argument("malformed rational: '" + std::string(text) +
                                  "'");
    }
    if (den == 0) throw std::invalid_argument("zero denominator: " +
                                              std::string(text));
  }
  return Rational(num, den);
}

std::string Rational::str() const {
  if (q_.get_den() == 1) return q_.get_num().get_str() + "/1";
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
  return os << r.str();
}

Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

mpz_class floor(const Rational& r) {
  mpz_class out;
  mpz_fdiv_q(out.get_mpz_t(), r.num_ref().get_mpz_t(),
             r.den_ref().get_mpz_t());
  return out;
}

mpz_class ceil(const Rational& r) {
  mpz_class out;
  mpz_cdiv_q(out.get_mpz_t(), r.num_ref().get_mpz_t(),
             r.den_ref().get_mpz_t());
  return out;
}

Rational pow2(long e) {
  mpz_class p = 1;
  unsigned long m = static_cast<unsigned long>(e < 0 ? -e : e);
  mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), m);
  return e < 0 ? Rational(mpz_class(1), p) : Rational(p);
}

Rational floor_pow2(const Rational& r) {
  if (r.sign() <= 0) throw std::domain_error("floor_pow2 needs r > 0");
  // 2^(bitlen(num) - bitlen(den)) is within a factor 2 of r.
  long e = static_cast<long>(bitlen(r.num_ref())) -
           static_cast<long>(bitlen(r.den_ref()));
  Rational p = pow2(e);
  while (p > r) p = pow2(--e);
  while (pow2(e + 1) <= r) p = pow2(++e);
  return p;
}

std::size_t bitlen(const mpz_class& k) {
  return mpz_sizeinbase(k.get_mpz_t(), 2);
}

std::size_t bit_complexity(const Rational& q) {
  return bitlen(q.num_ref()) + bitlen(q.den_ref());
}

std::size_t vector_bit_complexity(std::span<const Rational> v) {
  if (v.empty()) throw std::invalid_argument("empty vector");
  std::size_t best = 0;
  for (const Rational& q : v) best = std::max(best, bit_complexity(q));
  return best;
}

namespace {

// Continued-fraction terms of the minimum-denominator rational in (lo, hi),
// where hi may be +infinity.
std::vector<mpz_class> min_denominator_terms(Rational lo,
                                             std::optional<Rational> hi) {
  std::vector<mpz_class> terms;
  while (true) {
    mpz_class n = floor(lo);
    if (!hi || Rational(mpz_class(n + 1)) < *hi) {
      terms.push_back(n + 1);
      return terms;
    }
    // n <= lo < hi <= n + 1.
    terms.push_back(n);
    Rational a = lo - Rational(n);
    Rational b = *hi - Rational(n);
    lo = Rational(1) / b;
    if (a.is_zero()) {
      hi.reset();
    } else {
      hi = Rational(1) / a;
    }
  }
}

Rational evaluate_terms(const std::vector<mpz_class>& terms) {
  mpz_class h_prev = 1, h = terms[0];
  mpz_class k_prev = 0, k = 1;
  for (std::size_t i = 1; i < terms.size(); ++i) {
    mpz_class h_next = terms[i] * h + h_prev;
    mpz_class k_next = terms[i] * k + k_prev;
    h_prev = h;
    h = h_next;
    k_prev = k;
    k = k_next;
  }
  return Rational(h, k);
}

}  // namespace

mpz_class stern_brocot_depth(const Rational& q) {
  if (q.sign() <= 0 || q >= Rational(1)) {
    throw std::invalid_argument("stern_brocot_depth needs q in (0, 1)");
  }
  mpz_class sum = 0;
  mpz_class p = q.num(), r = q.den();
  // Terms after the leading zero.
  while (p != 0) {
    mpz_class t = r / p;
    sum += t;
    mpz_class rem = r - t * p;
    r = p;
    p = rem;
  }
  return sum - 1;
}

Rational stern_brocot_search(const Rational& lo, const Rational& hi,
                             std::uint64_t depth) {
  if (!(lo < hi)) throw std::invalid_argument("stern_brocot_search: lo >= hi");
  if (lo.sign() < 0 || hi > Rational(1)) {
    throw std::invalid_argument("stern_brocot_search: interval outside [0,1]");
  }
  std::vector<mpz_class> terms = min_denominator_terms(lo, hi);
  mpz_class level = -1;
  for (std::size_t i = 1; i < terms.size(); ++i) level += terms[i];
  if (level > mpz_class(std::to_string(depth))) {
    throw NoRationalWithinDepth("no rational within depth " +
                                std::to_string(depth) + " in (" + lo.str() +
                                ", " + hi.str() + ")");
  }
  return evaluate_terms(terms);
}

mpz_class common_denominator(const RVector& v) {
  mpz_class l = 1;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v(i).den_ref().get_mpz_t());
  }
  return l;
}

RVector parse_vector(const std::vector<std::string>& entries) {
  RVector v(static_cast<Eigen::Index>(entries.size()));
  for (std::size_t i = 0; i < entries.size(); ++i) {
    v(static_cast<Eigen::Index>(i)) = Rational::parse(entries[i]);
  }
  return v;
}

std::vector<std::string> format_vector(const RVector& v) {
  std::vector<std::string> out;
  out.reserve(static_cast<std::size_t>(v.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i).str());
  return out;
}

}  // namespace persuasion
