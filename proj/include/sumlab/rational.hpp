/*
Copyright 2026 The sumlab Authors

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

#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace sumlab {

/// Exact rational number in canonical form: the denominator is positive and
/// coprime to the numerator. Backed by GMP, so magnitudes are unbounded.
class Rational {
  public:
    Rational() = default;
    Rational(long value) : q_(value) {} // NOLINT(google-explicit-constructor)
    Rational(int value) : q_(value) {}  // NOLINT(google-explicit-constructor)
    Rational(const mpz_class &num, const mpz_class &den);
    explicit Rational(mpq_class q);

    /// Parses "p" or "p/q" in base 10, with optional sign and surrounding blanks.
    static Rational parse(std::string_view text);

    const mpz_class &num() const { return q_.get_num(); }
    const mpz_class &den() const { return q_.get_den(); }
    const mpq_class &mpq() const { return q_; }

    int sign() const { return sgn(q_); }
    bool is_zero() const { return sgn(q_) == 0; }
    bool is_integer() const { return q_.get_den() == 1; }

    /// "p" for integers, "p/q" otherwise.
    std::string str() const;
    /// Always "p/q" (denominator 1 written explicitly).
    std::string str_pq() const;
    /// Nearest double (ties to even).
    double to_double() const;

    Rational operator-() const { return Rational(mpq_class(-q_), canonical_tag{}); }
    Rational &operator+=(const Rational &o);
    Rational &operator-=(const Rational &o);
    Rational &operator*=(const Rational &o);
    /// Throws DomainError on division by zero.
    Rational &operator/=(const Rational &o);

    friend Rational operator+(Rational a, const Rational &b) { return a += b; }
    friend Rational operator-(Rational a, const Rational &b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational &b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational &b) { return a /= b; }

    friend bool operator==(const Rational &a, const Rational &b) { return cmp(a.q_, b.q_) == 0; }
    friend std::strong_ordering operator<=>(const Rational &a, const Rational &b) {
        const int c = cmp(a.q_, b.q_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    std::size_t hash() const noexcept;

  private:
    struct canonical_tag {};
    Rational(mpq_class q, canonical_tag) : q_(std::move(q)) {}

    mpq_class q_;
};

/// Correctly rounded (ties to even) conversion of a big integer to double.
double to_double_rounded(const mpz_class &value);

std::ostream &operator<<(std::ostream &os, const Rational &q);

} // namespace sumlab

template <> struct std::hash<sumlab::Rational> {
    std::size_t operator()(const sumlab::Rational &q) const noexcept { return q.hash(); }
};
