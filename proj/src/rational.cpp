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

#include "sumlab/rational.hpp"

#include <cctype>
#include <cmath>
#include <ostream>

#include "sumlab/error.hpp"

namespace sumlab {

namespace {

std::uint64_t mix(std::uint64_t x) {
    x ^= x >> 33;
    x *= 0xff51afd7ed558ccdULL;
    x ^= x >> 33;
    x *= 0xc4ceb9fe1a85ec53ULL;
    x ^= x >> 33;
    return x;
}

std::uint64_t hash_mpz(const mpz_class &z, std::uint64_t h) {
    const std::size_t limbs = mpz_size(z.get_mpz_t());
    h = mix(h ^ (static_cast<std::uint64_t>(limbs) * 2 + (sgn(z) < 0 ? 1 : 0)));
    for (std::size_t i = 0; i < limbs; ++i) {
        h = mix(h ^ static_cast<std::uint64_t>(mpz_getlimbn(z.get_mpz_t(), i)));
    }
    return h;
}

bool parse_integer(std::string_view digits, mpz_class &out) {
    if (digits.empty()) return false;
    std::size_t start = (digits[0] == '-' || digits[0] == '+') ? 1 : 0;
    if (start == digits.size()) return false;
    for (std::size_t i = start; i < digits.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(digits[i]))) return false;
    }
    std::string s(digits[0] == '+' ? digits.substr(1) : digits);
    return out.set_str(s, 10) == 0;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

} // namespace

Rational::Rational(const mpz_class &num, const mpz_class &den) : q_(num, den) {
    if (den == 0) throw DomainError("rational with zero denominator");
    q_.canonicalize();
}

Rational::Rational(mpq_class q) : q_(std::move(q)) {
    if (q_.get_den() == 0) throw DomainError("rational with zero denominator");
    q_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
    text = trim(text);
    const auto slash = text.find('/');
    mpz_class num;
    mpz_class den = 1;
    if (!parse_integer(trim(text.substr(0, slash)), num)) {
        throw ParseError("malformed rational '" + std::string(text) + "'");
    }
    if (slash != std::string_view::npos) {
        auto d = trim(text.substr(slash + 1));
        if (!parse_integer(d, den) || d.front() == '-' || d.front() == '+') {
            throw ParseError("malformed rational '" + std::string(text) + "'");
        }
        if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    }
    return Rational(num, den);
}

std::string Rational::str() const {
    if (is_integer()) return num().get_str(10);
    return num().get_str(10) + "/" + den().get_str(10);
}

std::string Rational::str_pq() const { return num().get_str(10) + "/" + den().get_str(10); }

double to_double_rounded(const mpz_class &value) {
    const std::size_t bits = mpz_sizeinbase(value.get_mpz_t(), 2);
    if (bits <= 53) return value.get_d();
    mpz_class mag = abs(value);
    const std::size_t shift = bits - 53;
    mpz_class top = mag >> shift;
    mpz_class rem = mag - (top << shift);
    mpz_class half = mpz_class(1) << (shift - 1);
    if (rem > half || (rem == half && mpz_odd_p(top.get_mpz_t()))) top += 1;
    const double d = std::ldexp(top.get_d(), static_cast<int>(shift));
    return sgn(value) < 0 ? -d : d;
}

double Rational::to_double() const {
    if (is_integer()) return to_double_rounded(num());
    // Scale so the integer quotient carries well over 53 significant bits, then
    // round once; the sticky bit from the remainder keeps ties honest.
    const long nbits = static_cast<long>(mpz_sizeinbase(num().get_mpz_t(), 2));
    const long dbits = static_cast<long>(mpz_sizeinbase(den().get_mpz_t(), 2));
    const long shift = 64 - (nbits - dbits);
    mpz_class n = abs(num());
    if (shift > 0) n <<= static_cast<unsigned long>(shift);
    mpz_class d = den();
    if (shift < 0) d <<= static_cast<unsigned long>(-shift);
    mpz_class quot;
    mpz_class rem;
    mpz_tdiv_qr(quot.get_mpz_t(), rem.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
    quot <<= 1;
    if (rem != 0) quot += 1;
    double r = std::ldexp(to_double_rounded(quot), static_cast<int>(-shift - 1));
    return sign() < 0 ? -r : r;
}

Rational &Rational::operator+=(const Rational &o) {
    q_ += o.q_;
    return *this;
}

Rational &Rational::operator-=(const Rational &o) {
    q_ -= o.q_;
    return *this;
}

Rational &Rational::operator*=(const Rational &o) {
    q_ *= o.q_;
    return *this;
}

Rational &Rational::operator/=(const Rational &o) {
    if (o.is_zero()) throw DomainError("division by zero");
    q_ /= o.q_;
    return *this;
}

std::size_t Rational::hash() const noexcept {
    return static_cast<std::size_t>(hash_mpz(den(), hash_mpz(num(), 0x9e3779b97f4a7c15ULL)));
}

std::ostream &operator<<(std::ostream &os, const Rational &q) { return os << q.str(); }

} // namespace sumlab
