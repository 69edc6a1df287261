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

#include <cstdint>
#include <optional>
#include <string>

#include "sumlab/rep_fn.hpp"

namespace sumlab {

/// Nonnegative rational moment exponent such as 2, 3/2 or 12/7.
class Exponent {
  public:
    constexpr Exponent(std::int64_t num = 1, std::int64_t den = 1) : num_(num), den_(den) { normalize(); }
    static Exponent parse(const std::string &text);

    constexpr std::int64_t num() const { return num_; }
    constexpr std::int64_t den() const { return den_; }
    constexpr bool is_integer() const { return den_ == 1; }
    constexpr double value() const { return static_cast<double>(num_) / static_cast<double>(den_); }
    std::string str() const;

    friend constexpr bool operator==(const Exponent &, const Exponent &) = default;

  private:
    constexpr void normalize() {
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        std::int64_t a = num_ < 0 ? -num_ : num_;
        std::int64_t b = den_;
        while (b != 0) {
            const std::int64_t t = a % b;
            a = b;
            b = t;
        }
        if (a > 1) {
            num_ /= a;
            den_ /= a;
        }
    }

    std::int64_t num_;
    std::int64_t den_;
};

/// Moment energy. `exact` is present for integer exponents, and then `approx`
/// is its nearest double.
struct EnergyValue {
    std::optional<mpz_class> exact;
    double approx = 0.0;
};

/// sum_x f(x)^k. Integer exponents are exact; fractional ones sum the count
/// histogram pairwise in double precision. Throws DomainError for k < 0 or a
/// zero denominator.
EnergyValue energy(const RepFn &f, const Exponent &k);

/// E_k(A, B) over differences.
EnergyValue additive_energy(const FiniteSet &a, const FiniteSet &b, const Exponent &k);
/// E_k(A) = E_k(A, A).
EnergyValue additive_energy(const FiniteSet &a, const Exponent &k);
/// Multiplicative energy sum_x r_{A/B}(x)^k.
EnergyValue multiplicative_energy(const FiniteSet &a, const FiniteSet &b, const Exponent &k);

/// #{(p1, p2, q) in P x P x Q : p1 - p2 = q}, i.e. sum over q in Q of
/// delta_P(q).
std::int64_t projection_count(const FiniteSet &p, const FiniteSet &q);

} // namespace sumlab
