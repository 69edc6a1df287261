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

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <variant>

#include "sumlab/finite_set.hpp"

namespace sumlab {

/// Arithmetic progression a, a+d, ..., a+(n-1)d.
struct ApFamily {
    Rational first = 1;
    Rational step = 1;

    friend bool operator==(const ApFamily &, const ApFamily &) = default;
};

/// Geometric progression a, ar, ..., ar^(n-1).
struct GpFamily {
    Rational first = 1;
    Rational ratio = 2;

    friend bool operator==(const GpFamily &, const GpFamily &) = default;
};

/// {j^k : j in [n]}.
struct ConvexPowerFamily {
    unsigned exponent = 2;

    friend bool operator==(const ConvexPowerFamily &, const ConvexPowerFamily &) = default;
};

/// Convex set starting at 1 whose gap increments are drawn from [1, 4].
struct ConvexCustomFamily {
    std::uint64_t seed = 0;

    friend bool operator==(const ConvexCustomFamily &, const ConvexCustomFamily &) = default;
};

/// Sampling range for random subsets: factor * n^power, so a range can be
/// absolute (power 0) or scale with the requested size.
struct RandomRange {
    std::uint64_t factor = 4;
    unsigned n_power = 1;

    std::uint64_t at(std::size_t n) const;

    friend bool operator==(const RandomRange &, const RandomRange &) = default;
};

/// n distinct integers from [1, N], drawn by rejection.
struct RandomSubsetFamily {
    RandomRange range;
    std::uint64_t seed = 0;

    friend bool operator==(const RandomSubsetFamily &, const RandomSubsetFamily &) = default;
};

enum class PerturbBase { ap, gp, convex };

/// Integer base family with each element moved by u / 2^30, u in [0, 2^28).
struct PerturbedFamily {
    PerturbBase base = PerturbBase::ap;
    std::uint64_t seed = 0;

    friend bool operator==(const PerturbedFamily &, const PerturbedFamily &) = default;
};

using Family = std::variant<ApFamily, GpFamily, ConvexPowerFamily, ConvexCustomFamily, RandomSubsetFamily,
                            PerturbedFamily>;

struct FamilySpec {
    Family family;
    std::size_t n = 0;
};

/// Parses "kind[:key=value,...]"; kinds are ap (a,d), gp (a,r), convex (k),
/// convex_custom (seed), random (range, seed) and perturbed (base, seed).
/// A random range is "N", "<f>n" or "<f>n2" (f times n, f times n^2).
Family parse_family(const std::string &text);
/// Canonical text form; parse_family(family_label(f)) == f.
std::string family_label(const Family &family);

/// Throws InfeasibleSpecError when a random family asks for more elements
/// than its range, DomainError for degenerate parameters.
FiniteSet gen_family(const FamilySpec &spec);
FiniteSet gen_family(const Family &family, std::size_t n);

/// Uniform integer in [0, bound) from a 64-bit engine, by rejection of the
/// biased tail so the stream is identical on every platform.
std::uint64_t draw_below(std::mt19937_64 &rng, std::uint64_t bound);

} // namespace sumlab
