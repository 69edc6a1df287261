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
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sumlab/rational.hpp"

namespace sumlab {

/// Finite subset of Q held as a strictly increasing sequence. Immutable once
/// built; membership is a binary search.
class FiniteSet {
  public:
    using const_iterator = std::vector<Rational>::const_iterator;

    FiniteSet() = default;
    /// Sorts and removes duplicates.
    explicit FiniteSet(std::vector<Rational> values);
    FiniteSet(std::initializer_list<Rational> values) : FiniteSet(std::vector<Rational>(values)) {}

    /// Adopts values that the caller guarantees are strictly increasing.
    static FiniteSet from_sorted_unique(std::vector<Rational> values);

    std::size_t size() const { return elems_.size(); }
    bool empty() const { return elems_.empty(); }
    const Rational &operator[](std::size_t i) const { return elems_[i]; }
    const Rational &min() const { return elems_.front(); }
    const Rational &max() const { return elems_.back(); }
    const_iterator begin() const { return elems_.begin(); }
    const_iterator end() const { return elems_.end(); }
    std::span<const Rational> elements() const { return elems_; }

    bool contains(const Rational &x) const;
    std::optional<std::size_t> index_of(const Rational &x) const;
    /// True when the set equals its negation.
    bool is_symmetric() const;
    /// True when every element is strictly positive.
    bool is_positive() const { return empty() || min().sign() > 0; }

    friend bool operator==(const FiniteSet &, const FiniteSet &) = default;

  private:
    std::vector<Rational> elems_;
};

/// Canonical set from an arbitrary sequence (duplicates collapse).
FiniteSet make_set(std::vector<Rational> values);
FiniteSet make_set(std::initializer_list<long> values);

/// {scale * a + shift : a in A}. Throws InvalidScaleError when scale is zero.
FiniteSet transform(const FiniteSet &a, const Rational &scale, const Rational &shift);

/// A intersected with A / lambda. Throws InvalidScaleError when lambda is zero.
FiniteSet intersect_dilate(const FiniteSet &a, const Rational &lambda);

/// Consecutive gaps strictly increase (vacuous for at most two elements).
bool is_convex(const FiniteSet &a);

FiniteSet set_intersection(const FiniteSet &a, const FiniteSet &b);

/// Element-per-line text: "p" or "p/q", '#' starts a comment line, blank
/// lines are skipped.
FiniteSet read_set(std::istream &in);
FiniteSet read_set_file(const std::string &path);
void write_set(std::ostream &out, const FiniteSet &a);

std::string describe(const FiniteSet &a, std::size_t max_elems = 6);

} // namespace sumlab
