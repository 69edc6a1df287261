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
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "sumlab/finite_set.hpp"

namespace sumlab {

/// Non-axis-parallel line y = slope * x + intercept.
class Line {
  public:
    /// Throws DomainError for a zero slope.
    Line(Rational slope, Rational intercept);

    const Rational &slope() const { return slope_; }
    const Rational &intercept() const { return intercept_; }

  private:
    Rational slope_;
    Rational intercept_;
};

/// A convex set read as the table j -> a_j, j = 1..|A|, of a convex function.
class ConvexCurve {
  public:
    /// Throws DomainError when the values are not convex.
    explicit ConvexCurve(FiniteSet values);

    std::size_t size() const { return values_.size(); }
    /// a_j for 1 <= j <= size().
    const Rational &at(std::int64_t j) const { return values_[static_cast<std::size_t>(j - 1)]; }
    const FiniteSet &values() const { return values_; }

  private:
    FiniteSet values_;
};

/// The translate x -> f(x - shift) - drop.
struct CurveTranslate {
    std::int64_t shift = 0;
    Rational drop;
};

/// #{(a, b, l) in A x B x L : b = slope(l) a + intercept(l)}.
std::int64_t count_incidences_lines(const FiniteSet &a, const FiniteSet &b, std::span<const Line> lines);

/// #{(x, b, t) : x in [index_range], b in B, f(x - shift_t) - drop_t = b};
/// arguments outside the table contribute nothing.
std::int64_t count_incidences_curve(const ConvexCurve &f, std::int64_t index_range, const FiniteSet &b,
                                    std::span<const CurveTranslate> translates);

/// incidences / ((points * lines)^{2/3} + lines). Throws DomainError unless
/// points and lines are positive.
double st_ratio(std::int64_t incidences, std::int64_t points, std::int64_t lines);

/// y = m x + c for m in [slopes], c in [intercepts].
std::vector<Line> grid_lines(std::size_t slopes, std::size_t intercepts);

/// CSV "slope,intercept" with rational entries; an optional header row and
/// '#' comment lines are skipped. Zero slopes are rejected with the line number.
std::vector<Line> read_lines(std::istream &in);
std::vector<Line> read_lines_file(const std::string &path);

/// CSV "shift,drop".
std::vector<CurveTranslate> read_translates(std::istream &in);
std::vector<CurveTranslate> read_translates_file(const std::string &path);

} // namespace sumlab
