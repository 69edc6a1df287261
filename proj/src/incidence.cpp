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

#include "sumlab/incidence.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <unordered_set>

#include "sumlab/error.hpp"

namespace sumlab {

namespace {

bool small_integer(const Rational &x, long limit) {
    return x.is_integer() && x.num().fits_slong_p() && std::labs(x.num().get_si()) <= limit;
}

template <class Row> std::vector<Row> read_csv_pairs(std::istream &in, const char *header, auto &&make) {
    std::vector<Row> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string_view v(line);
        while (!v.empty() && std::isspace(static_cast<unsigned char>(v.front()))) v.remove_prefix(1);
        if (v.empty() || v.front() == '#') continue;
        if (v.rfind(header, 0) == 0) continue;
        const auto comma = v.find(',');
        if (comma == std::string_view::npos) throw ParseError("expected two comma-separated fields", lineno);
        try {
            out.push_back(make(Rational::parse(v.substr(0, comma)), Rational::parse(v.substr(comma + 1))));
        } catch (const DomainError &e) {
            throw ParseError(e.what(), lineno);
        } catch (const ParseError &e) {
            throw ParseError(e.what(), lineno);
        }
    }
    return out;
}

} // namespace

Line::Line(Rational slope, Rational intercept) : slope_(std::move(slope)), intercept_(std::move(intercept)) {
    if (slope_.is_zero()) throw DomainError("line slope must be nonzero");
}

ConvexCurve::ConvexCurve(FiniteSet values) : values_(std::move(values)) {
    if (!is_convex(values_)) throw DomainError("curve table is not convex");
}

std::int64_t count_incidences_lines(const FiniteSet &a, const FiniteSet &b, std::span<const Line> lines) {
    if (a.empty() || b.empty() || lines.empty()) return 0;
    constexpr long kLimit = 1L << 30;
    bool integral = true;
    for (const auto &x : a) integral = integral && small_integer(x, kLimit);
    for (const auto &x : b) integral = integral && small_integer(x, std::numeric_limits<long>::max());
    for (const auto &l : lines) integral = integral && small_integer(l.slope(), kLimit) && small_integer(l.intercept(), kLimit);
    std::int64_t count = 0;
    if (integral) {
        // |m a + c| < 2^61, so the arithmetic is exact in int64.
        std::vector<long> xs;
        xs.reserve(a.size());
        for (const auto &x : a) xs.push_back(x.num().get_si());
        std::unordered_set<long> ys;
        ys.reserve(2 * b.size());
        for (const auto &y : b) ys.insert(y.num().get_si());
        for (const auto &l : lines) {
            const long m = l.slope().num().get_si();
            const long c = l.intercept().num().get_si();
            for (long x : xs) count += ys.count(m * x + c) ? 1 : 0;
        }
        return count;
    }
    for (const auto &l : lines) {
        for (const auto &x : a) count += b.contains(l.slope() * x + l.intercept()) ? 1 : 0;
    }
    return count;
}

std::int64_t count_incidences_curve(const ConvexCurve &f, std::int64_t index_range, const FiniteSet &b,
                                    std::span<const CurveTranslate> translates) {
    std::int64_t count = 0;
    const auto table = static_cast<std::int64_t>(f.size());
    for (const auto &t : translates) {
        // x ranges over [1, index_range] with 1 <= x - shift <= |f|; the values
        // f(x - shift) - drop increase with x, so a merge against B suffices.
        const std::int64_t lo = std::max<std::int64_t>(1, 1 - t.shift);
        const std::int64_t hi = std::min<std::int64_t>(table, index_range - t.shift);
        std::size_t k = 0;
        for (std::int64_t j = lo; j <= hi && k < b.size(); ++j) {
            const Rational v = f.at(j) - t.drop;
            while (k < b.size() && b[k] < v) ++k;
            if (k < b.size() && b[k] == v) ++count;
        }
    }
    return count;
}

double st_ratio(std::int64_t incidences, std::int64_t points, std::int64_t lines) {
    if (points < 1 || lines < 1) throw DomainError("st_ratio needs at least one point and one line");
    const double denom = std::pow(static_cast<double>(points) * static_cast<double>(lines), 2.0 / 3.0) +
                         static_cast<double>(lines);
    return static_cast<double>(incidences) / denom;
}

std::vector<Line> grid_lines(std::size_t slopes, std::size_t intercepts) {
    std::vector<Line> out;
    out.reserve(slopes * intercepts);
    for (std::size_t m = 1; m <= slopes; ++m) {
        for (std::size_t c = 1; c <= intercepts; ++c) {
            out.emplace_back(Rational(static_cast<long>(m)), Rational(static_cast<long>(c)));
        }
    }
    return out;
}

std::vector<Line> read_lines(std::istream &in) {
    return read_csv_pairs<Line>(in, "slope", [](Rational m, Rational c) { return Line(std::move(m), std::move(c)); });
}

std::vector<Line> read_lines_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw std::ios_base::failure("cannot open line file '" + path + "'");
    return read_lines(in);
}

std::vector<CurveTranslate> read_translates(std::istream &in) {
    return read_csv_pairs<CurveTranslate>(in, "shift", [](Rational s, Rational d) {
        if (!s.is_integer() || !s.num().fits_slong_p()) throw DomainError("curve shift must be an integer");
        return CurveTranslate{s.num().get_si(), std::move(d)};
    });
}

std::vector<CurveTranslate> read_translates_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw std::ios_base::failure("cannot open translate file '" + path + "'");
    return read_translates(in);
}

} // namespace sumlab
