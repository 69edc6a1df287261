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

#include "sumlab/finite_set.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "sumlab/error.hpp"

namespace sumlab {

FiniteSet::FiniteSet(std::vector<Rational> values) : elems_(std::move(values)) {
    std::sort(elems_.begin(), elems_.end());
    elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
}

FiniteSet FiniteSet::from_sorted_unique(std::vector<Rational> values) {
    FiniteSet s;
    s.elems_ = std::move(values);
    return s;
}

bool FiniteSet::contains(const Rational &x) const { return std::binary_search(elems_.begin(), elems_.end(), x); }

std::optional<std::size_t> FiniteSet::index_of(const Rational &x) const {
    auto it = std::lower_bound(elems_.begin(), elems_.end(), x);
    if (it == elems_.end() || *it != x) return std::nullopt;
    return static_cast<std::size_t>(it - elems_.begin());
}

bool FiniteSet::is_symmetric() const {
    const std::size_t n = elems_.size();
    for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
        if (elems_[i] != -elems_[n - 1 - i]) return false;
    }
    return true;
}

FiniteSet make_set(std::vector<Rational> values) { return FiniteSet(std::move(values)); }

FiniteSet make_set(std::initializer_list<long> values) {
    std::vector<Rational> v;
    v.reserve(values.size());
    for (long x : values) v.emplace_back(x);
    return FiniteSet(std::move(v));
}

FiniteSet transform(const FiniteSet &a, const Rational &scale, const Rational &shift) {
    if (scale.is_zero()) throw InvalidScaleError("transform: scale must be nonzero");
    std::vector<Rational> out;
    out.reserve(a.size());
    for (const auto &x : a) out.push_back(scale * x + shift);
    if (scale.sign() < 0) std::reverse(out.begin(), out.end());
    return FiniteSet::from_sorted_unique(std::move(out));
}

FiniteSet set_intersection(const FiniteSet &a, const FiniteSet &b) {
    std::vector<Rational> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return FiniteSet::from_sorted_unique(std::move(out));
}

FiniteSet intersect_dilate(const FiniteSet &a, const Rational &lambda) {
    if (lambda.is_zero()) throw InvalidScaleError("intersect_dilate: lambda must be nonzero");
    const Rational inv = Rational(1) / lambda;
    return set_intersection(a, transform(a, inv, 0));
}

bool is_convex(const FiniteSet &a) {
    if (a.size() <= 2) return true;
    Rational prev_gap = a[1] - a[0];
    for (std::size_t j = 2; j < a.size(); ++j) {
        Rational gap = a[j] - a[j - 1];
        if (gap <= prev_gap) return false;
        prev_gap = std::move(gap);
    }
    return true;
}

FiniteSet read_set(std::istream &in) {
    std::vector<Rational> values;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view v(line);
        while (!v.empty() && std::isspace(static_cast<unsigned char>(v.front()))) v.remove_prefix(1);
        if (v.empty() || v.front() == '#') continue;
        try {
            values.push_back(Rational::parse(v));
        } catch (const ParseError &e) {
            throw ParseError(e.what(), lineno);
        }
    }
    return FiniteSet(std::move(values));
}

FiniteSet read_set_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw std::ios_base::failure("cannot open set file '" + path + "'");
    return read_set(in);
}

void write_set(std::ostream &out, const FiniteSet &a) {
    for (const auto &x : a) out << x.str() << '\n';
}

std::string describe(const FiniteSet &a, std::size_t max_elems) {
    std::ostringstream os;
    os << '{';
    for (std::size_t i = 0; i < a.size() && i < max_elems; ++i) os << (i ? "," : "") << a[i].str();
    if (a.size() > max_elems) os << ",...";
    os << "} n=" << a.size();
    return os.str();
}

} // namespace sumlab
