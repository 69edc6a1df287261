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

#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "sumlab/error.hpp"
#include "sumlab/family.hpp"
#include "sumlab/incidence.hpp"

using namespace sumlab;

namespace {

std::vector<Line> random_lines(std::mt19937_64 &rng, std::size_t count) {
    std::vector<Line> lines;
    for (std::size_t i = 0; i < count; ++i) {
        long m = static_cast<long>(draw_below(rng, 7)) - 3;
        if (m == 0) m = 1;
        const long den = static_cast<long>(1 + draw_below(rng, 3));
        lines.emplace_back(Rational(mpz_class(m), mpz_class(den)), Rational(static_cast<long>(draw_below(rng, 21)) - 10));
    }
    return lines;
}

} // namespace

TEST_CASE("line incidences: examples") {
    const FiniteSet a = make_set({1, 2, 3});
    const std::vector<Line> diag{Line(1, 0)};
    CHECK(count_incidences_lines(a, a, diag) == 3);
    const std::vector<Line> two{Line(1, 0), Line(2, 0)};
    CHECK(count_incidences_lines(a, a, two) == 4);
    CHECK(count_incidences_lines(a, a, {}) == 0);
    CHECK_THROWS_AS(Line(0, 1), DomainError);
}

TEST_CASE("curve incidences: examples") {
    const ConvexCurve squares(gen_family(ConvexPowerFamily{2}, 5));
    const FiniteSet b = make_set({1, 4, 9});
    const std::vector<CurveTranslate> base{{0, Rational(0)}};
    CHECK(count_incidences_curve(squares, 3, b, base) == 3);
    const std::vector<CurveTranslate> shifted{{1, Rational(0)}};
    CHECK(count_incidences_curve(squares, 3, b, shifted) == 2);
    CHECK(count_incidences_curve(squares, 3, b, {}) == 0);
    const std::vector<CurveTranslate> dropped{{0, Rational(3)}};
    CHECK(count_incidences_curve(squares, 5, b, dropped) == 1);
    CHECK_THROWS_AS(ConvexCurve(make_set({1, 2, 3})), DomainError);
}

TEST_CASE("st_ratio") {
    CHECK(st_ratio(3, 9, 1) == doctest::Approx(3.0 / (std::pow(9.0, 2.0 / 3.0) + 1.0)).epsilon(1e-14));
    CHECK(st_ratio(3, 9, 1) == doctest::Approx(0.5632).epsilon(1e-4));
    CHECK(st_ratio(0, 10, 4) == 0.0);
    CHECK_THROWS_AS(st_ratio(1, 0, 1), DomainError);
    CHECK_THROWS_AS(st_ratio(1, 1, 0), DomainError);
}

TEST_CASE("grid lines and line files") {
    const auto grid = grid_lines(2, 3);
    REQUIRE(grid.size() == 6);
    const FiniteSet a = gen_family(ApFamily{}, 5);
    CHECK(count_incidences_lines(a, a, grid) == oracle::incidences(a, a, grid));
    std::istringstream file("slope,intercept\n# comment\n1,0\n1/2,3/2\n");
    const auto lines = read_lines(file);
    REQUIRE(lines.size() == 2);
    CHECK(lines[1].slope() == Rational::parse("1/2"));
    CHECK(lines[1].intercept() == Rational::parse("3/2"));
    std::istringstream bad("1,0\n0,2\n");
    try {
        (void)read_lines(bad);
        FAIL("expected a zero-slope rejection");
    } catch (const ParseError &e) {
        CHECK(e.line() == 2);
    }
    std::istringstream translates("shift,drop\n0,0\n2,1/3\n");
    const auto t = read_translates(translates);
    REQUIRE(t.size() == 2);
    CHECK(t[1].shift == 2);
    CHECK(t[1].drop == Rational::parse("1/3"));
}

TEST_CASE("oracle: line incidences on random configurations") {
    std::mt19937_64 rng(71);
    for (int trial = 0; trial < 200; ++trial) {
        const FiniteSet a = oracle::random_set(rng, 20, 30, trial % 2 == 0);
        const FiniteSet b = oracle::random_set(rng, 20, 30, trial % 2 == 0);
        const auto lines = random_lines(rng, 1 + draw_below(rng, 50));
        const std::int64_t got = count_incidences_lines(a, b, lines);
        CHECK(got == oracle::incidences(a, b, lines));
        CHECK(got <= static_cast<std::int64_t>(a.size() * lines.size()));
    }
}

TEST_CASE("oracle: curve incidences agree with the curve table") {
    std::mt19937_64 rng(73);
    for (int trial = 0; trial < 100; ++trial) {
        const ConvexCurve f(gen_family(ConvexCustomFamily{static_cast<std::uint64_t>(trial)}, 25));
        const FiniteSet b = oracle::random_set(rng, 20, 200, false, false);
        std::vector<CurveTranslate> ts;
        for (int i = 0; i < 10; ++i) {
            ts.push_back({static_cast<std::int64_t>(draw_below(rng, 11)) - 5, Rational(static_cast<long>(draw_below(rng, 41)) - 20)});
        }
        const std::int64_t range = 1 + static_cast<std::int64_t>(draw_below(rng, 30));
        std::int64_t want = 0;
        for (const CurveTranslate &t : ts) {
            for (std::int64_t x = 1; x <= range; ++x) {
                const std::int64_t j = x - t.shift;
                if (j < 1 || j > static_cast<std::int64_t>(f.size())) continue;
                want += b.contains(f.at(j) - t.drop) ? 1 : 0;
            }
        }
        CHECK(count_incidences_curve(f, range, b, ts) == want);
    }
}

TEST_CASE("property: incidences are invariant under a common dilation") {
    std::mt19937_64 rng(79);
    for (int trial = 0; trial < 100; ++trial) {
        const FiniteSet a = oracle::random_set(rng, 20, 40);
        const FiniteSet b = oracle::random_set(rng, 20, 40);
        const auto lines = random_lines(rng, 30);
        const Rational s(mpz_class(static_cast<long>(1 + draw_below(rng, 7))), mpz_class(static_cast<long>(1 + draw_below(rng, 7))));
        std::vector<Line> scaled;
        for (const Line &l : lines) scaled.emplace_back(l.slope(), l.intercept() * s);
        CHECK(count_incidences_lines(transform(a, s, 0), transform(b, s, 0), scaled) == count_incidences_lines(a, b, lines));
    }
}
