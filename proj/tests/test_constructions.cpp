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

#include "oracles.hpp"
#include "sumlab/constructions.hpp"
#include "sumlab/energy.hpp"
#include "sumlab/error.hpp"
#include "sumlab/family.hpp"

using namespace sumlab;

namespace {

std::int64_t delta_mass(const FiniteSet &a, const FiniteSet &p) {
    const auto d = oracle::rep(a, a, RepOp::diff);
    std::int64_t mass = 0;
    for (const Rational &x : p) mass += d.at(x);
    return mass;
}

// Brute force over the definition; nullopt when the float comparison is too
// close to call.
std::optional<FiniteSet> popular_sums_oracle(const FiniteSet &x, std::size_t m) {
    const auto s = oracle::rep(x, x, RepOp::sum);
    const long double n = static_cast<long double>(x.size());
    const long double threshold = n * n / (8.0L * static_cast<long double>(s.size()) * std::log(static_cast<long double>(m)));
    std::vector<Rational> out;
    for (const auto &[y, c] : s) {
        if (std::fabs(static_cast<long double>(c) - threshold) < 1e-12L) return std::nullopt;
        if (static_cast<long double>(c) >= threshold) out.push_back(y);
    }
    return FiniteSet(out);
}

FiniteSet rich_sums_oracle(const FiniteSet &x, const FiniteSet &p) {
    std::vector<Rational> out;
    for (const Rational &a : x) {
        std::size_t c = 0;
        for (const Rational &b : x) c += p.contains(a + b) ? 1 : 0;
        if (4 * c >= 3 * x.size()) out.push_back(a);
    }
    return FiniteSet(out);
}

std::int64_t sum_triples_oracle(const FiniteSet &b, const SumTriples &st) {
    std::int64_t count = 0;
    for (const Rational &r1 : st.rich) {
        for (const Rational &r2 : st.rich) {
            if (!st.level_set.contains(r1 - r2)) continue;
            for (const Rational &x : b) count += st.popular.contains(r1 + x) && st.popular.contains(r2 + x) ? 1 : 0;
        }
    }
    return count;
}

FiniteSet positive_random(std::mt19937_64 &rng, std::size_t min_size, std::size_t max_size, long range) {
    for (;;) {
        FiniteSet a = oracle::random_set(rng, max_size, range, false, false);
        if (a.size() >= min_size) return a;
    }
}

} // namespace

TEST_CASE("popular and rich differences: examples") {
    const FiniteSet a = make_set({1, 2, 3});
    const FiniteSet p = popular_diffs(a);
    CHECK(p == make_set({-2, -1, 0, 1, 2}));
    CHECK(rich_diff_elements(a, p) == a);
    CHECK(popular_diffs(make_set({7})) == make_set({0}));
    CHECK(rich_diff_elements(make_set({7}), make_set({0})) == make_set({7}));
    CHECK(popular_diffs(gen_family(GpFamily{}, 8)).contains(Rational(0)));
}

TEST_CASE("popular and rich sums: examples") {
    const FiniteSet x = make_set({1, 2, 3});
    CHECK(popular_sums(x, 3) == make_set({2, 3, 4, 5, 6}));
    CHECK(popular_sums(make_set({5}), 10) == make_set({10}));
    CHECK(rich_sum_elements(x, make_set({2, 3, 4, 5, 6})) == x);
    CHECK(rich_sum_elements(make_set({5}), make_set({10})) == make_set({5}));
    CHECK_THROWS_AS(popular_sums(x, 2), DomainError);
    CHECK(size_log(10) == std::log(10.0));
}

TEST_CASE("oracle: popular and rich sets on random inputs") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 300; ++trial) {
        const FiniteSet a = oracle::random_set(rng, 40, 20 + 3 * trial, trial % 3 == 0);
        const FiniteSet p = popular_diffs(a);
        CHECK(p == oracle::popular_diffs(a));
        CHECK(rich_diff_elements(a, p) == oracle::rich_diffs(a, p));
        const std::size_t m = 3 + draw_below(rng, 200);
        const auto want = popular_sums_oracle(a, m);
        const FiniteSet ps = popular_sums(a, m);
        if (want) CHECK(ps == *want);
        CHECK(rich_sum_elements(a, ps) == rich_sums_oracle(a, ps));
    }
}

TEST_CASE("property: popular mass, rich sizes and per-element pair bound") {
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 300; ++trial) {
        const FiniteSet a = oracle::random_set(rng, 60, 30 + 5 * trial, trial % 4 == 0);
        const auto n = static_cast<std::int64_t>(a.size());
        const FiniteSet p = popular_diffs(a);
        CHECK(11 * delta_mass(a, p) >= 10 * n * n);
        const FiniteSet r = rich_diff_elements(a, p);
        CHECK(2 * r.size() > a.size());
        for (const Rational &x : r) {
            std::int64_t c = 0;
            for (const Rational &y : a) c += p.contains(x - y) ? 1 : 0;
            CHECK(11 * c * c >= 4 * n * n);
        }
        for (std::size_t m : {std::size_t{3}, a.size() + 3, std::size_t{1000}}) {
            const FiniteSet rs = rich_sum_elements(a, popular_sums(a, m));
            CHECK(static_cast<double>(rs.size()) >= (1.0 - 1.0 / (2.0 * std::log(static_cast<double>(m)))) * static_cast<double>(n) - 1e-9);
        }
    }
    for (std::size_t n : {16u, 64u, 200u}) {
        for (const Family &f : {Family{ApFamily{}}, Family{GpFamily{}}, Family{ConvexPowerFamily{2}}}) {
            const FiniteSet a = gen_family(f, n);
            const FiniteSet p = popular_diffs(a);
            CHECK(11 * delta_mass(a, p) >= 10 * static_cast<std::int64_t>(n * n));
            CHECK(2 * rich_diff_elements(a, p).size() > n);
        }
    }
}

TEST_CASE("refine_to_b") {
    const Refinement small = refine_to_b(make_set({1, 2, 3}));
    CHECK(small.b == make_set({1, 2, 3}));
    CHECK(small.trace.stop_reason == StopReason::energy_criterion_met);
    CHECK(small.trace.iterates.size() == 1);
    CHECK_THROWS_AS(refine_to_b(make_set({1, 2})), DomainError);
    CHECK(std::string(to_string(StopReason::set_too_small)) == "set-too-small");

    std::mt19937_64 rng(47);
    for (int trial = 0; trial < 120; ++trial) {
        const FiniteSet a = trial % 2 == 0 ? positive_random(rng, 3, 120, 2000)
                                           : gen_family(RandomSubsetFamily{RandomRange{2, 1}, static_cast<std::uint64_t>(trial)}, 3 + trial);
        const Refinement ref = refine_to_b(a);
        const auto &it = ref.trace.iterates;
        REQUIRE_FALSE(it.empty());
        CHECK(it.front() == a);
        CHECK(it.size() <= static_cast<std::size_t>(std::floor(std::log(static_cast<double>(a.size())))) + 1);
        for (std::size_t i = 1; i < it.size(); ++i) {
            CHECK(set_intersection(it[i], it[i - 1]) == it[i]);
            CHECK(it[i] == rich_sum_elements(it[i - 1], popular_sums(it[i - 1], a.size())));
        }
        CHECK(ref.b == it.back());
        if (ref.trace.stop_reason == StopReason::energy_criterion_met) {
            CHECK(2 * ref.b.size() >= a.size());
            const FiniteSet next = rich_sum_elements(ref.b, popular_sums(ref.b, a.size()));
            CHECK(additive_energy(next, Exponent(12, 7)).approx >=
                  additive_energy(ref.b, Exponent(12, 7)).approx / std::log(static_cast<double>(a.size())) * (1 - 1e-9));
        }
    }
}

TEST_CASE("dyadic_pigeonhole") {
    const RepFn d = rep_fn(make_set({1, 2, 3}), make_set({1, 2, 3}), RepOp::diff);
    const DyadicClass c = dyadic_pigeonhole(d, 3);
    CHECK(c.level == 2);
    CHECK(c.members == make_set({-1, 0, 1}));
    CHECK(*c.weighted_mass.exact == 43);
    const DyadicClass one = dyadic_pigeonhole(rep_fn(make_set({4}), make_set({4}), RepOp::diff), Exponent(12, 7));
    CHECK(one.level == 1);
    CHECK(one.members == make_set({0}));

    std::mt19937_64 rng(53);
    for (int trial = 0; trial < 200; ++trial) {
        const FiniteSet a = oracle::random_set(rng, 50, 100, trial % 2 == 0);
        for (Exponent k : {Exponent(12, 7), Exponent(3), Exponent(1)}) {
            const RepFn f = rep_fn(a, a, RepOp::diff);
            const DyadicClass got = dyadic_pigeonhole(f, k);
            // Exhaustive classes: the first strict maximiser wins.
            std::map<std::int64_t, std::pair<long double, std::vector<Rational>>> classes;
            for (std::size_t i = 0; i < f.support_size(); ++i) {
                std::int64_t level = 1;
                while (level * 2 <= f.count(i)) level *= 2;
                classes[level].first += std::pow(static_cast<long double>(f.count(i)), static_cast<long double>(k.value()));
                classes[level].second.push_back(f.value(i));
            }
            std::int64_t best = 0;
            long double best_mass = -1;
            for (const auto &[level, cls] : classes) {
                if (cls.first > best_mass * (1 + 1e-12L)) {
                    best = level;
                    best_mass = cls.first;
                }
            }
            CHECK(got.level == best);
            CHECK(got.members == FiniteSet(classes[best].second));
            CHECK(got.class_count == classes.size());
            CHECK(got.weighted_mass.approx * static_cast<double>(got.class_count) >= energy(f, k).approx * (1 - 1e-12));
        }
    }
}

TEST_CASE("triple_count_diff") {
    CHECK(triple_count_diff(make_set({1, 2, 3})) == 27);
    CHECK(triple_count_diff(make_set({9})) == 1);
    CHECK_THROWS_AS(triple_count_diff(gen_family(ApFamily{}, 20), 10), BudgetError);
    std::mt19937_64 rng(59);
    for (int trial = 0; trial < 150; ++trial) {
        const FiniteSet a = oracle::random_set(rng, 25, 40 + trial, trial % 3 == 0);
        const std::int64_t got = triple_count_diff(a);
        CHECK(got == oracle::triple_count_diff(a));
        const auto n = static_cast<std::int64_t>(a.size());
        CHECK(22 * got >= 3 * n * n * n);
    }
    for (std::size_t n : {30u, 100u, 250u}) {
        for (const Family &f : {Family{ApFamily{}}, Family{GpFamily{}}, Family{ConvexPowerFamily{3}}}) {
            const auto m = static_cast<std::int64_t>(n);
            CHECK(22 * triple_count_diff(gen_family(f, n)) >= 3 * m * m * m);
        }
    }
}

TEST_CASE("triple_count_sum") {
    const SumTriples small = triple_count_sum(make_set({1, 2, 3}), 3);
    CHECK(small.count == sum_triples_oracle(make_set({1, 2, 3}), small));
    CHECK(2 * small.count >= small.level * static_cast<std::int64_t>(small.level_set.size()) * 3);
    const SumTriples single = triple_count_sum(make_set({4}), 10);
    CHECK(single.level == 1);
    CHECK(single.count == 1);
    CHECK_THROWS_AS(triple_count_sum(gen_family(ApFamily{}, 20), 20, 10), BudgetError);

    std::mt19937_64 rng(61);
    for (int trial = 0; trial < 150; ++trial) {
        const FiniteSet b = oracle::random_set(rng, 25, 30 + trial, trial % 3 == 0);
        const std::size_t m = std::max<std::size_t>(3, b.size() + draw_below(rng, 10));
        const SumTriples st = triple_count_sum(b, m);
        CHECK(st.popular == popular_sums(b, m));
        CHECK(st.rich == rich_sum_elements(b, st.popular));
        if (!st.rich.empty()) {
            const DyadicClass cls = dyadic_pigeonhole(rep_fn(st.rich, st.rich, RepOp::diff), Exponent(12, 7));
            CHECK(st.level == cls.level);
            CHECK(st.level_set == cls.members);
        }
        CHECK(st.count == sum_triples_oracle(b, st));
        const auto n = static_cast<std::int64_t>(b.size());
        CHECK(st.count <= n * n * n);
    }
}
