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
#include <limits>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "sumlab/energy.hpp"
#include "sumlab/error.hpp"
#include "sumlab/family.hpp"
#include "sumlab/rep_fn.hpp"

using namespace sumlab;

namespace {

std::map<Rational, std::int64_t> as_map(const RepFn &f) {
    std::map<Rational, std::int64_t> m;
    for (std::size_t i = 0; i < f.support_size(); ++i) m[f.value(i)] = f.count(i);
    return m;
}

std::int64_t exact_i64(const EnergyValue &e) {
    REQUIRE(e.exact.has_value());
    REQUIRE(e.exact->fits_slong_p());
    return e.exact->get_si();
}

constexpr RepOp kOps[] = {RepOp::sum, RepOp::diff, RepOp::prod, RepOp::ratio};

} // namespace

TEST_CASE("pair_set examples") {
    const FiniteSet a = make_set({1, 2, 3});
    CHECK(pair_set(a, a, RepOp::sum) == make_set({2, 3, 4, 5, 6}));
    CHECK(pair_set_size(a, a, RepOp::sum) == 5);
    CHECK(pair_set(a, a, RepOp::prod) == make_set({1, 2, 3, 4, 6, 9}));
    CHECK(pair_set_size(a, a, RepOp::prod) == 6);
    CHECK(pair_set(make_set({7}), make_set({-2}), RepOp::diff) == make_set({9}));
    CHECK_THROWS_AS(pair_set(a, make_set({0, 1}), RepOp::ratio), DomainError);
    CHECK_THROWS_AS(rep_fn(a, make_set({0}), RepOp::ratio), DomainError);
    CHECK_NOTHROW(rep_fn(make_set({0}), a, RepOp::ratio));
}

TEST_CASE("rep_fn examples") {
    const FiniteSet a = make_set({1, 2, 3});
    const std::map<Rational, std::int64_t> diff{{-2, 1}, {-1, 2}, {0, 3}, {1, 2}, {2, 1}};
    CHECK(as_map(rep_fn(a, a, RepOp::diff)) == diff);
    const std::map<Rational, std::int64_t> sum{{2, 1}, {3, 2}, {4, 3}, {5, 2}, {6, 1}};
    CHECK(as_map(rep_fn(a, a, RepOp::sum)) == sum);
    const RepFn single = rep_fn(make_set({4}), make_set({4}), RepOp::diff);
    CHECK(as_map(single) == std::map<Rational, std::int64_t>{{0, 1}});
    const RepFn d = rep_fn(a, a, RepOp::diff);
    CHECK(d.count_of(Rational(0)) == 3);
    CHECK(d.count_of(Rational(5)) == 0);
    CHECK(d.max_count() == 3);
    CHECK(d.total_mass() == 9);
    CHECK(d.left_size() == 3);
    CHECK(d.right_size() == 3);
}

TEST_CASE("energy examples") {
    const RepFn d = rep_fn(make_set({1, 2, 3}), make_set({1, 2, 3}), RepOp::diff);
    CHECK(exact_i64(energy(d, 2)) == 19);
    CHECK(exact_i64(energy(d, 3)) == 45);
    CHECK(exact_i64(energy(d, 1)) == 9);
    CHECK(energy(d, 2).approx == 19.0);
    const EnergyValue e32 = energy(d, Exponent(3, 2));
    CHECK_FALSE(e32.exact.has_value());
    CHECK(e32.approx == doctest::Approx(std::pow(3.0, 1.5) + 2 * std::pow(2.0, 1.5) + 2.0).epsilon(1e-14));
    CHECK_THROWS_AS(energy(d, Exponent(-1, 2)), DomainError);
    CHECK_THROWS_AS(Exponent::parse("1/0"), Error);
    CHECK(Exponent::parse("24/14") == Exponent(12, 7));
    CHECK(Exponent(12, 7).str() == "12/7");
}

TEST_CASE("projection_count examples") {
    const FiniteSet p = make_set({-2, -1, 0, 1, 2});
    CHECK(projection_count(p, p) == 19);
    CHECK(projection_count(make_set({1, 5, 6, 40}), make_set({0})) == 4);
    CHECK(projection_count(make_set({0, 1}), make_set({5})) == 0);
}

TEST_CASE("rep csv output") {
    std::ostringstream out;
    write_rep_csv(out, rep_fn(make_set({1, 2}), make_set({1, 2}), RepOp::sum));
    CHECK(out.str() == "value,count\n2/1,1\n3/1,2\n4/1,1\n");
}

TEST_CASE("oracle: rep_fn, pair_set_size and energies on random sets") {
    std::mt19937_64 rng(2026);
    for (int trial = 0; trial < 300; ++trial) {
        const bool fractions = trial % 3 == 0;
        const FiniteSet a = oracle::random_set(rng, 30, 60, fractions);
        const FiniteSet b = oracle::random_set(rng, 30, 60, fractions);
        for (RepOp op : kOps) {
            if (op == RepOp::ratio && b.contains(Rational(0))) {
                CHECK_THROWS_AS(rep_fn(a, b, op), DomainError);
                continue;
            }
            const RepFn f = rep_fn(a, b, op);
            const auto want = oracle::rep(a, b, op);
            REQUIRE(as_map(f) == want);
            CHECK(pair_set_size(a, b, op) == want.size());
            CHECK(pair_set(a, b, op) == f.support());
        }
        CHECK(exact_i64(additive_energy(a, b, 2)) == oracle::energy2_quadruples(a, b));
        for (int k : {0, 1, 2, 3, 4}) CHECK(exact_i64(additive_energy(a, b, k)) == oracle::energy_int(a, b, k));
        for (Exponent k : {Exponent(3, 2), Exponent(12, 7), Exponent(12, 5)}) {
            CHECK(additive_energy(a, b, k).approx == doctest::Approx(oracle::energy_real(a, b, k.value())).epsilon(1e-12));
        }
    }
}

TEST_CASE("oracle: projection_count on random sets") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 300; ++trial) {
        const FiniteSet p = oracle::random_set(rng, 30, 40 + trial, trial % 4 == 0);
        const FiniteSet q = oracle::random_set(rng, 30, 40 + trial, trial % 4 == 0);
        CHECK(projection_count(p, q) == oracle::projection(p, q));
        CHECK(projection_count(p, p) == oracle::projection(p, p));
    }
}

TEST_CASE("projection_count agrees across dense, sparse and wide representations") {
    // Dense interval, sparse geometric, and huge-magnitude geometric sets.
    const FiniteSet ap = gen_family(ApFamily{}, 150);
    const FiniteSet gp = gen_family(GpFamily{}, 40);
    const FiniteSet gp_wide = gen_family(GpFamily{}, 90);
    CHECK(projection_count(ap, ap) == oracle::projection(ap, ap));
    CHECK(projection_count(gp, gp) == oracle::projection(gp, gp));
    CHECK(projection_count(gp_wide, gp_wide) == oracle::projection(gp_wide, gp_wide));
    const FiniteSet ap_minus = pair_set(ap, ap, RepOp::diff);
    CHECK(projection_count(ap, ap_minus) == 150 * 150);
}

TEST_CASE("wide sets: residue path matches the oracle") {
    // Values above 2^61 force the modular images.
    const FiniteSet gp = gen_family(GpFamily{Rational(1), Rational(3)}, 60);
    const FiniteSet mixed = FiniteSet{Rational(mpz_class(1) << 90, mpz_class(7)), Rational(1), Rational(2),
                                      Rational((mpz_class(1) << 90) + 1, mpz_class(7)), Rational::parse("1/3")};
    for (const FiniteSet &a : {gp, mixed}) {
        for (RepOp op : kOps) {
            CHECK(as_map(rep_fn(a, a, op)) == oracle::rep(a, a, op));
            CHECK(pair_set_size(a, a, op) == oracle::rep(a, a, op).size());
        }
        CHECK(exact_i64(additive_energy(a, 3)) == oracle::energy_int(a, a, 3));
    }
}

TEST_CASE("property: mass, symmetry, Cauchy-Schwarz and monotone moments") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        const FiniteSet a = oracle::random_set(rng, 40, 300, trial % 2 == 0);
        const FiniteSet b = oracle::random_set(rng, 40, 300, trial % 2 == 0);
        const auto n = static_cast<std::int64_t>(a.size());
        const auto m = static_cast<std::int64_t>(b.size());
        for (RepOp op : {RepOp::sum, RepOp::diff, RepOp::prod}) CHECK(rep_fn(a, b, op).total_mass() == n * m);

        const RepFn d = rep_fn(a, a, RepOp::diff);
        for (std::size_t i = 0; i < d.support_size(); ++i) CHECK(d.count_of(-d.value(i)) == d.count(i));
        CHECK(d.count_of(Rational(0)) == n);
        CHECK(d.max_count() == n);

        for (RepOp op : {RepOp::sum, RepOp::diff}) {
            const RepFn f = rep_fn(a, b, op);
            const mpz_class e2 = *energy(f, 2).exact;
            CHECK(mpz_class(n * m) * mpz_class(n * m) <= e2 * static_cast<long>(f.support_size()));
        }
        // E_k^{1/k} shrinks as k grows.
        double prev = std::numeric_limits<double>::infinity();
        for (Exponent k : {Exponent(1), Exponent(3, 2), Exponent(12, 7), Exponent(2), Exponent(12, 5), Exponent(3)}) {
            const double norm = std::pow(energy(d, k).approx, 1.0 / k.value());
            CHECK(norm <= prev * (1 + 1e-12));
            prev = norm;
        }
        CHECK(energy(d, Exponent(0)).approx == static_cast<double>(d.support_size()));
    }
}

TEST_CASE("property: dilation and translation invariance") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 100; ++trial) {
        const FiniteSet a = oracle::random_set(rng, 30, 100, true);
        const Rational s(mpz_class(static_cast<long>(1 + draw_below(rng, 9))), mpz_class(static_cast<long>(1 + draw_below(rng, 9))));
        const FiniteSet moved = transform(a, s, Rational::parse("3/11"));
        for (Exponent k : {Exponent(2), Exponent(3), Exponent(12, 7)}) {
            CHECK(additive_energy(moved, k).approx == doctest::Approx(additive_energy(a, k).approx).epsilon(1e-13));
        }
        CHECK(pair_set_size(moved, moved, RepOp::sum) == pair_set_size(a, a, RepOp::sum));
        CHECK(projection_count(moved, transform(a, s, 0)) == projection_count(a, a));
        const FiniteSet pos = transform(a, 1, -a.min() + 1);
        const FiniteSet pos_scaled = transform(pos, s, 0);
        CHECK(exact_i64(multiplicative_energy(pos, pos, 2)) == exact_i64(multiplicative_energy(pos_scaled, pos_scaled, 2)));
    }
}

TEST_CASE("multiplicative energy matches the ratio representation") {
    const FiniteSet a = make_set({1, 2, 3, 4, 6});
    const auto r = oracle::rep(a, a, RepOp::ratio);
    std::int64_t e2 = 0;
    for (const auto &[x, c] : r) e2 += c * c;
    CHECK(exact_i64(multiplicative_energy(a, a, 2)) == e2);
    CHECK_THROWS_AS(multiplicative_energy(a, make_set({0, 1}), 2), DomainError);
}
