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

#include <random>
#include <sstream>

#include "oracles.hpp"
#include "sumlab/error.hpp"
#include "sumlab/family.hpp"
#include "sumlab/finite_set.hpp"

using namespace sumlab;

TEST_CASE("rational canonical form and ordering") {
    CHECK(Rational(mpz_class(2), mpz_class(4)) == Rational(mpz_class(1), mpz_class(2)));
    CHECK(Rational(mpz_class(3), mpz_class(-6)).str() == "-1/2");
    CHECK(Rational::parse(" -12/8 ").str() == "-3/2");
    CHECK(Rational::parse("7").str_pq() == "7/1");
    CHECK(Rational(1) / Rational(3) < Rational(mpz_class(34), mpz_class(100)));
    CHECK_THROWS_AS(Rational(mpz_class(1), mpz_class(0)), DomainError);
    CHECK_THROWS_AS(Rational(1) / Rational(0), DomainError);
    CHECK_THROWS_AS(Rational::parse("1/0"), ParseError);
    CHECK_THROWS_AS(Rational::parse("abc"), ParseError);
    CHECK_THROWS_AS(Rational::parse("1/2/3"), ParseError);
    CHECK(std::hash<Rational>{}(Rational::parse("2/4")) == std::hash<Rational>{}(Rational::parse("1/2")));
}

TEST_CASE("rational to_double rounds to nearest") {
    CHECK(Rational::parse("1/3").to_double() == 1.0 / 3.0);
    CHECK(Rational::parse("-5/2").to_double() == -2.5);
    // 2^53 + 1 lies halfway between two doubles; ties go to even.
    const mpz_class big = (mpz_class(1) << 53) + 1;
    CHECK(Rational(big, mpz_class(1)).to_double() == 9007199254740992.0);
    const mpz_class big3 = (mpz_class(1) << 53) + 3;
    CHECK(Rational(big3, mpz_class(1)).to_double() == 9007199254740996.0);
    CHECK(Rational(mpz_class(1) << 2000, mpz_class(3) << 1999).to_double() == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("make_set examples") {
    CHECK(make_set({3, 1, 2, 2}) == make_set({1, 2, 3}));
    CHECK(make_set(std::vector<Rational>{}).empty());
    const FiniteSet half = make_set({Rational::parse("1/2"), Rational::parse("2/4")});
    CHECK(half.size() == 1);
    CHECK(half[0].str() == "1/2");
}

TEST_CASE("transform examples") {
    const FiniteSet a = make_set({1, 2, 3});
    CHECK(transform(a, 2, 0) == make_set({2, 4, 6}));
    CHECK(transform(a, 1, -2) == make_set({-1, 0, 1}));
    CHECK(transform(a, -1, 0) == make_set({-3, -2, -1}));
    CHECK_THROWS_AS(transform(a, 0, 1), InvalidScaleError);
}

TEST_CASE("intersect_dilate examples") {
    CHECK(intersect_dilate(make_set({1, 2, 4}), 2) == make_set({1, 2}));
    const FiniteSet a = make_set({-3, 1, 5, 8});
    CHECK(intersect_dilate(a, 1) == a);
    CHECK(intersect_dilate(make_set({1, 3}), 2).empty());
    CHECK_THROWS_AS(intersect_dilate(a, 0), InvalidScaleError);
}

TEST_CASE("is_convex examples") {
    CHECK(is_convex(make_set({1, 4, 9, 16})));
    CHECK_FALSE(is_convex(make_set({1, 2, 3})));
    CHECK(is_convex(make_set({5})));
    CHECK(is_convex(FiniteSet{}));
    CHECK(is_convex(make_set({2, 7})));
}

TEST_CASE("gen_family examples") {
    CHECK(gen_family(ApFamily{}, 3) == make_set({1, 2, 3}));
    CHECK(gen_family(GpFamily{}, 4) == make_set({1, 2, 4, 8}));
    const FiniteSet sq = gen_family(ConvexPowerFamily{2}, 4);
    CHECK(sq == make_set({1, 4, 9, 16}));
    CHECK(is_convex(sq));
    CHECK(gen_family(parse_family("ap:a=-1/2,d=3"), 3) == FiniteSet{Rational::parse("-1/2"), Rational::parse("5/2"),
                                                                       Rational::parse("11/2")});
    CHECK(gen_family(parse_family("gp:a=3,r=-2"), 3) == make_set({-6, 3, 12}));
}

TEST_CASE("gen_family errors") {
    CHECK_THROWS_AS(gen_family(parse_family("random:range=10"), 11), InfeasibleSpecError);
    CHECK_NOTHROW(gen_family(parse_family("random:range=10"), 10));
    CHECK_THROWS_AS(gen_family(parse_family("ap:d=0"), 3), DomainError);
    CHECK_THROWS_AS(gen_family(parse_family("gp:r=1"), 3), DomainError);
    CHECK_THROWS_AS(gen_family(parse_family("gp:r=-1"), 3), DomainError);
    CHECK_THROWS_AS(gen_family(parse_family("gp:r=0"), 3), DomainError);
    CHECK_THROWS_AS(gen_family(parse_family("convex:k=1"), 3), DomainError);
    CHECK_THROWS_AS(parse_family("hyperbolic"), ParseError);
    CHECK_THROWS_AS(parse_family("ap:q=1"), ParseError);
}

TEST_CASE("family labels round-trip") {
    for (const char *text : {"ap:a=1,d=1", "gp:a=1/3,r=-2", "convex:k=3", "convex_custom:seed=5", "random:range=4n,seed=2",
                             "random:range=100,seed=0", "random:range=1n2,seed=9", "perturbed:base=gp,seed=4"}) {
        const Family f = parse_family(text);
        CHECK(parse_family(family_label(f)) == f);
    }
    CHECK(family_label(parse_family("ap")) == "ap:a=1,d=1");
}

TEST_CASE("random families are exact-size, in range and reproducible") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const Family f = RandomSubsetFamily{RandomRange{2, 1}, seed};
        const FiniteSet a = gen_family(f, 50);
        CHECK(a.size() == 50);
        CHECK(a.min() >= Rational(1));
        CHECK(a.max() <= Rational(100));
        CHECK(gen_family(f, 50) == a);
    }
    CHECK(gen_family(RandomSubsetFamily{RandomRange{2, 1}, 1}, 50) != gen_family(RandomSubsetFamily{RandomRange{2, 1}, 2}, 50));
    // The whole range when n equals N.
    CHECK(gen_family(RandomSubsetFamily{RandomRange{7, 0}, 3}, 7) == gen_family(ApFamily{}, 7));
}

TEST_CASE("convex families are convex and deterministic") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const FiniteSet c = gen_family(ConvexCustomFamily{seed}, 40);
        CHECK(c.size() == 40);
        CHECK(is_convex(c));
        CHECK(gen_family(ConvexCustomFamily{seed}, 40) == c);
    }
    for (unsigned k = 2; k < 6; ++k) CHECK(is_convex(gen_family(ConvexPowerFamily{k}, 30)));
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        CHECK(is_convex(gen_family(PerturbedFamily{PerturbBase::convex, seed}, 30)));
        CHECK(gen_family(PerturbedFamily{PerturbBase::gp, seed}, 30).size() == 30);
    }
}

TEST_CASE("draw_below is uniform over small bounds") {
    std::mt19937_64 rng(7);
    std::vector<int> hist(5, 0);
    for (int i = 0; i < 50000; ++i) ++hist[draw_below(rng, 5)];
    for (int h : hist) CHECK(h == doctest::Approx(10000).epsilon(0.05));
}

TEST_CASE("property: transforms are bijections that keep convexity for positive scale") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const FiniteSet a = oracle::random_set(rng, 30, 200, true);
        const long num = static_cast<long>(draw_below(rng, 9)) + 1;
        const Rational s(mpz_class(num), mpz_class(static_cast<long>(1 + draw_below(rng, 5))));
        const Rational t(static_cast<long>(draw_below(rng, 21)) - 10);
        const FiniteSet b = transform(a, s, t);
        CHECK(b.size() == a.size());
        CHECK(transform(b, Rational(1) / s, -t / s) == a);
        CHECK(is_convex(b) == is_convex(a));
        const FiniteSet neg = transform(a, -s, t);
        CHECK(neg.size() == a.size());
    }
}

TEST_CASE("set file round trip and parse errors") {
    const FiniteSet a = FiniteSet{Rational(-3), Rational::parse("1/2"), Rational(7)};
    std::stringstream ss;
    write_set(ss, a);
    CHECK(read_set(ss) == a);
    std::stringstream with_comments("# header\n\n3\n  1/2\n#x\n3\n");
    CHECK(read_set(with_comments) == FiniteSet{Rational::parse("1/2"), Rational(3)});
    std::stringstream bad("1\n2\nx\n");
    try {
        (void)read_set(bad);
        FAIL("expected a parse error");
    } catch (const ParseError &e) {
        CHECK(e.line() == 3);
    }
}

TEST_CASE("membership queries") {
    const FiniteSet a = make_set({-5, 0, 2, 9});
    CHECK(a.contains(Rational(2)));
    CHECK_FALSE(a.contains(Rational(3)));
    CHECK(a.index_of(Rational(9)).value() == 3);
    CHECK_FALSE(a.index_of(Rational(1)).has_value());
    CHECK(make_set({-2, 0, 2}).is_symmetric());
    CHECK_FALSE(a.is_symmetric());
    CHECK(describe(make_set({1, 2, 3})) == "{1,2,3} n=3");
}
