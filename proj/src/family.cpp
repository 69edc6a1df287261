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

#include "sumlab/family.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <unordered_set>

#include "sumlab/error.hpp"

namespace sumlab {

namespace {

using Params = std::map<std::string, std::string>;

Params parse_params(const std::string &text) {
    Params out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw ParseError("family parameter '" + item + "' lacks '='");
        out[item.substr(0, eq)] = item.substr(eq + 1);
    }
    return out;
}

std::uint64_t parse_u64(const std::string &s) {
    if (s.empty() || !std::all_of(s.begin(), s.end(), ::isdigit)) throw ParseError("expected unsigned integer, got '" + s + "'");
    return std::stoull(s);
}

RandomRange parse_range(const std::string &s) {
    RandomRange r;
    if (s.size() >= 2 && s.substr(s.size() - 2) == "n2") {
        r.n_power = 2;
        r.factor = s.size() == 2 ? 1 : parse_u64(s.substr(0, s.size() - 2));
    } else if (!s.empty() && s.back() == 'n') {
        r.n_power = 1;
        r.factor = s.size() == 1 ? 1 : parse_u64(s.substr(0, s.size() - 1));
    } else {
        r.n_power = 0;
        r.factor = parse_u64(s);
    }
    if (r.factor == 0) throw ParseError("random range must be positive");
    return r;
}

std::string range_label(const RandomRange &r) {
    std::string f = std::to_string(r.factor);
    switch (r.n_power) {
    case 0:
        return f;
    case 1:
        return f + "n";
    default:
        return f + "n2";
    }
}

void expect_keys(const Params &p, std::initializer_list<const char *> allowed, const std::string &kind) {
    for (const auto &[k, v] : p) {
        if (std::find_if(allowed.begin(), allowed.end(), [&](const char *a) { return k == a; }) == allowed.end()) {
            throw ParseError("unknown parameter '" + k + "' for family " + kind);
        }
    }
}

std::string get(const Params &p, const char *key, const char *fallback) {
    auto it = p.find(key);
    return it == p.end() ? fallback : it->second;
}

FiniteSet perturb_base(PerturbBase base, std::size_t n) {
    switch (base) {
    case PerturbBase::ap:
        return gen_family(ApFamily{}, n);
    case PerturbBase::gp:
        return gen_family(GpFamily{}, n);
    case PerturbBase::convex:
        return gen_family(ConvexPowerFamily{}, n);
    }
    return {};
}

const char *base_name(PerturbBase b) {
    switch (b) {
    case PerturbBase::ap:
        return "ap";
    case PerturbBase::gp:
        return "gp";
    case PerturbBase::convex:
        return "convex";
    }
    return "?";
}

} // namespace

std::uint64_t RandomRange::at(std::size_t n) const {
    std::uint64_t v = factor;
    for (unsigned i = 0; i < n_power; ++i) v *= n;
    return v;
}

std::uint64_t draw_below(std::mt19937_64 &rng, std::uint64_t bound) {
    const std::uint64_t limit = bound == 0 ? 0 : (~std::uint64_t{0} / bound) * bound;
    for (;;) {
        const std::uint64_t x = rng();
        if (x < limit) return x % bound;
    }
}

Family parse_family(const std::string &text) {
    const auto colon = text.find(':');
    const std::string kind = text.substr(0, colon);
    const Params p = colon == std::string::npos ? Params{} : parse_params(text.substr(colon + 1));
    if (kind == "ap") {
        expect_keys(p, {"a", "d"}, kind);
        return ApFamily{Rational::parse(get(p, "a", "1")), Rational::parse(get(p, "d", "1"))};
    }
    if (kind == "gp") {
        expect_keys(p, {"a", "r"}, kind);
        return GpFamily{Rational::parse(get(p, "a", "1")), Rational::parse(get(p, "r", "2"))};
    }
    if (kind == "convex") {
        expect_keys(p, {"k"}, kind);
        return ConvexPowerFamily{static_cast<unsigned>(parse_u64(get(p, "k", "2")))};
    }
    if (kind == "convex_custom") {
        expect_keys(p, {"seed"}, kind);
        return ConvexCustomFamily{parse_u64(get(p, "seed", "0"))};
    }
    if (kind == "random") {
        expect_keys(p, {"range", "seed"}, kind);
        return RandomSubsetFamily{parse_range(get(p, "range", "4n")), parse_u64(get(p, "seed", "0"))};
    }
    if (kind == "perturbed") {
        expect_keys(p, {"base", "seed"}, kind);
        const std::string b = get(p, "base", "ap");
        PerturbBase base;
        if (b == "ap")
            base = PerturbBase::ap;
        else if (b == "gp")
            base = PerturbBase::gp;
        else if (b == "convex")
            base = PerturbBase::convex;
        else
            throw ParseError("unknown perturbation base '" + b + "'");
        return PerturbedFamily{base, parse_u64(get(p, "seed", "0"))};
    }
    throw ParseError("unknown family kind '" + kind + "'");
}

std::string family_label(const Family &family) {
    struct Visitor {
        std::string operator()(const ApFamily &f) const { return "ap:a=" + f.first.str() + ",d=" + f.step.str(); }
        std::string operator()(const GpFamily &f) const { return "gp:a=" + f.first.str() + ",r=" + f.ratio.str(); }
        std::string operator()(const ConvexPowerFamily &f) const { return "convex:k=" + std::to_string(f.exponent); }
        std::string operator()(const ConvexCustomFamily &f) const {
            return "convex_custom:seed=" + std::to_string(f.seed);
        }
        std::string operator()(const RandomSubsetFamily &f) const {
            return "random:range=" + range_label(f.range) + ",seed=" + std::to_string(f.seed);
        }
        std::string operator()(const PerturbedFamily &f) const {
            return std::string("perturbed:base=") + base_name(f.base) + ",seed=" + std::to_string(f.seed);
        }
    };
    return std::visit(Visitor{}, family);
}

FiniteSet gen_family(const FamilySpec &spec) { return gen_family(spec.family, spec.n); }

FiniteSet gen_family(const Family &family, std::size_t n) {
    if (n == 0) throw DomainError("family size must be positive");
    struct Visitor {
        std::size_t n;

        FiniteSet operator()(const ApFamily &f) const {
            if (f.step.is_zero()) throw DomainError("arithmetic progression needs d != 0");
            std::vector<Rational> v;
            v.reserve(n);
            Rational x = f.first;
            for (std::size_t j = 0; j < n; ++j, x += f.step) v.push_back(x);
            return FiniteSet(std::move(v));
        }
        FiniteSet operator()(const GpFamily &f) const {
            if (f.ratio.is_zero() || f.ratio == Rational(1) || f.ratio == Rational(-1)) {
                throw DomainError("geometric progression needs r not in {0, 1, -1}");
            }
            if (f.first.is_zero()) throw DomainError("geometric progression needs a != 0");
            std::vector<Rational> v;
            v.reserve(n);
            Rational x = f.first;
            for (std::size_t j = 0; j < n; ++j, x *= f.ratio) v.push_back(x);
            return FiniteSet(std::move(v));
        }
        FiniteSet operator()(const ConvexPowerFamily &f) const {
            if (f.exponent < 2) throw DomainError("convex power family needs k >= 2");
            std::vector<Rational> v;
            v.reserve(n);
            for (std::size_t j = 1; j <= n; ++j) {
                mpz_class p;
                mpz_ui_pow_ui(p.get_mpz_t(), j, f.exponent);
                v.emplace_back(p, mpz_class(1));
            }
            return FiniteSet::from_sorted_unique(std::move(v));
        }
        FiniteSet operator()(const ConvexCustomFamily &f) const {
            std::mt19937_64 rng(f.seed);
            std::vector<Rational> v;
            v.reserve(n);
            mpz_class x = 1;
            mpz_class gap = 0;
            for (std::size_t j = 0; j < n; ++j) {
                if (j > 0) {
                    gap += 1 + static_cast<unsigned long>(draw_below(rng, 4));
                    x += gap;
                }
                v.emplace_back(x, mpz_class(1));
            }
            return FiniteSet::from_sorted_unique(std::move(v));
        }
        FiniteSet operator()(const RandomSubsetFamily &f) const {
            const std::uint64_t range = f.range.at(n);
            if (range < n) {
                throw InfeasibleSpecError("random subset of size " + std::to_string(n) + " from range " +
                                          std::to_string(range));
            }
            std::mt19937_64 rng(f.seed);
            std::unordered_set<std::uint64_t> seen;
            std::vector<Rational> v;
            v.reserve(n);
            while (v.size() < n) {
                const std::uint64_t x = 1 + draw_below(rng, range);
                if (seen.insert(x).second) v.emplace_back(mpz_class(std::to_string(x)), mpz_class(1));
            }
            return FiniteSet(std::move(v));
        }
        FiniteSet operator()(const PerturbedFamily &f) const {
            FiniteSet base = perturb_base(f.base, n);
            std::mt19937_64 rng(f.seed);
            const mpz_class denom = mpz_class(1) << 30;
            std::vector<Rational> v;
            v.reserve(n);
            for (const auto &x : base) {
                const std::uint64_t u = draw_below(rng, std::uint64_t{1} << 28);
                v.push_back(x + Rational(mpz_class(std::to_string(u)), denom));
            }
            return FiniteSet(std::move(v));
        }
    };
    return std::visit(Visitor{n}, family);
}

} // namespace sumlab
