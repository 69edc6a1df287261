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

#include "sumlab/constructions.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include <mpfr.h>

#include "sumlab/detail/lattice.hpp"
#include "sumlab/error.hpp"

namespace sumlab {

namespace {

__extension__ using i128 = __int128;

using detail::BitMatrix;
using detail::pair_membership;

/// sigma * 8|X+X| * ln(m) >= |X|^2, with a high-precision retry near equality.
bool above_sum_threshold(std::int64_t sigma, std::size_t sumset, std::size_t x_size, std::size_t m) {
    const double lhs = static_cast<double>(sigma) * 8.0 * static_cast<double>(sumset) * size_log(m);
    const double rhs = static_cast<double>(x_size) * static_cast<double>(x_size);
    if (std::abs(lhs - rhs) > 1e-9 * rhs) return lhs >= rhs;
    mpfr_t l;
    mpfr_t r;
    mpfr_inits2(256, l, r, static_cast<mpfr_ptr>(nullptr));
    mpfr_set_ui(l, static_cast<unsigned long>(m), MPFR_RNDN);
    mpfr_log(l, l, MPFR_RNDN);
    mpfr_mul_ui(l, l, static_cast<unsigned long>(sigma), MPFR_RNDN);
    mpfr_mul_ui(l, l, 8UL * static_cast<unsigned long>(sumset), MPFR_RNDN);
    mpfr_set_ui(r, static_cast<unsigned long>(x_size), MPFR_RNDN);
    mpfr_mul_ui(r, r, static_cast<unsigned long>(x_size), MPFR_RNDN);
    const bool ge = mpfr_cmp(l, r) >= 0;
    mpfr_clears(l, r, static_cast<mpfr_ptr>(nullptr));
    return ge;
}

FiniteSet rows_where(const FiniteSet &x, const BitMatrix &m, auto &&pred) {
    std::vector<Rational> out;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (pred(static_cast<std::int64_t>(m.row_count(i)))) out.push_back(x[i]);
    }
    return FiniteSet::from_sorted_unique(std::move(out));
}

bool is_rich_diff(std::int64_t c, std::size_t n) {
    return 11 * static_cast<i128>(c) * c >= 4 * static_cast<i128>(n) * static_cast<i128>(n);
}

bool is_rich_sum(std::int64_t c, std::size_t n) { return 4 * c >= 3 * static_cast<std::int64_t>(n); }

void check_budget(std::size_t n, std::size_t budget, const char *what) {
    if (n > budget) {
        throw BudgetError(std::string(what) + ": size " + std::to_string(n) + " exceeds cubic budget " +
                          std::to_string(budget));
    }
}

} // namespace

double size_log(std::size_t m) { return std::log(static_cast<double>(m)); }

const char *to_string(StopReason r) {
    switch (r) {
    case StopReason::energy_criterion_met:
        return "energy-criterion-met";
    case StopReason::iteration_guard:
        return "iteration-guard";
    case StopReason::set_too_small:
        return "set-too-small";
    }
    return "?";
}

FiniteSet popular_diffs(const FiniteSet &a) {
    const RepFn delta = rep_fn(a, a, RepOp::diff);
    const auto n2 = static_cast<i128>(a.size()) * static_cast<i128>(a.size());
    const auto dd = static_cast<i128>(delta.support_size());
    return delta.support_where([&](std::int64_t c) { return 11 * dd * c >= n2; });
}

FiniteSet rich_diff_elements(const FiniteSet &a, const FiniteSet &popular) {
    const BitMatrix m = pair_membership(a, a, true, popular);
    return rows_where(a, m, [&](std::int64_t c) { return is_rich_diff(c, a.size()); });
}

FiniteSet popular_sums(const FiniteSet &x, std::size_t ambient_size) {
    if (ambient_size < 3) throw DomainError("popular_sums: ambient size must be at least 3");
    const RepFn sigma = rep_fn(x, x, RepOp::sum);
    const std::size_t sumset = sigma.support_size();
    return sigma.support_where(
        [&](std::int64_t s) { return above_sum_threshold(s, sumset, x.size(), ambient_size); });
}

FiniteSet rich_sum_elements(const FiniteSet &x, const FiniteSet &popular) {
    const BitMatrix m = pair_membership(x, x, false, popular);
    return rows_where(x, m, [&](std::int64_t c) { return is_rich_sum(c, x.size()); });
}

Refinement refine_to_b(const FiniteSet &a) {
    if (a.size() < 3) throw DomainError("refine_to_b: needs |A| >= 3");
    const double log_a = size_log(a.size());
    const auto max_iterations = static_cast<std::size_t>(std::floor(log_a));
    constexpr Exponent k127(12, 7);

    Refinement out;
    out.trace.iterates.push_back(a);
    for (std::size_t i = 0;; ++i) {
        const FiniteSet &current = out.trace.iterates.back();
        FiniteSet rich = rich_sum_elements(current, popular_sums(current, a.size()));
        const double e_rich = additive_energy(rich, k127).approx;
        const double e_cur = additive_energy(current, k127).approx;
        if (e_rich * log_a >= e_cur) {
            out.trace.stop_reason = StopReason::energy_criterion_met;
            break;
        }
        if (i + 1 > max_iterations) {
            out.trace.stop_reason = StopReason::iteration_guard;
            break;
        }
        if (2 * rich.size() <= a.size()) {
            out.trace.stop_reason = StopReason::set_too_small;
            break;
        }
        out.trace.iterates.push_back(std::move(rich));
    }
    out.b = out.trace.iterates.back();
    return out;
}

DyadicClass dyadic_pigeonhole(const RepFn &f, const Exponent &k) {
    if (f.support_size() == 0) throw DomainError("dyadic_pigeonhole: empty representation function");
    const auto top = static_cast<std::size_t>(std::bit_width(static_cast<std::uint64_t>(f.max_count())));
    // Level j holds counts in [2^j, 2^{j+1}); evaluate each level's mass via a
    // restricted histogram.
    std::vector<std::vector<std::int64_t>> by_level(top);
    for (auto c : f.counts()) by_level[std::bit_width(static_cast<std::uint64_t>(c)) - 1].push_back(c);

    std::size_t best = top;
    EnergyValue best_mass;
    std::size_t nonempty = 0;
    for (std::size_t j = 0; j < top; ++j) {
        if (by_level[j].empty()) continue;
        ++nonempty;
        EnergyValue mass;
        if (k.is_integer()) {
            mpz_class total = 0;
            mpz_class term;
            for (auto c : by_level[j]) {
                mpz_ui_pow_ui(term.get_mpz_t(), static_cast<unsigned long>(c), static_cast<unsigned long>(k.num()));
                total += term;
            }
            mass.approx = to_double_rounded(total);
            mass.exact = std::move(total);
        } else {
            std::sort(by_level[j].begin(), by_level[j].end());
            double total = 0.0;
            // Group equal counts so each distinct power is evaluated once.
            for (std::size_t i = 0; i < by_level[j].size();) {
                std::size_t e = i;
                while (e < by_level[j].size() && by_level[j][e] == by_level[j][i]) ++e;
                total += static_cast<double>(e - i) * std::pow(static_cast<double>(by_level[j][i]), k.value());
                i = e;
            }
            mass.approx = total;
        }
        const bool better = best == top || (mass.exact && best_mass.exact ? *mass.exact > *best_mass.exact
                                                                          : mass.approx > best_mass.approx);
        if (better) {
            best = j;
            best_mass = std::move(mass);
        }
    }
    DyadicClass out;
    out.level = std::int64_t{1} << best;
    out.weighted_mass = std::move(best_mass);
    out.class_count = nonempty;
    out.members = f.support_where([&](std::int64_t c) { return c >= out.level && c < 2 * out.level; });
    return out;
}

std::int64_t triple_count_diff(const FiniteSet &a, std::size_t budget) {
    check_budget(a.size(), budget, "triple_count_diff");
    const FiniteSet popular = popular_diffs(a);
    const BitMatrix m = pair_membership(a, a, true, popular);
    std::int64_t total = 0;
    for (std::size_t r = 0; r < a.size(); ++r) {
        if (!is_rich_diff(static_cast<std::int64_t>(m.row_count(r)), a.size())) continue;
        const auto row_r = m.row(r);
        for (std::size_t a1 = 0; a1 < a.size(); ++a1) {
            if (m.test(r, a1)) total += static_cast<std::int64_t>(detail::popcount_and(row_r, m.row(a1)));
        }
    }
    return total;
}

SumTriples triple_count_sum(const FiniteSet &b, std::size_t ambient_size, std::size_t budget) {
    check_budget(b.size(), budget, "triple_count_sum");
    SumTriples out;
    out.popular = popular_sums(b, ambient_size);
    const BitMatrix hits = pair_membership(b, b, false, out.popular);

    std::vector<std::size_t> rich_rows;
    std::vector<Rational> rich;
    for (std::size_t i = 0; i < b.size(); ++i) {
        if (is_rich_sum(static_cast<std::int64_t>(hits.row_count(i)), b.size())) {
            rich_rows.push_back(i);
            rich.push_back(b[i]);
        }
    }
    out.rich = FiniteSet::from_sorted_unique(std::move(rich));
    if (out.rich.empty()) return out;

    const DyadicClass cls = dyadic_pigeonhole(rep_fn(out.rich, out.rich, RepOp::diff), Exponent(12, 7));
    out.level = cls.level;
    out.level_set = cls.members;

    const BitMatrix pairs = pair_membership(out.rich, out.rich, true, out.level_set);
    for (std::size_t i = 0; i < rich_rows.size(); ++i) {
        for (std::size_t j = 0; j < rich_rows.size(); ++j) {
            if (pairs.test(i, j)) {
                out.count += static_cast<std::int64_t>(detail::popcount_and(hits.row(rich_rows[i]), hits.row(rich_rows[j])));
            }
        }
    }
    return out;
}

} // namespace sumlab
