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

#include "sumlab/search.hpp"

#include <algorithm>
#include <random>

#include "sumlab/error.hpp"
#include "sumlab/family.hpp"
#include "sumlab/verifier.hpp"

namespace sumlab {

namespace {

using Values = std::vector<std::int64_t>;

FiniteSet to_set(const Values &v) {
    std::vector<Rational> out;
    out.reserve(v.size());
    for (const std::int64_t x : v) out.emplace_back(static_cast<long>(x));
    return FiniteSet(std::move(out));
}

std::int64_t uniform(std::mt19937_64 &rng, std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(draw_below(rng, static_cast<std::uint64_t>(hi - lo + 1)));
}

bool convex_objective(Objective o) { return o != Objective::thm_sp; }

Values start_values(Objective o, std::size_t n) {
    Values v(n);
    for (std::size_t j = 0; j < n; ++j) {
        const auto k = static_cast<std::int64_t>(j + 1);
        v[j] = convex_objective(o) ? k * k : k;
    }
    return v;
}

Values random_values(Objective o, std::size_t n, std::int64_t top, std::mt19937_64 &rng) {
    Values v;
    if (convex_objective(o)) {
        // Gaps grow by 1 or 2; the total stays below 4 n^2.
        std::int64_t x = uniform(rng, 1, static_cast<std::int64_t>(n));
        std::int64_t gap = uniform(rng, 1, 2);
        for (std::size_t j = 0; j < n; ++j) {
            v.push_back(x);
            x += gap;
            gap += uniform(rng, 1, 2);
        }
        return v.back() <= top ? v : start_values(o, n);
    }
    while (v.size() < n) {
        const std::int64_t x = uniform(rng, 1, top);
        if (std::find(v.begin(), v.end(), x) == v.end()) v.push_back(x);
    }
    std::sort(v.begin(), v.end());
    return v;
}

// Integer interval for position i that keeps the gaps strictly increasing.
std::pair<std::int64_t, std::int64_t> convex_window(const Values &v, std::size_t i, std::int64_t top) {
    const std::size_t n = v.size();
    std::int64_t lo = 1;
    std::int64_t hi = top;
    if (i >= 1) lo = std::max(lo, v[i - 1] + 1);
    if (i + 1 < n) hi = std::min(hi, v[i + 1] - 1);
    if (i >= 2) lo = std::max(lo, 2 * v[i - 1] - v[i - 2] + 1);
    if (i >= 1 && i + 1 < n) {
        // 2v < v[i-1] + v[i+1]
        const std::int64_t s = v[i - 1] + v[i + 1];
        hi = std::min(hi, (s - 1) / 2);
    }
    if (i + 2 < n) lo = std::max(lo, 2 * v[i + 1] - v[i + 2] + 1);
    return {lo, hi};
}

// Replaces one element; false when the drawn position admits no other value.
bool propose(Objective o, Values &v, std::int64_t top, std::mt19937_64 &rng) {
    const std::size_t i = static_cast<std::size_t>(draw_below(rng, v.size()));
    if (convex_objective(o)) {
        const auto [lo, hi] = convex_window(v, i, top);
        if (hi - lo < 1) return false;
        std::int64_t x = uniform(rng, lo, hi - 1);
        if (x >= v[i]) ++x;
        v[i] = x;
        return true;
    }
    std::int64_t x = 0;
    do {
        x = uniform(rng, 1, top);
    } while (std::binary_search(v.begin(), v.end(), x));
    v[i] = x;
    std::sort(v.begin(), v.end());
    return true;
}

} // namespace

const char *to_string(Objective o) {
    switch (o) {
    case Objective::thm_sp:
        return "thm_sp";
    case Objective::thm_csum:
        return "thm_csum";
    case Objective::thm_cdiff:
        return "thm_cdiff";
    }
    return "?";
}

Objective parse_objective(const std::string &text) {
    for (const Objective o : {Objective::thm_sp, Objective::thm_csum, Objective::thm_cdiff}) {
        if (text == to_string(o)) return o;
    }
    throw CheckSpecError("unknown objective '" + text + "'");
}

double objective_ratio(Objective o, const FiniteSet &a) {
    switch (o) {
    case Objective::thm_sp:
        return thm_sp_ratio(a);
    case Objective::thm_csum:
        return thm_csum_ratio(a);
    case Objective::thm_cdiff:
        return thm_cdiff_ratio(a);
    }
    return 0.0;
}

SearchResult search_extremal(Objective objective, std::size_t n, std::size_t budget, std::uint64_t seed) {
    if (n < 4) throw DomainError("search needs n >= 4");
    if (budget == 0) throw DomainError("search needs a positive budget");
    const auto top = static_cast<std::int64_t>(4 * n * n);
    const std::size_t patience = std::max<std::size_t>(20, 4 * n);
    std::mt19937_64 rng(seed);

    SearchResult out;
    Values current = start_values(objective, n);
    double current_ratio = objective_ratio(objective, to_set(current));
    out.best = to_set(current);
    out.best_ratio = current_ratio;
    out.trajectory.push_back(current_ratio);

    std::size_t stale = 0;
    std::size_t failed_draws = 0;
    while (out.trajectory.size() < budget) {
        Values trial;
        const bool restart = stale >= patience || failed_draws >= 64 * n;
        if (restart) {
            trial = random_values(objective, n, top, rng);
            ++out.restarts;
            stale = 0;
            failed_draws = 0;
        } else {
            trial = current;
            if (!propose(objective, trial, top, rng)) {
                ++failed_draws;
                continue;
            }
        }
        const FiniteSet set = to_set(trial);
        const double r = objective_ratio(objective, set);
        // Sideways moves are taken so plateaus can be crossed.
        stale = r < current_ratio ? 0 : stale + 1;
        if (restart || r <= current_ratio) {
            current = std::move(trial);
            current_ratio = r;
        }
        if (r < out.best_ratio) {
            out.best_ratio = r;
            out.best = set;
        }
        out.trajectory.push_back(out.best_ratio);
    }
    return out;
}

} // namespace sumlab
