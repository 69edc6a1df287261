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

#include "sumlab/rep_fn.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <unordered_map>

#include "sumlab/detail/lattice.hpp"
#include "sumlab/error.hpp"

namespace sumlab {

namespace {

using detail::radix_sort;
using detail::run_length;

bool same_set(const FiniteSet &a, const FiniteSet &b) { return &a == &b || a == b; }

/// Merges two sorted run-length lists, adding counts of equal keys.
void merge_runs(std::vector<std::int64_t> &keys, std::vector<std::int64_t> &counts,
                const std::vector<std::int64_t> &keys2, const std::vector<std::int64_t> &counts2) {
    std::vector<std::int64_t> k;
    std::vector<std::int64_t> c;
    k.reserve(keys.size() + keys2.size());
    c.reserve(keys.size() + keys2.size());
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < keys.size() || j < keys2.size()) {
        if (j == keys2.size() || (i < keys.size() && keys[i] < keys2[j])) {
            k.push_back(keys[i]);
            c.push_back(counts[i++]);
        } else if (i == keys.size() || keys2[j] < keys[i]) {
            k.push_back(keys2[j]);
            c.push_back(counts2[j++]);
        } else {
            k.push_back(keys[i]);
            c.push_back(counts[i++] + counts2[j++]);
        }
    }
    keys.swap(k);
    counts.swap(c);
}

/// Counts keys x_i op y_j for int64 images. Commutative ops on a set with
/// itself visit each unordered pair once.
void count_scaled(const std::vector<std::int64_t> &xs, const std::vector<std::int64_t> &ys, RepOp op, bool self,
                  std::vector<std::int64_t> &keys, std::vector<std::int64_t> &counts) {
    auto apply = [op](std::int64_t x, std::int64_t y) {
        switch (op) {
        case RepOp::sum:
            return x + y;
        case RepOp::diff:
            return x - y;
        default:
            return x * y;
        }
    };
    if (!self) {
        keys.clear();
        keys.reserve(xs.size() * ys.size());
        for (auto x : xs) {
            for (auto y : ys) keys.push_back(apply(x, y));
        }
        radix_sort(keys);
        counts = run_length(keys);
        return;
    }
    const std::size_t n = xs.size();
    keys.clear();
    keys.reserve(n * (n - 1) / 2);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) keys.push_back(op == RepOp::diff ? xs[j] - xs[i] : apply(xs[i], xs[j]));
    }
    radix_sort(keys);
    counts = run_length(keys);
    if (op == RepOp::diff) {
        // Positive differences mirror to negative ones; zero has n representations.
        const std::size_t m = keys.size();
        std::vector<std::int64_t> k(2 * m + 1);
        std::vector<std::int64_t> c(2 * m + 1);
        for (std::size_t i = 0; i < m; ++i) {
            k[m - 1 - i] = -keys[i];
            c[m - 1 - i] = counts[i];
            k[m + 1 + i] = keys[i];
            c[m + 1 + i] = counts[i];
        }
        k[m] = 0;
        c[m] = static_cast<std::int64_t>(n);
        keys.swap(k);
        counts.swap(c);
        return;
    }
    for (auto &c : counts) c *= 2;
    std::vector<std::int64_t> diag(n);
    for (std::size_t i = 0; i < n; ++i) diag[i] = apply(xs[i], xs[i]);
    radix_sort(diag);
    auto diag_counts = run_length(diag);
    merge_runs(keys, counts, diag, diag_counts);
}

Rational apply_exact(const Rational &x, const Rational &y, RepOp op) {
    switch (op) {
    case RepOp::sum:
        return x + y;
    case RepOp::diff:
        return x - y;
    case RepOp::prod:
        return x * y;
    case RepOp::ratio:
        return x / y;
    }
    return {};
}

} // namespace

const char *to_string(RepOp op) {
    switch (op) {
    case RepOp::sum:
        return "sum";
    case RepOp::diff:
        return "diff";
    case RepOp::prod:
        return "prod";
    case RepOp::ratio:
        return "ratio";
    }
    return "?";
}

RepOp parse_rep_op(const std::string &text) {
    if (text == "sum") return RepOp::sum;
    if (text == "diff") return RepOp::diff;
    if (text == "prod") return RepOp::prod;
    if (text == "ratio") return RepOp::ratio;
    throw ParseError("unknown pair operation '" + text + "'");
}

Rational RepFn::value(std::size_t i) const {
    if (const auto *s = std::get_if<Scaled>(&values_)) {
        return Rational(mpz_class(static_cast<long>(s->numerators[i])), s->denominator);
    }
    return std::get<std::vector<Rational>>(values_)[i];
}

std::int64_t RepFn::count_of(const Rational &x) const {
    if (const auto *s = std::get_if<Scaled>(&values_)) {
        if (!mpz_divisible_p(s->denominator.get_mpz_t(), x.den().get_mpz_t())) return 0;
        const mpz_class key = x.num() * (s->denominator / x.den());
        if (!key.fits_slong_p()) return 0;
        const auto k = static_cast<std::int64_t>(key.get_si());
        auto it = std::lower_bound(s->numerators.begin(), s->numerators.end(), k);
        if (it == s->numerators.end() || *it != k) return 0;
        return counts_[static_cast<std::size_t>(it - s->numerators.begin())];
    }
    const auto &v = std::get<std::vector<Rational>>(values_);
    auto it = std::lower_bound(v.begin(), v.end(), x);
    if (it == v.end() || *it != x) return 0;
    return counts_[static_cast<std::size_t>(it - v.begin())];
}

std::int64_t RepFn::max_count() const {
    return counts_.empty() ? 0 : *std::max_element(counts_.begin(), counts_.end());
}

std::int64_t RepFn::total_mass() const { return std::accumulate(counts_.begin(), counts_.end(), std::int64_t{0}); }

FiniteSet RepFn::support() const {
    return support_where([](std::int64_t) { return true; });
}

RepFn rep_fn(const FiniteSet &a, const FiniteSet &b, RepOp op) {
    if (op == RepOp::ratio && b.contains(Rational(0))) throw DomainError("ratio set with 0 in the divisor set");
    RepFn f;
    f.op_ = op;
    f.left_size_ = a.size();
    f.right_size_ = b.size();
    if (a.empty() || b.empty()) {
        f.values_ = std::vector<Rational>{};
        return f;
    }
    const bool self = same_set(a, b);

    if (op != RepOp::ratio) {
        // Sums and differences of values below 2^61 fit an int64; products need
        // both factors below 2^31 and are scaled by the squared denominator.
        const unsigned bits = op == RepOp::prod ? 31 : 61;
        if (auto img = detail::int64_image({&a, &b}, bits)) {
            RepFn::Scaled scaled;
            scaled.denominator = op == RepOp::prod ? img->denominator * img->denominator : img->denominator;
            count_scaled(img->values[0], img->values[1], op, self, scaled.numerators, f.counts_);
            f.values_ = std::move(scaled);
            return f;
        }
    }

    std::unordered_map<Rational, std::int64_t> counts;
    counts.reserve(a.size() * b.size() / (self ? 2 : 1) + 1);
    const bool commutative = self && (op == RepOp::sum || op == RepOp::prod);
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = commutative ? i : 0; j < b.size(); ++j) {
            counts[apply_exact(a[i], b[j], op)] += (commutative && j != i) ? 2 : 1;
        }
    }
    std::vector<std::pair<Rational, std::int64_t>> entries(std::make_move_iterator(counts.begin()),
                                                           std::make_move_iterator(counts.end()));
    std::sort(entries.begin(), entries.end(), [](const auto &x, const auto &y) { return x.first < y.first; });
    std::vector<Rational> values;
    values.reserve(entries.size());
    f.counts_.reserve(entries.size());
    for (auto &[v, c] : entries) {
        values.push_back(std::move(v));
        f.counts_.push_back(c);
    }
    f.values_ = std::move(values);
    return f;
}

FiniteSet pair_set(const FiniteSet &a, const FiniteSet &b, RepOp op) { return rep_fn(a, b, op).support(); }

std::size_t pair_set_size(const FiniteSet &a, const FiniteSet &b, RepOp op) { return rep_fn(a, b, op).support_size(); }

void write_rep_csv(std::ostream &out, const RepFn &f) {
    out << "value,count\n";
    for (std::size_t i = 0; i < f.support_size(); ++i) out << f.value(i).str_pq() << ',' << f.count(i) << '\n';
}

} // namespace sumlab
