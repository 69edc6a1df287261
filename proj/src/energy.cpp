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

#include "sumlab/energy.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "sumlab/detail/lattice.hpp"
#include "sumlab/error.hpp"

namespace sumlab {

namespace {

double pairwise_sum(const double *x, std::size_t n) {
    if (n <= 8) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += x[i];
        return s;
    }
    const std::size_t h = n / 2;
    return pairwise_sum(x, h) + pairwise_sum(x + h, n - h);
}

} // namespace

Exponent Exponent::parse(const std::string &text) {
    const auto slash = text.find('/');
    try {
        std::size_t used = 0;
        const std::int64_t num = std::stoll(text.substr(0, slash), &used);
        if (used != text.substr(0, slash).size()) throw ParseError("");
        std::int64_t den = 1;
        if (slash != std::string::npos) {
            den = std::stoll(text.substr(slash + 1), &used);
            if (used != text.size() - slash - 1) throw ParseError("");
        }
        if (den == 0 || num < 0 || den < 0) throw ParseError("");
        return Exponent(num, den);
    } catch (const std::exception &) {
        throw ParseError("malformed exponent '" + text + "'");
    }
}

std::string Exponent::str() const {
    return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
}

EnergyValue energy(const RepFn &f, const Exponent &k) {
    if (k.num() < 0 || k.den() <= 0) throw DomainError("energy exponent must be nonnegative");
    // Counts never exceed min(|A|, |B|), so a dense histogram is small.
    std::vector<std::int64_t> hist(static_cast<std::size_t>(f.max_count()) + 1, 0);
    for (auto c : f.counts()) ++hist[static_cast<std::size_t>(c)];

    EnergyValue out;
    if (k.is_integer()) {
        mpz_class total = 0;
        mpz_class term;
        const auto e = static_cast<unsigned long>(k.num());
        for (std::size_t c = 1; c < hist.size(); ++c) {
            if (hist[c] == 0) continue;
            mpz_ui_pow_ui(term.get_mpz_t(), c, e);
            total += term * mpz_class(static_cast<long>(hist[c]));
        }
        out.approx = to_double_rounded(total);
        out.exact = std::move(total);
        return out;
    }
    std::vector<double> terms;
    for (std::size_t c = 1; c < hist.size(); ++c) {
        if (hist[c] != 0) terms.push_back(static_cast<double>(hist[c]) * std::pow(static_cast<double>(c), k.value()));
    }
    out.approx = pairwise_sum(terms.data(), terms.size());
    return out;
}

EnergyValue additive_energy(const FiniteSet &a, const FiniteSet &b, const Exponent &k) {
    return energy(rep_fn(a, b, RepOp::diff), k);
}

EnergyValue additive_energy(const FiniteSet &a, const Exponent &k) { return additive_energy(a, a, k); }

EnergyValue multiplicative_energy(const FiniteSet &a, const FiniteSet &b, const Exponent &k) {
    return energy(rep_fn(a, b, RepOp::ratio), k);
}

std::int64_t projection_count(const FiniteSet &p, const FiniteSet &q) {
    if (p.empty() || q.empty()) return 0;
    const double np = static_cast<double>(p.size());
    const double nq = static_cast<double>(q.size());
    const bool symmetric = q.is_symmetric();
    // Three exact routes; take the cheapest. Reflecting (p1, p2) maps a
    // solution for q to one for -q, so a symmetric Q needs only p1 < p2.
    const double cost_pairs = symmetric ? np * np / 2 : np * np;
    const double cost_shift = np * nq;
    // A bitmap word costs far less than a hashed probe.
    if (auto dense = detail::count_differences_dense(p, q, 8 * std::min(cost_pairs, cost_shift))) return *dense;
    if (cost_shift < cost_pairs) {
        // p1 - q = p2.
        return detail::count_pairs_in(p, q, true, p);
    }
    if (symmetric) {
        const std::int64_t off_diagonal = detail::count_pairs_in(p, p, true, q, true);
        const std::int64_t diagonal = q.contains(Rational(0)) ? static_cast<std::int64_t>(p.size()) : 0;
        return 2 * off_diagonal + diagonal;
    }
    return detail::count_pairs_in(p, p, true, q);
}

} // namespace sumlab
