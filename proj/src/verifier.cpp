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

#include "sumlab/verifier.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <sstream>
#include <tuple>
#include <utility>

#include "sumlab/detail/lattice.hpp"
#include "sumlab/incidence.hpp"

namespace sumlab {

namespace {

using Params = std::map<std::string, std::string>;

constexpr double kFloatSlack = 1e-9;
constexpr std::size_t kRsPropBudget = 200;
constexpr std::size_t kFiberBudget = std::size_t{1} << 26;

struct Skip {
    std::string reason;
};

[[noreturn]] void skip(std::string reason) { throw Skip{std::move(reason)}; }

double to_double(const mpq_class &q) { return Rational(q).to_double(); }

mpz_class zpow(std::size_t base, unsigned e) {
    mpz_class out;
    mpz_ui_pow_ui(out.get_mpz_t(), base, e);
    return out;
}

double ratio_of(double lhs, double rhs) {
    if (rhs > 0) return lhs / rhs;
    return lhs == 0 ? 0.0 : std::numeric_limits<double>::infinity();
}

CheckResult exact_le(const mpq_class &lhs, const mpq_class &rhs, bool strict = false) {
    CheckResult r;
    r.lhs = to_double(lhs);
    r.rhs = to_double(rhs);
    r.ratio = sgn(rhs) > 0 ? to_double(mpq_class(lhs / rhs)) : ratio_of(r.lhs, r.rhs);
    r.verdict = (strict ? lhs < rhs : lhs <= rhs) ? Verdict::pass : Verdict::fail;
    return r;
}

CheckResult float_le(double lhs, double rhs) {
    CheckResult r;
    r.lhs = lhs;
    r.rhs = rhs;
    r.ratio = ratio_of(lhs, rhs);
    r.verdict = lhs <= rhs * (1.0 + kFloatSlack) ? Verdict::pass : Verdict::fail;
    return r;
}

CheckResult report(double lhs, double rhs) {
    CheckResult r;
    r.lhs = lhs;
    r.rhs = rhs;
    r.ratio = ratio_of(lhs, rhs);
    r.verdict = Verdict::ratio_report;
    return r;
}

// For right-hand sides that may leave the double range.
CheckResult report_log(double lhs, double log_rhs) {
    CheckResult r;
    r.lhs = lhs;
    r.rhs = std::exp(log_rhs);
    r.ratio = lhs > 0 ? std::exp(std::log(lhs) - log_rhs) : 0.0;
    r.verdict = Verdict::ratio_report;
    return r;
}

double ln(std::size_t m) { return std::log(static_cast<double>(m)); }

// ---------------------------------------------------------------------------
// Parameters

class ParamReader {
  public:
    ParamReader(const std::string &check, const Params &params) : check_(check), params_(params) {}

    Rational rational(const std::string &key, const Rational &fallback) {
        used_.push_back(key);
        const auto it = params_.find(key);
        if (it == params_.end()) return fallback;
        try {
            return Rational::parse(it->second);
        } catch (const Error &) {
            throw CheckSpecError(check_ + ": bad value for " + key + ": '" + it->second + "'");
        }
    }

    Exponent exponent(const std::string &key, const Exponent &fallback) {
        used_.push_back(key);
        const auto it = params_.find(key);
        if (it == params_.end()) return fallback;
        try {
            return Exponent::parse(it->second);
        } catch (const Error &) {
            throw CheckSpecError(check_ + ": bad value for " + key + ": '" + it->second + "'");
        }
    }

    std::size_t size(const std::string &key, std::size_t fallback) {
        used_.push_back(key);
        const auto it = params_.find(key);
        if (it == params_.end()) return fallback;
        try {
            std::size_t pos = 0;
            const unsigned long long v = std::stoull(it->second, &pos);
            if (pos != it->second.size()) throw std::invalid_argument("trailing");
            return static_cast<std::size_t>(v);
        } catch (const std::exception &) {
            throw CheckSpecError(check_ + ": bad value for " + key + ": '" + it->second + "'");
        }
    }

    std::string text(const std::string &key, const std::string &fallback,
                     std::initializer_list<const char *> allowed = {}) {
        used_.push_back(key);
        const auto it = params_.find(key);
        if (it == params_.end()) return fallback;
        if (allowed.size() != 0 &&
            std::none_of(allowed.begin(), allowed.end(), [&](const char *v) { return it->second == v; })) {
            throw CheckSpecError(check_ + ": bad value for " + key + ": '" + it->second + "'");
        }
        return it->second;
    }

    /// Rejects parameters the check never asked for.
    void finish() const {
        for (const auto &[key, value] : params_) {
            if (std::find(used_.begin(), used_.end(), key) == used_.end()) {
                throw CheckSpecError(check_ + ": unknown parameter '" + key + "'");
            }
        }
    }

  private:
    std::string check_;
    const Params &params_;
    std::vector<std::string> used_;
};

// Parameters are read (and validated) before any work happens.
using CheckFn = std::function<CheckResult(CheckContext &, ParamReader &)>;

struct Entry {
    CheckInfo info;
    CheckFn fn;
};

RepOp sign_op(ParamReader &p) {
    return p.text("op", "diff", {"diff", "sum"}) == "sum" ? RepOp::sum : RepOp::diff;
}

void require_convex(const FiniteSet &a) {
    if (!is_convex(a)) skip("not-convex");
}

void require_positive(const FiniteSet &a) {
    if (!a.is_positive()) skip("not-positive");
}

void require_within(std::size_t n, std::size_t budget) {
    if (n > budget) skip("budget");
}

const mpz_class &exact(const EnergyValue &e) { return *e.exact; }

std::size_t support(CheckContext &ctx, int which, RepOp op) { return ctx.rep(which, op).support_size(); }

// ---------------------------------------------------------------------------
// Fibers of (r, a, a') -> (r - a', r - a) over the triple set of the
// popular-difference argument.

struct FiberStats {
    std::int64_t domain = 0;
    mpz_class collisions;
};

// ids[i * n + j] indexes a_i - a_j within A - A.
std::vector<std::uint32_t> difference_ids(const FiniteSet &a, std::size_t &distinct) {
    const std::size_t n = a.size();
    std::vector<std::uint32_t> ids(n * n);
    if (auto img = detail::int64_image({&a}, 61)) {
        const auto &v = img->values[0];
        std::vector<std::int64_t> d;
        d.reserve(n * n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) d.push_back(v[i] - v[j]);
        }
        std::vector<std::int64_t> sorted = d;
        detail::radix_sort(sorted);
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        distinct = sorted.size();
        for (std::size_t k = 0; k < d.size(); ++k) {
            ids[k] = static_cast<std::uint32_t>(std::lower_bound(sorted.begin(), sorted.end(), d[k]) - sorted.begin());
        }
        return ids;
    }
    const FiniteSet diffs = pair_set(a, a, RepOp::diff);
    distinct = diffs.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) ids[i * n + j] = static_cast<std::uint32_t>(*diffs.index_of(a[i] - a[j]));
    }
    return ids;
}

FiberStats triple_fibers(CheckContext &ctx) {
    const FiniteSet &a = ctx.a();
    const std::size_t n = a.size();
    const detail::BitMatrix m = detail::pair_membership(a, a, true, ctx.popular_diffs());
    const FiniteSet &rich_set = ctx.rich_diffs();
    std::vector<std::size_t> rich;
    for (std::size_t r = 0; r < n; ++r) {
        if (rich_set.contains(a[r])) rich.push_back(r);
    }

    std::size_t nd = 0;
    const std::vector<std::uint32_t> ids = difference_ids(a, nd);

    FiberStats out;
    if (nd * nd <= (std::size_t{1} << 24)) {
        std::vector<std::uint32_t> table(nd * nd);
        for (const std::size_t r : rich) {
            const auto row_r = m.row(r);
            for (std::size_t a1 = 0; a1 < n; ++a1) {
                if (!m.test(r, a1)) continue;
                const auto row_a1 = m.row(a1);
                const std::size_t hi = ids[r * n + a1];
                for (std::size_t w = 0; w < row_r.size(); ++w) {
                    std::uint64_t bits = row_r[w] & row_a1[w];
                    while (bits != 0) {
                        const std::size_t a2 = w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
                        bits &= bits - 1;
                        ++table[ids[r * n + a2] * nd + hi];
                        ++out.domain;
                    }
                }
            }
        }
        for (const std::uint32_t c : table) {
            if (c != 0) out.collisions += static_cast<unsigned long>(c) * static_cast<unsigned long>(c);
        }
        return out;
    }

    // The fiber over (u, v) is R cap (A + u) cap (A + v), so the squared
    // fiber sizes sum to |S| plus, for each ordered pair r != r', the number
    // of (a1, a2) in S_r with a1 - t and a2 - t in A, where t = r - r'.
    for (const std::size_t r : rich) {
        const auto row_r = m.row(r);
        for (std::size_t a1 = 0; a1 < n; ++a1) {
            if (m.test(r, a1)) out.domain += static_cast<std::int64_t>(detail::popcount_and(row_r, m.row(a1)));
        }
    }
    // shifted[offset[t] ..] lists the i with a_i - t in A, increasing.
    std::vector<std::size_t> offset(nd + 1, 0);
    for (const std::uint32_t id : ids) ++offset[id + 1];
    for (std::size_t t = 0; t < nd; ++t) offset[t + 1] += offset[t];
    std::vector<std::uint32_t> shifted(ids.size());
    {
        std::vector<std::size_t> fill(offset.begin(), offset.end() - 1);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) shifted[fill[ids[i * n + j]]++] = static_cast<std::uint32_t>(i);
        }
    }
    double work = 0;
    for (const std::size_t r : rich) {
        for (const std::size_t r2 : rich) {
            if (r2 == r) continue;
            const std::size_t t = ids[r * n + r2];
            const double g = static_cast<double>(offset[t + 1] - offset[t]);
            work += g * g;
        }
    }
    if (work > static_cast<double>(kFiberBudget) * 64) skip("budget");
    mpz_class extra = 0;
    std::vector<std::uint32_t> u;
    for (const std::size_t r : rich) {
        std::int64_t sum = 0;
        for (const std::size_t r2 : rich) {
            if (r2 == r) continue;
            const std::size_t t = ids[r * n + r2];
            u.clear();
            for (std::size_t k = offset[t]; k < offset[t + 1]; ++k) {
                if (m.test(r, shifted[k])) u.push_back(shifted[k]);
            }
            for (const std::uint32_t i : u) {
                for (const std::uint32_t j : u) sum += m.test(i, j) ? 1 : 0;
            }
        }
        extra += static_cast<long>(sum);
    }
    out.collisions = extra + static_cast<long>(out.domain);
    return out;
}

// ---------------------------------------------------------------------------
// Assert-type checks

CheckResult cs_energy(CheckContext &ctx, ParamReader &p) {
    const RepOp op = sign_op(p);
    p.finish();
    const mpz_class mass = mpz_class(static_cast<unsigned long>(ctx.a().size())) * static_cast<unsigned long>(ctx.b().size());
    const mpz_class e2 = exact(ctx.energy(1, op, Exponent(2)));
    return exact_le(mpq_class(mass * mass), mpq_class(e2 * static_cast<unsigned long>(support(ctx, 1, op))));
}

CheckResult cs_proj(CheckContext &ctx, ParamReader &p) {
    const std::string map = p.text("map", "triples", {"triples", "sum", "diff", "prod", "ratio"});
    const std::size_t budget = p.size("budget", ctx.budget_or(kCubicBudget));
    p.finish();
    if (map == "triples") {
        require_within(ctx.a().size(), budget);
        const FiberStats f = triple_fibers(ctx);
        const std::int64_t image = ctx.popular_projection();
        const mpz_class dom(static_cast<long>(f.domain));
        return exact_le(mpq_class(dom * dom), mpq_class(f.collisions * static_cast<long>(image)));
    }
    const RepOp op = parse_rep_op(map);
    const RepFn &rep = ctx.rep(1, op);
    const mpz_class dom = mpz_class(static_cast<unsigned long>(rep.left_size())) * static_cast<unsigned long>(rep.right_size());
    const mpz_class coll = exact(ctx.energy(1, op, Exponent(2)));
    return exact_le(mpq_class(dom * dom), mpq_class(coll * static_cast<unsigned long>(rep.support_size())));
}

CheckResult popular_mass(CheckContext &ctx, ParamReader &p) {
    const Rational c = p.rational("const", Rational(10) / Rational(11));
    p.finish();
    const FiniteSet &a = ctx.a();
    const RepFn &delta = ctx.rep(0, RepOp::diff);
    std::int64_t mass = 0;
    for (const Rational &x : ctx.popular_diffs()) mass += delta.count_of(x);
    const mpz_class n2 = zpow(a.size(), 2);
    return exact_le(c.mpq() * n2, mpq_class(mass));
}

CheckResult rich_size(CheckContext &ctx, ParamReader &p) {
    const Rational c = p.rational("const", Rational(1) / Rational(2));
    p.finish();
    return exact_le(c.mpq() * static_cast<unsigned long>(ctx.a().size()),
                    mpq_class(static_cast<unsigned long>(ctx.rich_diffs().size())), true);
}

CheckResult diff_proj(CheckContext &ctx, ParamReader &p) {
    const Rational c = p.rational("const", Rational(9) / Rational(484));
    p.finish();
    const mpz_class e3 = exact(ctx.energy(0, RepOp::diff, Exponent(3)));
    const std::int64_t proj = ctx.popular_projection();
    return exact_le(c.mpq() * zpow(ctx.a().size(), 6), mpq_class(e3 * static_cast<long>(proj)));
}

CheckResult diff_triples(CheckContext &ctx, ParamReader &p) {
    const Rational c = p.rational("const", Rational(3) / Rational(22));
    const std::size_t budget = p.size("budget", ctx.budget_or(kCubicBudget));
    p.finish();
    require_within(ctx.a().size(), budget);
    const std::int64_t count = triple_count_diff(ctx.a(), budget);
    return exact_le(c.mpq() * zpow(ctx.a().size(), 3), mpq_class(static_cast<long>(count)));
}

const SumTriples &guarded_sum_triples(CheckContext &ctx, std::size_t budget) {
    if (ctx.a().size() < 3) skip("domain");
    const Refinement &ref = ctx.refinement();
    if (ref.trace.stop_reason != StopReason::energy_criterion_met) {
        skip(std::string("guard:") + to_string(ref.trace.stop_reason));
    }
    require_within(ref.b.size(), budget);
    return ctx.sum_triples();
}

CheckResult sum_proj(CheckContext &ctx, ParamReader &p) {
    const Rational c = p.rational("const", Rational(1) / Rational(2));
    const std::size_t budget = p.size("budget", ctx.budget_or(kCubicBudget));
    p.finish();
    const SumTriples &t = guarded_sum_triples(ctx, budget);
    const FiniteSet &b = ctx.refinement().b;
    const mpq_class lower = c.mpq() * t.level * static_cast<unsigned long>(t.level_set.size()) *
                            static_cast<unsigned long>(b.size());
    const mpz_class e3 = exact(energy(rep_fn(b, b, RepOp::diff), Exponent(3)));
    const std::int64_t proj = projection_count(t.popular, t.level_set);
    return exact_le(lower * lower, mpq_class(e3 * static_cast<long>(proj)));
}

CheckResult sum_triples(CheckContext &ctx, ParamReader &p) {
    const Rational c = p.rational("const", Rational(1) / Rational(2));
    const std::size_t budget = p.size("budget", ctx.budget_or(kCubicBudget));
    p.finish();
    const SumTriples &t = guarded_sum_triples(ctx, budget);
    const mpq_class lower = c.mpq() * t.level * static_cast<unsigned long>(t.level_set.size()) *
                            static_cast<unsigned long>(ctx.refinement().b.size());
    return exact_le(lower, mpq_class(static_cast<long>(t.count)));
}

CheckResult e127_trivial(CheckContext &ctx, ParamReader &p) {
    p.finish();
    const double n = static_cast<double>(ctx.a().size());
    const double e = ctx.energy(0, RepOp::diff, Exponent(12, 7)).approx;
    CheckResult lower = float_le(n * n, e);
    if (lower.verdict == Verdict::fail) return lower;
    CheckResult upper = float_le(e, n * n * n);
    if (upper.verdict == Verdict::fail) return upper;
    return lower.ratio >= upper.ratio ? lower : upper;
}

CheckResult holder_s(CheckContext &ctx, ParamReader &p) {
    const Exponent s = p.exponent("s", Exponent(3, 2));
    p.finish();
    if (!(s.value() > 1.0 && s.value() < 3.0)) throw CheckSpecError("holder_s: s must lie in (1, 3)");
    const double es = ctx.energy(1, RepOp::diff, s).approx;
    const double e3 = ctx.energy(1, RepOp::diff, Exponent(3)).approx;
    const double mass = static_cast<double>(ctx.a().size()) * static_cast<double>(ctx.b().size());
    const double rhs = std::exp((s.value() - 1) / 2 * std::log(e3) + (3 - s.value()) / 2 * std::log(mass));
    return float_le(es, rhs);
}

CheckResult e2_interp(CheckContext &ctx, ParamReader &p) {
    p.finish();
    const double e2 = ctx.energy(0, RepOp::diff, Exponent(2)).approx;
    const double e127 = ctx.energy(0, RepOp::diff, Exponent(12, 7)).approx;
    const double e3 = ctx.energy(0, RepOp::diff, Exponent(3)).approx;
    return float_le(e2, std::exp(7.0 / 9 * std::log(e127) + 2.0 / 9 * std::log(e3)));
}

CheckResult e32_interp(CheckContext &ctx, ParamReader &p) {
    p.finish();
    const double e32 = ctx.energy(0, RepOp::diff, Exponent(3, 2)).approx;
    const double e127 = ctx.energy(0, RepOp::diff, Exponent(12, 7)).approx;
    return float_le(std::pow(e32, 2.0 / 3), std::exp(2.0 / 5 * ln(ctx.a().size()) + 7.0 / 15 * std::log(e127)));
}

CheckResult e2_lower(CheckContext &ctx, ParamReader &p) {
    p.finish();
    const mpz_class e2 = exact(ctx.energy(0, RepOp::diff, Exponent(2)));
    mpq_class lhs(zpow(ctx.a().size(), 4), mpz_class(static_cast<unsigned long>(support(ctx, 0, RepOp::sum))));
    lhs.canonicalize();
    return exact_le(lhs, mpq_class(e2));
}

// ---------------------------------------------------------------------------
// Ratio reports

CheckResult convex_e3(CheckContext &ctx, ParamReader &p) {
    p.finish();
    require_convex(ctx.a());
    const double na = static_cast<double>(ctx.a().size());
    const double nb = static_cast<double>(ctx.b().size());
    return report(ctx.energy(1, RepOp::diff, Exponent(3)).approx, na * nb * nb);
}

CheckResult convex_es(CheckContext &ctx, ParamReader &p) {
    const Exponent s = p.exponent("s", Exponent(3, 2));
    p.finish();
    require_convex(ctx.a());
    const double log_rhs = ln(ctx.a().size()) + (s.value() + 1) / 2 * ln(ctx.b().size());
    return report_log(ctx.energy(1, RepOp::diff, s).approx, log_rhs);
}

CheckResult prop_ea(CheckContext &ctx, ParamReader &p) {
    p.finish();
    require_convex(ctx.a());
    const double log_rhs = 38.0 / 15 * ln(ctx.a().size()) + 4.0 / 45 * ln(support(ctx, 0, RepOp::diff));
    return report_log(ctx.energy(0, RepOp::diff, Exponent(12, 5)).approx, log_rhs);
}

CheckResult rs_prop(CheckContext &ctx, ParamReader &p) {
    const std::string stat = p.text("stat", "max", {"max", "q64"});
    const std::size_t budget = p.size("budget", ctx.budget_or(kRsPropBudget));
    p.finish();
    const FiniteSet &a = ctx.a();
    require_positive(a);
    require_within(a.size(), budget);
    if (a.empty()) skip("domain");
    const DyadicClass cls = dyadic_pigeonhole(ctx.rep(0, RepOp::ratio), Exponent(2));
    std::vector<std::size_t> sizes;
    sizes.reserve(cls.members.size());
    for (const Rational &lambda : cls.members) {
        sizes.push_back(pair_set_size(a, intersect_dilate(a, lambda), RepOp::prod));
    }
    std::sort(sizes.begin(), sizes.end(), std::greater<>());
    const std::size_t pick = stat == "max" ? 0 : (sizes.size() + 63) / 64 - 1;
    const double log_rhs = 18 * ln(a.size()) - 0.5 * ln(sizes.size()) - 4 * ln(support(ctx, 0, RepOp::prod)) -
                           8 * ln(support(ctx, 0, RepOp::sum));
    return report_log(static_cast<double>(sizes[pick]), log_rhs);
}

CheckResult lemma6_e3(CheckContext &ctx, ParamReader &p) {
    p.finish();
    const FiniteSet &a = ctx.a();
    require_positive(a);
    if (a.empty()) skip("domain");
    const double log_rhs = 2 * ln(ctx.b().size()) + 17.5 * ln(support(ctx, 0, RepOp::prod)) +
                           24 * ln(support(ctx, 0, RepOp::sum)) - 54 * ln(a.size());
    return report_log(ctx.energy(1, RepOp::diff, Exponent(3)).approx, log_rhs);
}

constexpr double kSpExponent = 4.0 / 3 + 10.0 / 4407;
constexpr double kCsumExponent = 46.0 / 29;
constexpr double kCdiffExponent = 8.0 / 5 + 1.0 / 3440;

CheckResult power_report(std::size_t size, std::size_t n, double exponent) {
    return report_log(static_cast<double>(size), exponent * ln(n));
}

CheckResult thm_sp(CheckContext &ctx, ParamReader &p) {
    p.finish();
    if (ctx.a().empty()) skip("domain");
    const std::size_t best = std::max(support(ctx, 0, RepOp::sum), support(ctx, 0, RepOp::prod));
    return power_report(best, ctx.a().size(), kSpExponent);
}

CheckResult thm_csum(CheckContext &ctx, ParamReader &p) {
    p.finish();
    if (ctx.a().empty()) skip("domain");
    require_convex(ctx.a());
    return power_report(support(ctx, 0, RepOp::sum), ctx.a().size(), kCsumExponent);
}

CheckResult thm_cdiff(CheckContext &ctx, ParamReader &p) {
    p.finish();
    if (ctx.a().empty()) skip("domain");
    require_convex(ctx.a());
    return power_report(support(ctx, 0, RepOp::diff), ctx.a().size(), kCdiffExponent);
}

CheckResult st_measure(CheckContext &ctx, ParamReader &p) {
    const std::string path = p.text("lines", "");
    p.finish();
    const FiniteSet &a = ctx.a();
    const FiniteSet &b = ctx.b();
    if (a.empty() || b.empty()) skip("domain");
    std::vector<Line> lines;
    if (path.empty()) {
        const auto slopes = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(a.size()))));
        lines = grid_lines(slopes, a.size());
    } else {
        lines = read_lines_file(path);
    }
    if (lines.empty()) skip("domain");
    const std::int64_t inc = count_incidences_lines(a, b, lines);
    const auto points = static_cast<std::int64_t>(a.size() * b.size());
    const auto nl = static_cast<std::int64_t>(lines.size());
    CheckResult r = report(static_cast<double>(inc),
                           std::pow(static_cast<double>(points) * static_cast<double>(nl), 2.0 / 3) + static_cast<double>(nl));
    r.ratio = st_ratio(inc, points, nl);
    return r;
}

const std::vector<Entry> &entries() {
    static const std::vector<Entry> table = [] {
        std::vector<Entry> t;
        const auto add = [&](const char *id, CheckKind kind, const char *summary, CheckFn fn) {
            t.push_back(Entry{CheckInfo{id, kind, summary}, std::move(fn)});
        };
        constexpr CheckKind A = CheckKind::assert_type;
        constexpr CheckKind R = CheckKind::ratio_report;
        add("cs_energy", A, "(|A||B|)^2 <= |A+-B| E(A,B); op=diff|sum", cs_energy);
        add("cs_proj", A, "|X|^2 <= |Y| #{f(x1)=f(x2)}; map=triples|sum|diff|prod|ratio", cs_proj);
        add("popular_mass", A, "sum over P of delta_A >= (10/11)|A|^2", popular_mass);
        add("rich_size", A, "|R_A| > |A|/2", rich_size);
        add("diff_proj", A, "(9/484)|A|^6 <= E_3(A) proj(P,P)", diff_proj);
        add("diff_triples", A, "(3/22)|A|^3 <= #difference triples", diff_triples);
        add("sum_proj", A, "(D|P_D||B|/2)^2 <= E_3(B) proj(P_A(B), P_D)", sum_proj);
        add("sum_triples", A, "D|P_D||B|/2 <= #sum triples", sum_triples);
        add("e127_trivial", A, "|A|^2 <= E_{12/7}(A) <= |A|^3", e127_trivial);
        add("holder_s", A, "E_s <= E_3^{(s-1)/2} (|A||B|)^{(3-s)/2}; s in (1,3)", holder_s);
        add("e2_interp", A, "E(A) <= E_{12/7}(A)^{7/9} E_3(A)^{2/9}", e2_interp);
        add("e32_interp", A, "E_{3/2}(A)^{2/3} <= |A|^{2/5} E_{12/7}(A)^{7/15}", e32_interp);
        add("e2_lower", A, "|A|^4/|A+A| <= E(A)", e2_lower);
        add("convex_e3", R, "E_3(A,B) / (|A||B|^2), convex A", convex_e3);
        add("convex_es", R, "E_s(A,B) / (|A||B|^{(s+1)/2}), convex A", convex_es);
        add("prop_ea", R, "E_{12/5}(A) / (|A|^{38/15}|A-A|^{4/45}), convex A", prop_ea);
        add("rs_prop", R, "|A A_l| against |A|^18/(|S|^{1/2}|AA|^4|A+A|^8); stat=max|q64", rs_prop);
        add("lemma6_e3", R, "E_3(A,B) |A|^54 / (|B|^2 |AA|^{35/2} |A+A|^24)", lemma6_e3);
        add("thm_sp", R, "max(|A+A|,|AA|) / |A|^{4/3+10/4407}", thm_sp);
        add("thm_csum", R, "|A+A| / |A|^{46/29}, convex A", thm_csum);
        add("thm_cdiff", R, "|A-A| / |A|^{8/5+1/3440}, convex A", thm_cdiff);
        add("st_measure", R, "incidences / ((|P||L|)^{2/3} + |L|); lines=<file>", st_measure);
        return t;
    }();
    return table;
}

const Entry &find_entry(const std::string &id) {
    for (const Entry &e : entries()) {
        if (e.info.id == id) return e;
    }
    throw CheckSpecError("unknown check '" + id + "'");
}

double log_ratio(std::size_t size, std::size_t n, double exponent) {
    if (n == 0) throw DomainError("empty set");
    return std::exp(ln(size) - exponent * ln(n));
}

} // namespace

// ---------------------------------------------------------------------------

const std::vector<CheckInfo> &check_registry() {
    static const std::vector<CheckInfo> infos = [] {
        std::vector<CheckInfo> out;
        for (const Entry &e : entries()) out.push_back(e.info);
        return out;
    }();
    return infos;
}

const CheckInfo *find_check(const std::string &id) {
    for (const CheckInfo &c : check_registry()) {
        if (c.id == id) return &c;
    }
    return nullptr;
}

CheckRequest CheckRequest::parse(const std::string &text) {
    CheckRequest req;
    const auto colon = text.find(':');
    req.id = text.substr(0, colon);
    if (req.id.empty()) throw CheckSpecError("empty check id");
    if (colon == std::string::npos) return req;
    std::stringstream rest(text.substr(colon + 1));
    std::string item;
    while (std::getline(rest, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0) throw CheckSpecError("malformed parameter '" + item + "' in " + text);
        if (!req.params.emplace(item.substr(0, eq), item.substr(eq + 1)).second) {
            throw CheckSpecError("duplicate parameter '" + item.substr(0, eq) + "' in " + text);
        }
    }
    return req;
}

std::string CheckRequest::str() const {
    std::string out = id;
    char sep = ':';
    for (const auto &[k, v] : params) {
        out += sep;
        out += k + "=" + v;
        sep = ',';
    }
    return out;
}

std::string CheckResult::verdict_str() const {
    switch (verdict) {
    case Verdict::pass:
        return "pass";
    case Verdict::fail:
        return "fail";
    case Verdict::ratio_report:
        return "ratio-report";
    case Verdict::skipped:
        return "skipped(" + skip_reason + ")";
    }
    return "?";
}

std::vector<std::string> default_assert_suite() {
    return {"cs_energy:op=diff", "cs_energy:op=sum", "cs_proj",    "popular_mass",  "rich_size",
            "diff_proj",         "diff_triples",     "sum_proj",   "sum_triples",   "e127_trivial",
            "holder_s:s=3/2",    "holder_s:s=12/7",  "holder_s:s=12/5", "e2_interp", "e32_interp",
            "e2_lower"};
}

std::vector<std::string> default_ratio_suite() {
    return {"convex_e3", "convex_es", "prop_ea",  "rs_prop:stat=max", "rs_prop:stat=q64", "lemma6_e3",
            "thm_sp",    "thm_csum",  "thm_cdiff", "st_measure"};
}

// ---------------------------------------------------------------------------

struct CheckContext::Cache {
    FiniteSet a;
    std::optional<FiniteSet> b;
    std::map<std::pair<int, RepOp>, RepFn> reps;
    std::map<std::tuple<int, RepOp, std::int64_t, std::int64_t>, EnergyValue> energies;
    std::optional<FiniteSet> popular;
    std::optional<FiniteSet> rich;
    std::optional<std::int64_t> projection;
    std::optional<Refinement> refinement;
    std::optional<SumTriples> sum_triples;
    std::optional<std::size_t> budget;
};

CheckContext::CheckContext(FiniteSet a, std::optional<FiniteSet> b) : cache_(std::make_unique<Cache>()) {
    cache_->a = std::move(a);
    cache_->b = std::move(b);
}

CheckContext::~CheckContext() = default;
CheckContext::CheckContext(CheckContext &&) noexcept = default;
CheckContext &CheckContext::operator=(CheckContext &&) noexcept = default;

const FiniteSet &CheckContext::a() const { return cache_->a; }
const FiniteSet &CheckContext::b() const { return cache_->b ? *cache_->b : cache_->a; }
bool CheckContext::has_b() const { return cache_->b.has_value(); }
void CheckContext::set_budget(std::optional<std::size_t> budget) { cache_->budget = budget; }
std::size_t CheckContext::budget_or(std::size_t fallback) const { return cache_->budget.value_or(fallback); }

const RepFn &CheckContext::rep(int which, RepOp op) {
    if (!has_b()) which = 0;
    const auto key = std::make_pair(which, op);
    auto it = cache_->reps.find(key);
    if (it == cache_->reps.end()) {
        it = cache_->reps.emplace(key, rep_fn(a(), which == 0 ? a() : b(), op)).first;
    }
    return it->second;
}

const EnergyValue &CheckContext::energy(int which, RepOp op, const Exponent &k) {
    if (!has_b()) which = 0;
    const auto key = std::make_tuple(which, op, k.num(), k.den());
    auto it = cache_->energies.find(key);
    if (it == cache_->energies.end()) it = cache_->energies.emplace(key, sumlab::energy(rep(which, op), k)).first;
    return it->second;
}

const FiniteSet &CheckContext::popular_diffs() {
    if (!cache_->popular) cache_->popular = sumlab::popular_diffs(a());
    return *cache_->popular;
}

const FiniteSet &CheckContext::rich_diffs() {
    if (!cache_->rich) cache_->rich = rich_diff_elements(a(), popular_diffs());
    return *cache_->rich;
}

std::int64_t CheckContext::popular_projection() {
    if (!cache_->projection) cache_->projection = projection_count(popular_diffs(), popular_diffs());
    return *cache_->projection;
}

const Refinement &CheckContext::refinement() {
    if (!cache_->refinement) cache_->refinement = refine_to_b(a());
    return *cache_->refinement;
}

const SumTriples &CheckContext::sum_triples() {
    if (!cache_->sum_triples) {
        cache_->sum_triples = triple_count_sum(refinement().b, a().size(), std::numeric_limits<std::size_t>::max());
    }
    return *cache_->sum_triples;
}

CheckResult run_check(const std::string &check, CheckContext &ctx) {
    const CheckRequest req = CheckRequest::parse(check);
    const Entry &entry = find_entry(req.id);
    ParamReader params(req.id, req.params);

    CheckResult result;
    try {
        result = entry.fn(ctx, params);
    } catch (const Skip &s) {
        params.finish();
        result = CheckResult{};
        result.verdict = Verdict::skipped;
        result.skip_reason = s.reason;
    } catch (const BudgetError &) {
        result = CheckResult{};
        result.verdict = Verdict::skipped;
        result.skip_reason = "budget";
    } catch (const DomainError &) {
        result = CheckResult{};
        result.verdict = Verdict::skipped;
        result.skip_reason = "domain";
    }
    result.check_id = req.str();
    result.inputs_desc = "A=" + describe(ctx.a());
    if (ctx.has_b()) result.inputs_desc += " B=" + describe(ctx.b());
    return result;
}

void validate_check(const std::string &check) {
    CheckContext probe(make_set({1, 2, 3}));
    probe.set_budget(0);
    (void)run_check(check, probe);
}

CheckResult run_check(const std::string &check, const FiniteSet &a, const std::optional<FiniteSet> &b) {
    CheckContext ctx(a, b);
    return run_check(check, ctx);
}

double thm_sp_ratio(const FiniteSet &a) {
    const std::size_t best = std::max(pair_set_size(a, a, RepOp::sum), pair_set_size(a, a, RepOp::prod));
    return log_ratio(best, a.size(), kSpExponent);
}

double thm_csum_ratio(const FiniteSet &a) { return log_ratio(pair_set_size(a, a, RepOp::sum), a.size(), kCsumExponent); }

double thm_cdiff_ratio(const FiniteSet &a) {
    return log_ratio(pair_set_size(a, a, RepOp::diff), a.size(), kCdiffExponent);
}

} // namespace sumlab
