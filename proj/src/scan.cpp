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

#include "sumlab/scan.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <ostream>
#include <thread>
#include <type_traits>

#include <nlohmann/json.hpp>

namespace sumlab {

namespace {

struct Cell {
    std::size_t family = 0;
    std::size_t n = 0;
};

ScanRow skipped_row(const std::string &check, const std::string &reason) {
    ScanRow row;
    row.check_id = check;
    row.verdict = Verdict::skipped;
    row.verdict_text = "skipped(" + reason + ")";
    return row;
}

std::string error_reason(const std::exception &e) {
    if (dynamic_cast<const InfeasibleSpecError *>(&e) != nullptr) return "infeasible";
    if (dynamic_cast<const BudgetError *>(&e) != nullptr) return "budget";
    if (dynamic_cast<const DomainError *>(&e) != nullptr) return "domain";
    return "error";
}

void run_cell(const Family &family, const std::optional<Family> &partner, std::size_t n,
              const std::vector<std::string> &checks, const ScanOptions &options, ScanRow *out) {
    using clock = std::chrono::steady_clock;
    std::optional<CheckContext> ctx;
    try {
        std::optional<FiniteSet> b;
        if (partner) b = gen_family(*partner, n);
        ctx.emplace(gen_family(family, n), std::move(b));
        ctx->set_budget(options.budget);
    } catch (const std::exception &e) {
        for (std::size_t k = 0; k < checks.size(); ++k) out[k] = skipped_row(checks[k], error_reason(e));
        return;
    }
    for (std::size_t k = 0; k < checks.size(); ++k) {
        const auto t0 = clock::now();
        try {
            const CheckResult r = run_check(checks[k], *ctx);
            out[k].check_id = r.check_id;
            out[k].lhs = r.lhs;
            out[k].rhs = r.rhs;
            out[k].ratio = r.ratio;
            out[k].verdict = r.verdict;
            out[k].verdict_text = r.verdict_str();
        } catch (const CheckSpecError &) {
            throw;
        } catch (const std::exception &e) {
            out[k] = skipped_row(CheckRequest::parse(checks[k]).str(), error_reason(e));
        }
        if (options.timing) out[k].elapsed_s = std::chrono::duration<double>(clock::now() - t0).count();
    }
}

} // namespace

Family with_seed_offset(const Family &family, std::uint64_t offset) {
    Family out = family;
    std::visit(
        [&](auto &f) {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, ConvexCustomFamily> || std::is_same_v<T, RandomSubsetFamily> ||
                          std::is_same_v<T, PerturbedFamily>) {
                f.seed += offset;
            }
        },
        out);
    return out;
}

std::vector<ScanRow> run_scan(const std::vector<Family> &families, const std::vector<std::size_t> &sizes,
                              const std::vector<std::string> &checks, const ScanOptions &options) {
    for (const std::string &c : checks) validate_check(c);
    std::vector<std::size_t> ns = sizes;
    std::sort(ns.begin(), ns.end());
    ns.erase(std::unique(ns.begin(), ns.end()), ns.end());

    std::vector<Family> seeded;
    for (const Family &f : families) seeded.push_back(with_seed_offset(f, options.seed));
    std::optional<Family> partner;
    if (options.partner) partner = with_seed_offset(*options.partner, options.seed);

    std::vector<Cell> cells;
    for (std::size_t f = 0; f < seeded.size(); ++f) {
        for (const std::size_t n : ns) cells.push_back(Cell{f, n});
    }
    std::vector<ScanRow> rows(cells.size() * checks.size());

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    const auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= cells.size() || failed.load()) return;
            try {
                run_cell(seeded[cells[i].family], partner, cells[i].n, checks, options, &rows[i * checks.size()]);
            } catch (...) {
                if (!failed.exchange(true)) failure = std::current_exception();
                return;
            }
        }
    };
    const unsigned jobs = std::max(1U, std::min<unsigned>(options.jobs, static_cast<unsigned>(cells.size())));
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
        for (auto &t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);

    for (std::size_t i = 0; i < cells.size(); ++i) {
        const std::string label = family_label(seeded[cells[i].family]);
        for (std::size_t k = 0; k < checks.size(); ++k) {
            ScanRow &row = rows[i * checks.size() + k];
            row.family = label;
            row.n = cells[i].n;
        }
    }
    return rows;
}

bool has_failure(const std::vector<ScanRow> &rows) {
    return std::any_of(rows.begin(), rows.end(), [](const ScanRow &r) { return r.verdict == Verdict::fail; });
}

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string csv_field(const std::string &text) {
    if (text.find_first_of(",\"\n\r") == std::string::npos) return text;
    std::string out = "\"";
    for (const char c : text) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

void write_scan_csv(std::ostream &out, const std::vector<ScanRow> &rows) {
    out << "family,n,check_id,lhs,rhs,ratio,verdict,elapsed_s\n";
    for (const ScanRow &r : rows) {
        out << csv_field(r.family) << ',' << r.n << ',' << csv_field(r.check_id) << ',' << format_double(r.lhs) << ','
            << format_double(r.rhs) << ',' << format_double(r.ratio) << ',' << csv_field(r.verdict_text) << ','
            << format_double(r.elapsed_s) << '\n';
    }
}

void write_scan_json(std::ostream &out, const std::vector<ScanRow> &rows) {
    auto number = [](double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(format_double(v)); };
    nlohmann::json arr = nlohmann::json::array();
    for (const ScanRow &r : rows) {
        arr.push_back({{"family", r.family},
                       {"n", r.n},
                       {"check_id", r.check_id},
                       {"lhs", number(r.lhs)},
                       {"rhs", number(r.rhs)},
                       {"ratio", number(r.ratio)},
                       {"verdict", r.verdict_text},
                       {"elapsed_s", number(r.elapsed_s)}});
    }
    out << arr.dump(2) << '\n';
}

} // namespace sumlab
