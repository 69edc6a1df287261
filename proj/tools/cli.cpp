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

#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "sumlab/energy.hpp"
#include "sumlab/family.hpp"
#include "sumlab/incidence.hpp"
#include "sumlab/scan.hpp"
#include "sumlab/search.hpp"
#include "sumlab/verifier.hpp"

namespace sumlab::cli {

namespace {

using json = nlohmann::json;

class UsageError : public Error {
  public:
    using Error::Error;
};

class IoError : public Error {
  public:
    using Error::Error;
};

constexpr std::size_t kDefaultSearchBudget = 1000;

struct RunConfig {
    std::string command;
    std::vector<std::string> family;
    std::size_t n = 0;
    std::vector<std::string> sizes;
    std::vector<std::string> checks;
    std::uint64_t seed = 0;
    std::string out;
    std::string format = "csv";
    unsigned jobs = 1;
    std::size_t budget = 0;
    std::string input;
    std::string partner;
    std::string partner_input;
    std::string lines;
    std::string translates;
    std::size_t slopes = 0;
    std::size_t intercepts = 0;
    std::size_t range = 0;
    std::string objective = "thm_sp";
    std::string trajectory;
    bool timing = false;

    std::set<std::string> given;
    bool has(const std::string &key) const { return given.count(key) != 0; }
};

// ---- config file ------------------------------------------------------------

template <class T> void assign(const std::string &key, T &field, const json &j) {
    try {
        if constexpr (std::is_same_v<T, std::vector<std::string>>) {
            field.clear();
            const auto one = [&](const json &e) { field.push_back(e.is_string() ? e.get<std::string>() : e.dump()); };
            if (j.is_array()) {
                for (const json &e : j) one(e);
            } else {
                one(j);
            }
        } else {
            field = j.get<T>();
        }
    } catch (const json::exception &) {
        throw UsageError("config key '" + key + "' has the wrong type");
    }
}

struct Binding {
    CLI::Option *option = nullptr;
    std::function<void(const json &)> from_json;
};

class Binder {
  public:
    explicit Binder(RunConfig &cfg) : cfg_(cfg) {}

    template <class T> void add(CLI::App *sub, const std::string &key, T &field, const std::string &help) {
        std::string flag = "--" + key;
        std::replace(flag.begin(), flag.end(), '_', '-');
        CLI::Option *opt = nullptr;
        if constexpr (std::is_same_v<T, bool>) {
            opt = sub->add_flag(flag, field, help);
        } else {
            opt = sub->add_option(flag, field, help);
        }
        bindings_[sub->get_name()][key] = Binding{opt, [key, &field](const json &j) { assign(key, field, j); }};
        known_.insert(key);
    }

    /// Records flags seen on the command line, then fills the rest from the
    /// config object.
    void merge(const std::string &command, const json &config) {
        auto &table = bindings_.at(command);
        for (auto &[key, b] : table) {
            if (b.option->count() > 0) cfg_.given.insert(key);
        }
        for (const auto &[key, value] : config.items()) {
            if (key == "command") continue;
            if (known_.count(key) == 0) throw UsageError("unknown config key '" + key + "'");
            const auto it = table.find(key);
            if (it == table.end() || cfg_.has(key)) continue;
            it->second.from_json(value);
            cfg_.given.insert(key);
        }
    }

  private:
    RunConfig &cfg_;
    std::map<std::string, std::map<std::string, Binding>> bindings_;
    std::set<std::string> known_;
};

json load_config(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file '" + path + "'");
    try {
        json j = json::parse(in);
        if (!j.is_object()) throw UsageError("config file must hold a JSON object");
        return j;
    } catch (const json::parse_error &e) {
        throw UsageError("config file '" + path + "': " + e.what());
    }
}

// ---- argument helpers -------------------------------------------------------

// Comma lists whose items may carry "key=value" parameters: a piece holding
// '=' but no ':' continues the previous item.
std::vector<std::string> split_specs(const std::vector<std::string> &raw) {
    std::vector<std::string> out;
    for (const std::string &token : raw) {
        std::stringstream ss(token);
        std::string piece;
        while (std::getline(ss, piece, ',')) {
            if (piece.empty()) continue;
            if (piece.find('=') != std::string::npos && piece.find(':') == std::string::npos && !out.empty()) {
                out.back() += "," + piece;
            } else {
                out.push_back(piece);
            }
        }
    }
    return out;
}

std::size_t parse_size(const std::string &s) {
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
        v = std::stoull(s, &pos);
    } catch (const std::exception &) {
        pos = 0;
    }
    if (pos == 0 || pos != s.size() || s[0] == '-') throw UsageError("expected a size, got '" + s + "'");
    return static_cast<std::size_t>(v);
}

// "8,16,32" or "16..2048" (doubling).
std::vector<std::size_t> parse_sizes(const std::vector<std::string> &raw) {
    std::vector<std::size_t> out;
    for (const std::string &token : raw) {
        std::stringstream ss(token);
        std::string piece;
        while (std::getline(ss, piece, ',')) {
            if (piece.empty()) continue;
            const auto dots = piece.find("..");
            if (dots == std::string::npos) {
                out.push_back(parse_size(piece));
                continue;
            }
            const std::size_t lo = parse_size(piece.substr(0, dots));
            const std::size_t hi = parse_size(piece.substr(dots + 2));
            if (lo == 0 || lo > hi) throw UsageError("bad size range '" + piece + "'");
            for (std::size_t v = lo; v <= hi; v *= 2) out.push_back(v);
        }
    }
    return out;
}

std::vector<std::string> resolve_checks(const std::vector<std::string> &raw) {
    std::vector<std::string> out;
    const auto append = [&](const std::vector<std::string> &v) { out.insert(out.end(), v.begin(), v.end()); };
    for (const std::string &c : split_specs(raw)) {
        if (c == "assert") {
            append(default_assert_suite());
        } else if (c == "ratio") {
            append(default_ratio_suite());
        } else if (c == "all") {
            append(default_assert_suite());
            append(default_ratio_suite());
        } else {
            out.push_back(c);
        }
    }
    if (out.empty()) append(default_assert_suite());
    return out;
}

void require_format(const RunConfig &c) {
    if (c.format != "csv" && c.format != "json") throw UsageError("--format must be csv or json");
}

Family seeded_family(const std::string &text, std::uint64_t seed) { return with_seed_offset(parse_family(text), seed); }

FiniteSet load_primary(const RunConfig &c) {
    const bool from_family = !c.family.empty();
    if (from_family == !c.input.empty()) throw UsageError("give exactly one of --family or --input");
    if (!from_family) return read_set_file(c.input);
    const auto specs = split_specs(c.family);
    if (specs.size() != 1) throw UsageError("expected a single --family");
    if (c.n == 0) throw UsageError("--n is required with --family");
    return gen_family(seeded_family(specs[0], c.seed), c.n);
}

std::optional<FiniteSet> load_partner(const RunConfig &c, std::size_t n) {
    if (!c.partner.empty() && !c.partner_input.empty()) throw UsageError("give at most one of --partner or --partner-input");
    if (!c.partner_input.empty()) return read_set_file(c.partner_input);
    if (!c.partner.empty()) return gen_family(seeded_family(c.partner, c.seed), n);
    return std::nullopt;
}

// ---- output -----------------------------------------------------------------

using Writer = std::function<void(std::ostream &)>;

void write_atomic(const std::string &path, const Writer &writer) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".partial";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw IoError("cannot write '" + tmp.string() + "'");
        writer(f);
        f.flush();
        if (!f) {
            std::error_code ignored;
            fs::remove(tmp, ignored);
            throw IoError("write to '" + tmp.string() + "' failed");
        }
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        std::error_code ignored;
        fs::remove(tmp, ignored);
        throw IoError("cannot move output into '" + path + "': " + ec.message());
    }
}

void emit(const std::string &path, std::ostream &out, const Writer &writer) {
    if (path.empty() || path == "-") {
        writer(out);
    } else {
        write_atomic(path, writer);
    }
}

using KeyValues = std::vector<std::pair<std::string, std::string>>;

void write_key_values(std::ostream &os, const KeyValues &kv, const std::string &format) {
    if (format == "json") {
        nlohmann::ordered_json j = nlohmann::ordered_json::object();
        for (const auto &[k, v] : kv) j[k] = v;
        os << j.dump(2) << '\n';
        return;
    }
    os << "stat,value\n";
    for (const auto &[k, v] : kv) os << csv_field(k) << ',' << csv_field(v) << '\n';
}

std::string energy_text(const EnergyValue &e) { return e.exact ? e.exact->get_str() : format_double(e.approx); }

// ---- commands ---------------------------------------------------------------

int cmd_gen(const RunConfig &c, std::ostream &out) {
    require_format(c);
    const FiniteSet a = load_primary(c);
    emit(c.out, out, [&](std::ostream &os) {
        if (c.format == "json") {
            json elems = json::array();
            for (const Rational &x : a) elems.push_back(x.str());
            os << json{{"family", family_label(seeded_family(split_specs(c.family)[0], c.seed))}, {"n", a.size()},
                       {"elements", elems}}
                      .dump(2)
               << '\n';
        } else {
            write_set(os, a);
        }
    });
    return kExitOk;
}

int cmd_stats(const RunConfig &c, std::ostream &out) {
    require_format(c);
    const FiniteSet a = load_primary(c);
    const bool zero = a.contains(Rational(0));
    const std::string na = "n/a(0∈A)";
    KeyValues kv;
    kv.emplace_back("size", std::to_string(a.size()));
    kv.emplace_back("sum_size", std::to_string(pair_set_size(a, a, RepOp::sum)));
    kv.emplace_back("diff_size", std::to_string(pair_set_size(a, a, RepOp::diff)));
    kv.emplace_back("prod_size", std::to_string(pair_set_size(a, a, RepOp::prod)));
    kv.emplace_back("ratio_size", zero ? na : std::to_string(pair_set_size(a, a, RepOp::ratio)));
    const RepFn delta = rep_fn(a, a, RepOp::diff);
    for (const Exponent k : {Exponent(3, 2), Exponent(12, 7), Exponent(2), Exponent(12, 5), Exponent(3)}) {
        kv.emplace_back("E_" + k.str(), energy_text(energy(delta, k)));
    }
    kv.emplace_back("Ex_2", zero ? na : energy_text(multiplicative_energy(a, a, Exponent(2))));
    kv.emplace_back("is_convex", is_convex(a) ? "true" : "false");
    const FiniteSet popular = popular_diffs(a);
    kv.emplace_back("popular_size", std::to_string(popular.size()));
    kv.emplace_back("rich_size", std::to_string(rich_diff_elements(a, popular).size()));
    emit(c.out, out, [&](std::ostream &os) { write_key_values(os, kv, c.format); });
    return kExitOk;
}

int cmd_verify(const RunConfig &c, std::ostream &out, std::ostream &err) {
    require_format(c);
    const std::vector<std::string> checks = resolve_checks(c.checks);
    for (const std::string &id : checks) validate_check(id);
    FiniteSet a = load_primary(c);
    std::optional<FiniteSet> b = load_partner(c, a.size());
    CheckContext ctx(std::move(a), std::move(b));
    if (c.has("budget")) ctx.set_budget(c.budget);

    std::vector<CheckResult> results;
    std::map<Verdict, std::size_t> tally;
    for (const std::string &id : checks) {
        results.push_back(run_check(id, ctx));
        ++tally[results.back().verdict];
    }
    emit(c.out, out, [&](std::ostream &os) {
        if (c.format == "json") {
            json arr = json::array();
            for (const CheckResult &r : results) {
                arr.push_back({{"check_id", r.check_id},
                               {"inputs", r.inputs_desc},
                               {"lhs", format_double(r.lhs)},
                               {"rhs", format_double(r.rhs)},
                               {"ratio", format_double(r.ratio)},
                               {"verdict", r.verdict_str()}});
            }
            os << arr.dump(2) << '\n';
            return;
        }
        os << "check_id,inputs,lhs,rhs,ratio,verdict\n";
        for (const CheckResult &r : results) {
            os << csv_field(r.check_id) << ',' << csv_field(r.inputs_desc) << ',' << format_double(r.lhs) << ','
               << format_double(r.rhs) << ',' << format_double(r.ratio) << ',' << csv_field(r.verdict_str()) << '\n';
        }
    });
    err << "verify: " << results.size() << " checks, " << tally[Verdict::pass] << " pass, " << tally[Verdict::fail]
        << " fail, " << tally[Verdict::skipped] << " skipped, " << tally[Verdict::ratio_report] << " ratio-report\n";
    return tally[Verdict::fail] == 0 ? kExitOk : kExitCheckFailure;
}

int cmd_scan(const RunConfig &c, std::ostream &out, std::ostream &err) {
    require_format(c);
    std::vector<Family> families;
    for (const std::string &f : split_specs(c.family)) families.push_back(parse_family(f));
    const std::vector<std::size_t> sizes = parse_sizes(c.sizes);
    if (families.empty()) throw UsageError("scan needs at least one --family");
    if (sizes.empty()) throw UsageError("scan needs --sizes");
    if (c.jobs == 0) throw UsageError("--jobs must be positive");
    ScanOptions options;
    options.seed = c.seed;
    options.jobs = c.jobs;
    options.timing = c.timing;
    if (!c.partner.empty()) options.partner = parse_family(c.partner);
    if (c.has("budget")) options.budget = c.budget;

    const std::vector<ScanRow> rows = run_scan(families, sizes, resolve_checks(c.checks), options);
    emit(c.out, out, [&](std::ostream &os) {
        if (c.format == "json") {
            write_scan_json(os, rows);
        } else {
            write_scan_csv(os, rows);
        }
    });
    const bool failed = has_failure(rows);
    err << "scan: " << rows.size() << " rows" << (failed ? ", assert failures present" : "") << '\n';
    return failed ? kExitCheckFailure : kExitOk;
}

int cmd_incidence(const RunConfig &c, std::ostream &out) {
    require_format(c);
    const FiniteSet a = load_primary(c);
    const std::optional<FiniteSet> partner = load_partner(c, a.size());
    const FiniteSet &b = partner ? *partner : a;
    std::int64_t incidences = 0;
    std::int64_t points = 0;
    std::int64_t count = 0;
    if (!c.translates.empty()) {
        if (!c.lines.empty()) throw UsageError("give at most one of --lines or --translates");
        const ConvexCurve curve(a);
        const auto range = static_cast<std::int64_t>(c.range != 0 ? c.range : a.size());
        const std::vector<CurveTranslate> ts = read_translates_file(c.translates);
        incidences = count_incidences_curve(curve, range, b, ts);
        points = range * static_cast<std::int64_t>(b.size());
        count = static_cast<std::int64_t>(ts.size());
    } else {
        std::vector<Line> lines;
        if (!c.lines.empty()) {
            lines = read_lines_file(c.lines);
        } else {
            const auto root = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(a.size()))));
            lines = grid_lines(c.slopes != 0 ? c.slopes : root, c.intercepts != 0 ? c.intercepts : a.size());
        }
        incidences = count_incidences_lines(a, b, lines);
        points = static_cast<std::int64_t>(a.size() * b.size());
        count = static_cast<std::int64_t>(lines.size());
    }
    KeyValues kv;
    kv.emplace_back("incidences", std::to_string(incidences));
    kv.emplace_back("points", std::to_string(points));
    kv.emplace_back("lines", std::to_string(count));
    kv.emplace_back("st_ratio", points > 0 && count > 0 ? format_double(st_ratio(incidences, points, count)) : "n/a");
    emit(c.out, out, [&](std::ostream &os) { write_key_values(os, kv, c.format); });
    return kExitOk;
}

int cmd_search(const RunConfig &c, std::ostream &out, std::ostream &err) {
    require_format(c);
    const Objective objective = parse_objective(c.objective);
    if (c.n < 4) throw UsageError("search needs --n >= 4");
    const std::size_t budget = c.has("budget") ? c.budget : kDefaultSearchBudget;
    if (budget == 0) throw UsageError("--budget must be positive");
    const SearchResult r = search_extremal(objective, c.n, budget, c.seed);
    emit(c.out, out, [&](std::ostream &os) {
        if (c.format == "json") {
            json elems = json::array();
            for (const Rational &x : r.best) elems.push_back(x.str());
            os << json{{"objective", to_string(objective)}, {"n", c.n},     {"seed", c.seed},
                       {"best_ratio", r.best_ratio},        {"best", elems}, {"trajectory", r.trajectory}}
                      .dump(2)
               << '\n';
        } else {
            write_set(os, r.best);
        }
    });
    if (!c.trajectory.empty()) {
        write_atomic(c.trajectory, [&](std::ostream &os) {
            os << "evaluation,best_ratio\n";
            for (std::size_t i = 0; i < r.trajectory.size(); ++i) os << i + 1 << ',' << format_double(r.trajectory[i]) << '\n';
        });
    }
    err << "search: " << to_string(objective) << " n=" << c.n << " evaluations=" << r.trajectory.size()
        << " restarts=" << r.restarts << " best_ratio=" << format_double(r.best_ratio) << '\n';
    return kExitOk;
}

} // namespace

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    RunConfig cfg;
    Binder bind(cfg);
    CLI::App app{"sumlab: finite-set sum-product laboratory", "sumlab"};
    app.require_subcommand(0, 1);
    app.fallthrough();
    std::string config_path;
    app.add_option("--config", config_path, "JSON file with option values (command-line flags win)");

    const auto source = [&](CLI::App *sub) {
        bind.add(sub, "family", cfg.family, "family spec, e.g. ap:a=1,d=1 | gp:a=1,r=2 | convex:k=2 | random:range=4n,seed=0");
        bind.add(sub, "n", cfg.n, "set size");
        bind.add(sub, "input", cfg.input, "set file, one rational per line");
        bind.add(sub, "seed", cfg.seed, "offset added to the family seed");
        bind.add(sub, "out", cfg.out, "output path (default stdout)");
        bind.add(sub, "format", cfg.format, "csv or json");
    };

    CLI::App *gen = app.add_subcommand("gen", "generate a family member");
    source(gen);
    CLI::App *stats = app.add_subcommand("stats", "pair-set sizes, energies and constructions of one set");
    source(stats);
    CLI::App *verify = app.add_subcommand("verify", "run checks on one set (default: the assert suite)");
    source(verify);
    bind.add(verify, "partner", cfg.partner, "family for the second set B");
    bind.add(verify, "partner_input", cfg.partner_input, "file for the second set B");
    bind.add(verify, "checks", cfg.checks, "check ids, or assert | ratio | all");
    bind.add(verify, "budget", cfg.budget, "size budget for budgeted checks");
    CLI::App *scan = app.add_subcommand("scan", "sweep families x sizes x checks");
    bind.add(scan, "family", cfg.family, "family specs (repeatable or comma-separated)");
    bind.add(scan, "sizes", cfg.sizes, "sizes, e.g. 8,16,32 or 16..2048 (doubling)");
    bind.add(scan, "checks", cfg.checks, "check ids, or assert | ratio | all");
    bind.add(scan, "seed", cfg.seed, "offset added to every family seed");
    bind.add(scan, "out", cfg.out, "output path (default stdout)");
    bind.add(scan, "format", cfg.format, "csv or json");
    bind.add(scan, "jobs", cfg.jobs, "worker threads");
    bind.add(scan, "budget", cfg.budget, "size budget for budgeted checks");
    bind.add(scan, "partner", cfg.partner, "family for the second set B");
    bind.add(scan, "timing", cfg.timing, "record elapsed seconds per cell");
    CLI::App *incidence = app.add_subcommand("incidence", "count incidences on A x B");
    source(incidence);
    bind.add(incidence, "partner", cfg.partner, "family for B (default B = A)");
    bind.add(incidence, "partner_input", cfg.partner_input, "file for B");
    bind.add(incidence, "lines", cfg.lines, "CSV slope,intercept");
    bind.add(incidence, "translates", cfg.translates, "CSV shift,drop of curve translates (A is the curve table)");
    bind.add(incidence, "slopes", cfg.slopes, "grid lines: slopes 1..m (default ceil(sqrt|A|))");
    bind.add(incidence, "intercepts", cfg.intercepts, "grid lines: intercepts 1..c (default |A|)");
    bind.add(incidence, "range", cfg.range, "curve argument range (default |A|)");
    CLI::App *search = app.add_subcommand("search", "hill-climb for sets with small theorem ratios");
    bind.add(search, "objective", cfg.objective, "thm_sp | thm_csum | thm_cdiff");
    bind.add(search, "n", cfg.n, "set size");
    bind.add(search, "budget", cfg.budget, "objective evaluations");
    bind.add(search, "seed", cfg.seed, "random seed");
    bind.add(search, "out", cfg.out, "best set path (default stdout)");
    bind.add(search, "format", cfg.format, "csv (set file) or json");
    bind.add(search, "trajectory", cfg.trajectory, "CSV of the best ratio after each evaluation");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        json config = json::object();
        if (!config_path.empty()) config = load_config(config_path);
        CLI::App *active = nullptr;
        for (CLI::App *sub : {gen, stats, verify, scan, incidence, search}) {
            if (sub->parsed()) active = sub;
        }
        if (active != nullptr) {
            cfg.command = active->get_name();
        } else if (config.contains("command") && config["command"].is_string()) {
            cfg.command = config["command"].get<std::string>();
        } else {
            err << app.help();
            return kExitUsage;
        }
        bind.merge(cfg.command, config);

        if (cfg.command == "gen") return cmd_gen(cfg, out);
        if (cfg.command == "stats") return cmd_stats(cfg, out);
        if (cfg.command == "verify") return cmd_verify(cfg, out, err);
        if (cfg.command == "scan") return cmd_scan(cfg, out, err);
        if (cfg.command == "incidence") return cmd_incidence(cfg, out);
        if (cfg.command == "search") return cmd_search(cfg, out, err);
        throw UsageError("unknown command '" + cfg.command + "'");
    } catch (const IoError &e) {
        err << "sumlab: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::ios_base::failure &e) {
        err << "sumlab: " << e.what() << '\n';
        return kExitIo;
    } catch (const Error &e) {
        err << "sumlab: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception &e) {
        err << "sumlab: internal error: " << e.what() << '\n';
        return kExitCheckFailure;
    }
}

} // namespace sumlab::cli
