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

#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sumlab/constructions.hpp"
#include "sumlab/error.hpp"

namespace sumlab {

class CheckSpecError : public Error {
  public:
    using Error::Error;
};

enum class CheckKind { assert_type, ratio_report };

enum class Verdict { pass, fail, ratio_report, skipped };

struct CheckInfo {
    std::string id;
    CheckKind kind;
    std::string summary;
};

/// Every registered check, assert-type first.
const std::vector<CheckInfo> &check_registry();
const CheckInfo *find_check(const std::string &id);

/// "id" or "id:key=value,key=value".
struct CheckRequest {
    std::string id;
    std::map<std::string, std::string> params;

    static CheckRequest parse(const std::string &text);
    /// Canonical text; parameters in key order.
    std::string str() const;
};

struct CheckResult {
    std::string check_id;
    std::string inputs_desc;
    double lhs = 0.0;
    double rhs = 0.0;
    double ratio = 0.0;
    Verdict verdict = Verdict::skipped;
    std::string skip_reason;

    /// "pass", "fail", "ratio-report" or "skipped(<reason>)".
    std::string verdict_str() const;
};

/// Assert suite run by a bare verify: the exact inequalities plus the
/// holder_s interpolation at s = 3/2, 12/7 and 12/5.
std::vector<std::string> default_assert_suite();
/// Every ratio-report check with default parameters.
std::vector<std::string> default_ratio_suite();

/// Memoised quantities of one (A, B) input shared by the checks run on it.
/// Not thread-safe; use one context per worker.
class CheckContext {
  public:
    explicit CheckContext(FiniteSet a, std::optional<FiniteSet> b = std::nullopt);
    ~CheckContext();
    CheckContext(CheckContext &&) noexcept;
    CheckContext &operator=(CheckContext &&) noexcept;

    const FiniteSet &a() const;
    /// B when supplied, A otherwise.
    const FiniteSet &b() const;
    bool has_b() const;

    /// Size budget applied to every budgeted check that is not given an
    /// explicit budget= parameter.
    void set_budget(std::optional<std::size_t> budget);
    std::size_t budget_or(std::size_t fallback) const;

    /// which: 0 = (A, A), 1 = (A, B).
    const RepFn &rep(int which, RepOp op);
    const EnergyValue &energy(int which, RepOp op, const Exponent &k);
    const FiniteSet &popular_diffs();
    const FiniteSet &rich_diffs();
    /// projection_count(P, P) for the popular differences P.
    std::int64_t popular_projection();
    const Refinement &refinement();
    const SumTriples &sum_triples();

  private:
    struct Cache;
    std::unique_ptr<Cache> cache_;
};

/// Evaluates one check. Precondition failures (non-convex input, budgets,
/// refinement guards, domain limits) become skipped results; an unregistered
/// id or parameter throws CheckSpecError.
CheckResult run_check(const std::string &check, CheckContext &ctx);
/// Throws CheckSpecError unless the id and its parameters are valid.
void validate_check(const std::string &check);
CheckResult run_check(const std::string &check, const FiniteSet &a,
                      const std::optional<FiniteSet> &b = std::nullopt);

/// Objective ratios shared with the extremal search.
double thm_sp_ratio(const FiniteSet &a);
double thm_csum_ratio(const FiniteSet &a);
double thm_cdiff_ratio(const FiniteSet &a);

} // namespace sumlab
