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
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sumlab/family.hpp"
#include "sumlab/verifier.hpp"

namespace sumlab {

struct ScanRow {
    std::string family; ///< Canonical label, scan seed applied.
    std::size_t n = 0;
    std::string check_id;
    double lhs = 0.0;
    double rhs = 0.0;
    double ratio = 0.0;
    Verdict verdict = Verdict::skipped;
    std::string verdict_text;
    double elapsed_s = 0.0;
};

struct ScanOptions {
    std::uint64_t seed = 0;
    unsigned jobs = 1;
    /// Record wall time per cell. Off by default so output is reproducible.
    bool timing = false;
    /// Second set for two-set checks, drawn from this family at the same n.
    std::optional<Family> partner;
    std::optional<std::size_t> budget;
};

/// Adds the scan seed to the seed of a randomised family; deterministic
/// families are returned unchanged.
Family with_seed_offset(const Family &family, std::uint64_t offset);

/// Evaluates every (family, n, check) cell. Rows are ordered by family (input
/// order), then n (ascending), then check (input order), whatever the number
/// of workers. Cell errors become skipped rows. Throws CheckSpecError up
/// front for an invalid check.
std::vector<ScanRow> run_scan(const std::vector<Family> &families, const std::vector<std::size_t> &sizes,
                              const std::vector<std::string> &checks, const ScanOptions &options = {});

/// True when any assert-type row failed.
bool has_failure(const std::vector<ScanRow> &rows);

/// Header: family,n,check_id,lhs,rhs,ratio,verdict,elapsed_s.
void write_scan_csv(std::ostream &out, const std::vector<ScanRow> &rows);
/// Array of objects with the CSV fields.
void write_scan_json(std::ostream &out, const std::vector<ScanRow> &rows);

/// Shortest text that reads back as the same double ("inf", "-inf", "nan"
/// for non-finite values).
std::string format_double(double v);
/// RFC 4180 quoting when the field holds a comma, quote or newline.
std::string csv_field(const std::string &text);

} // namespace sumlab
