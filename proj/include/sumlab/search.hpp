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
#include <string>
#include <vector>

#include "sumlab/finite_set.hpp"

namespace sumlab {

enum class Objective { thm_sp, thm_csum, thm_cdiff };

const char *to_string(Objective o);
/// Throws CheckSpecError for an unknown name.
Objective parse_objective(const std::string &text);

/// Ratio minimised by the search; the convex objectives require a convex set.
double objective_ratio(Objective o, const FiniteSet &a);

struct SearchResult {
    FiniteSet best;
    double best_ratio = 0.0;
    /// Best ratio after each evaluation; non-increasing, one entry per
    /// evaluation including the start.
    std::vector<double> trajectory;
    std::size_t restarts = 0;
};

/// Hill climb over n-element integer sets in [1, 4n^2] with single-element
/// replacement moves, restarting from a random set after a run of
/// non-improving evaluations. The start is {1..n} for thm_sp and {j^2} for
/// the convex objectives, whose moves stay inside the convex sets. budget
/// counts objective evaluations. Throws DomainError when n < 4 or budget is 0.
SearchResult search_extremal(Objective objective, std::size_t n, std::size_t budget, std::uint64_t seed);

} // namespace sumlab
