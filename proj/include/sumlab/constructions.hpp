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
#include <vector>

#include "sumlab/energy.hpp"

namespace sumlab {

/// Default size ceiling for cubic-cost counts.
inline constexpr std::size_t kCubicBudget = 1000;

/// The logarithm written log|A| in the popular-sum threshold and the
/// refinement stopping rule. Natural log, used everywhere such a factor occurs.
double size_log(std::size_t m);

/// {x in A-A : delta_A(x) >= |A|^2 / (11 |A-A|)}, compared exactly.
FiniteSet popular_diffs(const FiniteSet &a);

/// {x in A : |(x - A) cap P| >= 2|A|/sqrt(11)}, tested as 11 c^2 >= 4 |A|^2.
FiniteSet rich_diff_elements(const FiniteSet &a, const FiniteSet &popular);

/// {y in X+X : sigma_X(y) >= |X|^2 / (8 |X+X| ln m)} with m the ambient size.
/// Borderline comparisons are settled with a 256-bit logarithm. Throws
/// DomainError when m < 3.
FiniteSet popular_sums(const FiniteSet &x, std::size_t ambient_size);

/// {x in X : 4 |(X + x) cap P| >= 3 |X|}.
FiniteSet rich_sum_elements(const FiniteSet &x, const FiniteSet &popular);

enum class StopReason { energy_criterion_met, iteration_guard, set_too_small };
const char *to_string(StopReason r);

struct RefinementTrace {
    std::vector<FiniteSet> iterates; ///< A_0 = A, A_{i+1} = rich sums of A_i.
    StopReason stop_reason = StopReason::iteration_guard;
};

struct Refinement {
    FiniteSet b;
    RefinementTrace trace;
};

/// Walks A_0 = A, A_{i+1} = R_A(A_i) and returns the first iterate B with
/// E_{12/7}(R_A(B)) >= E_{12/7}(B) / ln|A|. Stops after floor(ln|A|)
/// iterations (iteration_guard) or when the next iterate would have at most
/// |A|/2 elements (set_too_small); B is then the last iterate kept. Throws
/// DomainError when |A| < 3.
Refinement refine_to_b(const FiniteSet &a);

/// Members of the dyadic level [level, 2 level) of a representation function.
struct DyadicClass {
    std::int64_t level = 1;
    FiniteSet members;
    EnergyValue weighted_mass;
    std::size_t class_count = 0; ///< Number of nonempty levels considered.
};

/// Level maximising sum of count^k over its members (ties go to the smaller
/// level). Throws DomainError on an empty function.
DyadicClass dyadic_pigeonhole(const RepFn &f, const Exponent &k);

/// #{(r, a1, a2) in R_A x A^2 : r-a1, r-a2, a1-a2 in P}. Throws BudgetError
/// when |A| exceeds the budget.
std::int64_t triple_count_diff(const FiniteSet &a, std::size_t budget = kCubicBudget);

struct SumTriples {
    std::int64_t count = 0;          ///< |X|
    std::int64_t level = 1;          ///< Delta
    FiniteSet popular;               ///< P_A(B)
    FiniteSet rich;                  ///< R_A(B)
    FiniteSet level_set;             ///< P_Delta
};

/// #{(r1, r2, b) in R_A(B)^2 x B : r1+b, r2+b in P_A(B), r1-r2 in P_Delta},
/// with (Delta, P_Delta) the dyadic class of delta_{R_A(B)} at k = 12/7.
SumTriples triple_count_sum(const FiniteSet &b, std::size_t ambient_size, std::size_t budget = kCubicBudget);

} // namespace sumlab
