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
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "sumlab/finite_set.hpp"

namespace sumlab {

enum class RepOp { sum, diff, prod, ratio };

const char *to_string(RepOp op);
RepOp parse_rep_op(const std::string &text);

/// Representation function of a pair operation: for each x in A op B, the
/// number of ordered pairs (a, b) with a op b = x. The support is kept in
/// increasing order; counts()[i] belongs to value(i).
class RepFn {
  public:
    RepOp op() const { return op_; }
    std::size_t left_size() const { return left_size_; }
    std::size_t right_size() const { return right_size_; }

    /// |A op B|.
    std::size_t support_size() const { return counts_.size(); }
    std::span<const std::int64_t> counts() const { return counts_; }
    std::int64_t count(std::size_t i) const { return counts_[i]; }
    Rational value(std::size_t i) const;
    /// Zero when x is not in the support.
    std::int64_t count_of(const Rational &x) const;
    std::int64_t max_count() const;
    std::int64_t total_mass() const;
    FiniteSet support() const;

    /// Subset of the support selected by predicate on the count.
    template <class Pred> FiniteSet support_where(Pred &&pred) const {
        std::vector<Rational> out;
        for (std::size_t i = 0; i < counts_.size(); ++i) {
            if (pred(counts_[i])) out.push_back(value(i));
        }
        return FiniteSet::from_sorted_unique(std::move(out));
    }

    /// Support values over a common denominator; only present when every
    /// value fits an int64 after scaling.
    struct Scaled {
        mpz_class denominator;
        std::vector<std::int64_t> numerators;
    };

  private:
    friend RepFn rep_fn(const FiniteSet &, const FiniteSet &, RepOp);

    RepOp op_ = RepOp::sum;
    std::size_t left_size_ = 0;
    std::size_t right_size_ = 0;
    std::variant<Scaled, std::vector<Rational>> values_;
    std::vector<std::int64_t> counts_;
};

/// Throws DomainError for ratio when 0 is in B.
RepFn rep_fn(const FiniteSet &a, const FiniteSet &b, RepOp op);

/// A op B as a set.
FiniteSet pair_set(const FiniteSet &a, const FiniteSet &b, RepOp op);
/// |A op B| without materialising the elements.
std::size_t pair_set_size(const FiniteSet &a, const FiniteSet &b, RepOp op);

/// CSV with header "value,count"; values as "p/q".
void write_rep_csv(std::ostream &out, const RepFn &f);

} // namespace sumlab
