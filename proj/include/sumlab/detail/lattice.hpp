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

// Exact integer images of rational sets over a shared denominator, and the
// pairwise-membership kernels built on them. Everything here is exact: a
// common denominator L turns each element x into the integer x*L, held as an
// int64 when it fits and otherwise as residues modulo enough 61-bit primes
// that the Chinese remainder bound covers every compared value.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

#include "sumlab/finite_set.hpp"

namespace sumlab::detail {

/// Dense row-major bit matrix.
class BitMatrix {
  public:
    BitMatrix() = default;
    BitMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), words_((cols + 63) / 64), bits_(rows * words_, 0) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t words_per_row() const { return words_; }

    void set(std::size_t i, std::size_t j) { bits_[i * words_ + j / 64] |= std::uint64_t{1} << (j % 64); }
    bool test(std::size_t i, std::size_t j) const { return (bits_[i * words_ + j / 64] >> (j % 64)) & 1U; }
    std::span<const std::uint64_t> row(std::size_t i) const { return {bits_.data() + i * words_, words_}; }
    std::size_t row_count(std::size_t i) const;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::size_t words_ = 0;
    std::vector<std::uint64_t> bits_;
};

std::size_t popcount_and(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b);
std::size_t popcount_and(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b,
                         std::span<const std::uint64_t> c);

/// Sets scaled by their common denominator, each element an int64.
struct Int64Image {
    mpz_class denominator;
    std::vector<std::vector<std::int64_t>> values;
};

/// Common-denominator image when every scaled magnitude is below 2^max_bits.
std::optional<Int64Image> int64_image(std::initializer_list<const FiniteSet *> sets, unsigned max_bits);

/// Bit matrix with (i, j) set iff x_i + y_j (or x_i - y_j) lies in z.
BitMatrix pair_membership(const FiniteSet &x, const FiniteSet &y, bool subtract, const FiniteSet &z);

/// #{(i, j) : x_i +- y_j in z}. With upper_only, only pairs i < j are visited
/// (x and y must then be the same set).
std::int64_t count_pairs_in(const FiniteSet &x, const FiniteSet &y, bool subtract, const FiniteSet &z,
                            bool upper_only = false);

/// #{(p1, p2, q) : p1 - p2 = q} by correlating the bitmap of P with itself,
/// at |Q| * span(P) / 64 word operations. Empty when the values do not fit an
/// int64 image or the work would exceed max_word_ops.
std::optional<std::int64_t> count_differences_dense(const FiniteSet &p, const FiniteSet &q, double max_word_ops);

/// Ascending LSD radix sort.
void radix_sort(std::vector<std::int64_t> &keys);

/// Run-length encodes a sorted vector in place; returns the multiplicities.
std::vector<std::int64_t> run_length(std::vector<std::int64_t> &sorted_keys);

} // namespace sumlab::detail
