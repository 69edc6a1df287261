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

#include "sumlab/detail/lattice.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <limits>

namespace sumlab::detail {

namespace {

constexpr std::size_t kMaxResidues = 32;

std::uint64_t mix64(std::uint64_t x) {
    x ^= x >> 31;
    x *= 0x7fb5d329728ea185ULL;
    x ^= x >> 27;
    x *= 0x81dadef4bc2dd44dULL;
    x ^= x >> 33;
    return x;
}

/// Primes just above 2^60, so sums of two residues stay below 2^62.
const std::array<std::uint64_t, kMaxResidues> &moduli() {
    static const std::array<std::uint64_t, kMaxResidues> primes = [] {
        std::array<std::uint64_t, kMaxResidues> out{};
        mpz_class p = mpz_class(1) << 60;
        for (auto &q : out) {
            mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
            q = p.get_ui();
        }
        return out;
    }();
    return primes;
}

struct Frame {
    mpz_class denominator = 1;
    std::vector<std::vector<mpz_class>> scaled;
    std::size_t max_bits = 0;
};

Frame build_frame(std::initializer_list<const FiniteSet *> sets) {
    Frame f;
    for (const FiniteSet *s : sets) {
        for (const auto &v : *s) mpz_lcm(f.denominator.get_mpz_t(), f.denominator.get_mpz_t(), v.den().get_mpz_t());
    }
    for (const FiniteSet *s : sets) {
        auto &out = f.scaled.emplace_back();
        out.reserve(s->size());
        for (const auto &v : *s) {
            out.push_back(v.num() * (f.denominator / v.den()));
            f.max_bits = std::max(f.max_bits, mpz_sizeinbase(out.back().get_mpz_t(), 2));
        }
    }
    return f;
}

std::vector<std::int64_t> as_int64(const std::vector<mpz_class> &v) {
    std::vector<std::int64_t> out;
    out.reserve(v.size());
    for (const auto &z : v) out.push_back(static_cast<std::int64_t>(z.get_si()));
    return out;
}

// ---- int64 membership -----------------------------------------------------

class BitmapIndex {
  public:
    BitmapIndex(const std::vector<std::int64_t> &z, std::int64_t lo, std::uint64_t span)
        : lo_(lo), span_(span), bits_((span + 63) / 64, 0) {
        for (auto v : z) {
            const auto off = static_cast<std::uint64_t>(v - lo_);
            bits_[off / 64] |= std::uint64_t{1} << (off % 64);
        }
    }
    bool contains(std::int64_t key) const {
        const auto off = static_cast<std::uint64_t>(key - lo_);
        return off < span_ && ((bits_[off / 64] >> (off % 64)) & 1U);
    }

  private:
    std::int64_t lo_;
    std::uint64_t span_;
    std::vector<std::uint64_t> bits_;
};

class HashIndex64 {
  public:
    explicit HashIndex64(const std::vector<std::int64_t> &z) {
        std::size_t cap = 16;
        while (cap < 2 * z.size()) cap *= 2;
        mask_ = cap - 1;
        slots_.assign(cap, kEmpty);
        for (auto v : z) {
            std::size_t h = mix64(static_cast<std::uint64_t>(v)) & mask_;
            while (slots_[h] != kEmpty && slots_[h] != v) h = (h + 1) & mask_;
            slots_[h] = v;
        }
    }
    bool contains(std::int64_t key) const {
        std::size_t h = mix64(static_cast<std::uint64_t>(key)) & mask_;
        for (;;) {
            const std::int64_t s = slots_[h];
            if (s == key) return true;
            if (s == kEmpty) return false;
            h = (h + 1) & mask_;
        }
    }

  private:
    // Scaled values are below 2^62 in magnitude, so this never collides.
    static constexpr std::int64_t kEmpty = std::numeric_limits<std::int64_t>::min();
    std::size_t mask_ = 0;
    std::vector<std::int64_t> slots_;
};

template <class Index, class Fn>
void scan_int64(const std::vector<std::int64_t> &xs, const std::vector<std::int64_t> &ys, bool subtract, bool upper,
                const Index &index, Fn &&fn) {
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const std::int64_t xi = xs[i];
        for (std::size_t j = upper ? i + 1 : 0; j < ys.size(); ++j) {
            if (index.contains(subtract ? xi - ys[j] : xi + ys[j])) fn(i, j);
        }
    }
}

// ---- residue membership ---------------------------------------------------

template <std::size_t W> using Residues = std::array<std::uint64_t, W>;

template <std::size_t W> std::vector<Residues<W>> encode(const std::vector<mpz_class> &values) {
    const auto &p = moduli();
    std::vector<Residues<W>> out(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        for (std::size_t k = 0; k < W; ++k) out[i][k] = mpz_fdiv_ui(values[i].get_mpz_t(), p[k]);
    }
    return out;
}

template <std::size_t W> class ResidueIndex {
  public:
    explicit ResidueIndex(std::vector<Residues<W>> z) : z_(std::move(z)) {
        std::size_t cap = 16;
        while (cap < 2 * z_.size()) cap *= 2;
        mask_ = cap - 1;
        slots_.assign(cap, Slot{0, -1});
        // Eight filter bits per slot keep false positives near 1/16.
        const unsigned filter_bits = static_cast<unsigned>(std::countr_zero(cap)) + 3;
        filter_shift_ = 64 - filter_bits;
        filter_.assign((std::size_t{1} << filter_bits) / 64 + 1, 0);
        for (std::size_t i = 0; i < z_.size(); ++i) {
            const std::uint64_t f = (z_[i][0] * kFilterMul) >> filter_shift_;
            filter_[f / 64] |= std::uint64_t{1} << (f % 64);
        }
        for (std::size_t i = 0; i < z_.size(); ++i) {
            std::size_t h = mix64(z_[i][0]) & mask_;
            while (slots_[h].index >= 0) h = (h + 1) & mask_;
            slots_[h] = Slot{z_[i][0], static_cast<std::int64_t>(i)};
        }
    }

    /// Probes on the first residue; rest(k) supplies the remaining residues
    /// only when the first one matches.
    template <class Rest> bool contains(std::uint64_t first, Rest &&rest) const {
        const std::uint64_t f = (first * kFilterMul) >> filter_shift_;
        if (((filter_[f / 64] >> (f % 64)) & 1U) == 0) return false;
        std::size_t h = mix64(first) & mask_;
        for (;;) {
            const Slot &s = slots_[h];
            if (s.index < 0) return false;
            if (s.first == first) {
                const auto &z = z_[static_cast<std::size_t>(s.index)];
                bool same = true;
                for (std::size_t k = 1; k < W && same; ++k) same = z[k] == rest(k);
                if (same) return true;
            }
            h = (h + 1) & mask_;
        }
    }

  private:
    struct Slot {
        std::uint64_t first;
        std::int64_t index;
    };
    static constexpr std::uint64_t kFilterMul = 0x9e3779b97f4a7c15ULL;
    std::vector<Residues<W>> z_;
    std::size_t mask_ = 0;
    std::vector<Slot> slots_;
    unsigned filter_shift_ = 0;
    std::vector<std::uint64_t> filter_;
};

template <std::size_t W, class Fn>
void scan_residues(const Frame &f, bool subtract, bool upper, Fn &&fn) {
    const auto &p = moduli();
    const auto xs = encode<W>(f.scaled[0]);
    const auto ys = encode<W>(f.scaled[1]);
    const ResidueIndex<W> index(encode<W>(f.scaled[2]));
    const auto combine = [&](std::uint64_t x, std::uint64_t y, std::size_t k) {
        if (subtract) return x >= y ? x - y : x + p[k] - y;
        const std::uint64_t s = x + y;
        return s >= p[k] ? s - p[k] : s;
    };
    std::vector<std::uint64_t> y0(ys.size());
    for (std::size_t j = 0; j < ys.size(); ++j) y0[j] = ys[j][0];
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const auto &xi = xs[i];
        for (std::size_t j = upper ? i + 1 : 0; j < ys.size(); ++j) {
            const auto rest = [&](std::size_t k) { return combine(xi[k], ys[j][k], k); };
            if (index.contains(combine(xi[0], y0[j], 0), rest)) fn(i, j);
        }
    }
}

template <class Fn> void scan_generic(const FiniteSet &x, const FiniteSet &y, bool subtract, bool upper, const FiniteSet &z, Fn &&fn) {
    for (std::size_t i = 0; i < x.size(); ++i) {
        for (std::size_t j = upper ? i + 1 : 0; j < y.size(); ++j) {
            if (z.contains(subtract ? x[i] - y[j] : x[i] + y[j])) fn(i, j);
        }
    }
}

/// Calls fn(i, j) for every pair with x_i +- y_j in z, in row-major order.
template <class Fn>
void visit_member_pairs(const FiniteSet &x, const FiniteSet &y, bool subtract, const FiniteSet &z, bool upper,
                        Fn &&fn) {
    if (x.empty() || y.empty() || z.empty()) return;
    Frame f = build_frame({&x, &y, &z});
    if (f.max_bits <= 61) {
        const auto xs = as_int64(f.scaled[0]);
        const auto ys = as_int64(f.scaled[1]);
        const auto zs = as_int64(f.scaled[2]);
        const std::int64_t lo = zs.front();
        const auto span = static_cast<std::uint64_t>(zs.back() - lo) + 1;
        if (span <= (std::uint64_t{1} << 28) || span <= 64 * zs.size()) {
            scan_int64(xs, ys, subtract, upper, BitmapIndex(zs, lo, span), fn);
        } else {
            scan_int64(xs, ys, subtract, upper, HashIndex64(zs), fn);
        }
        return;
    }
    const std::size_t need = (f.max_bits + 3 + 59) / 60;
    if (need <= 2) return scan_residues<2>(f, subtract, upper, fn);
    if (need <= 3) return scan_residues<3>(f, subtract, upper, fn);
    if (need <= 4) return scan_residues<4>(f, subtract, upper, fn);
    if (need <= 6) return scan_residues<6>(f, subtract, upper, fn);
    if (need <= 8) return scan_residues<8>(f, subtract, upper, fn);
    if (need <= 12) return scan_residues<12>(f, subtract, upper, fn);
    if (need <= 16) return scan_residues<16>(f, subtract, upper, fn);
    if (need <= 24) return scan_residues<24>(f, subtract, upper, fn);
    if (need <= kMaxResidues) return scan_residues<kMaxResidues>(f, subtract, upper, fn);
    scan_generic(x, y, subtract, upper, z, fn);
}

} // namespace

std::size_t BitMatrix::row_count(std::size_t i) const {
    std::size_t c = 0;
    for (auto w : row(i)) c += static_cast<std::size_t>(std::popcount(w));
    return c;
}

std::size_t popcount_and(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
    std::size_t c = 0;
    for (std::size_t k = 0; k < a.size(); ++k) c += static_cast<std::size_t>(std::popcount(a[k] & b[k]));
    return c;
}

std::size_t popcount_and(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b,
                         std::span<const std::uint64_t> c) {
    std::size_t n = 0;
    for (std::size_t k = 0; k < a.size(); ++k) n += static_cast<std::size_t>(std::popcount(a[k] & b[k] & c[k]));
    return n;
}

std::optional<Int64Image> int64_image(std::initializer_list<const FiniteSet *> sets, unsigned max_bits) {
    Frame f = build_frame(sets);
    if (f.max_bits > max_bits) return std::nullopt;
    Int64Image img;
    img.denominator = f.denominator;
    for (const auto &v : f.scaled) img.values.push_back(as_int64(v));
    return img;
}

BitMatrix pair_membership(const FiniteSet &x, const FiniteSet &y, bool subtract, const FiniteSet &z) {
    BitMatrix m(x.size(), y.size());
    visit_member_pairs(x, y, subtract, z, false, [&](std::size_t i, std::size_t j) { m.set(i, j); });
    return m;
}

std::int64_t count_pairs_in(const FiniteSet &x, const FiniteSet &y, bool subtract, const FiniteSet &z,
                            bool upper_only) {
    std::int64_t count = 0;
    visit_member_pairs(x, y, subtract, z, upper_only, [&](std::size_t, std::size_t) { ++count; });
    return count;
}

std::optional<std::int64_t> count_differences_dense(const FiniteSet &p, const FiniteSet &q, double max_word_ops) {
    if (p.empty() || q.empty()) return std::int64_t{0};
    auto img = int64_image({&p, &q}, 61);
    if (!img) return std::nullopt;
    const auto &pv = img->values[0];
    const auto &qv = img->values[1];
    const std::int64_t lo = pv.front();
    const auto span = static_cast<std::uint64_t>(pv.back() - lo) + 1;
    const std::uint64_t words = (span + 63) / 64;
    if (static_cast<double>(words) * static_cast<double>(qv.size()) > max_word_ops) return std::nullopt;

    std::vector<std::uint64_t> bits(words + 1, 0);
    for (const std::int64_t v : pv) {
        const auto off = static_cast<std::uint64_t>(v - lo);
        bits[off / 64] |= std::uint64_t{1} << (off % 64);
    }
    // Pairs with p1 - p2 = -s mirror those with p1 - p2 = s.
    std::int64_t count = 0;
    for (const std::int64_t d : qv) {
        const std::uint64_t s = d < 0 ? static_cast<std::uint64_t>(-d) : static_cast<std::uint64_t>(d);
        if (s >= span) continue;
        const std::uint64_t ws = s / 64;
        const unsigned bs = static_cast<unsigned>(s % 64);
        std::uint64_t c = 0;
        if (bs == 0) {
            for (std::uint64_t k = 0; k + ws < words; ++k) c += static_cast<std::uint64_t>(std::popcount(bits[k] & bits[k + ws]));
        } else {
            for (std::uint64_t k = 0; k + ws < words; ++k) {
                const std::uint64_t shifted = (bits[k + ws] >> bs) | (bits[k + ws + 1] << (64 - bs));
                c += static_cast<std::uint64_t>(std::popcount(bits[k] & shifted));
            }
        }
        count += static_cast<std::int64_t>(c);
    }
    return count;
}

void radix_sort(std::vector<std::int64_t> &keys) {
    const std::size_t n = keys.size();
    if (n < 2) return;
    if (n < 256) {
        std::sort(keys.begin(), keys.end());
        return;
    }
    constexpr std::uint64_t kBias = std::uint64_t{1} << 63;
    std::vector<std::uint64_t> a(n);
    std::uint64_t all_or = 0;
    std::uint64_t all_and = ~std::uint64_t{0};
    for (std::size_t i = 0; i < n; ++i) {
        a[i] = static_cast<std::uint64_t>(keys[i]) ^ kBias;
        all_or |= a[i];
        all_and &= a[i];
    }
    std::vector<std::uint64_t> b(n);
    std::vector<std::size_t> count(1 << 16);
    for (unsigned shift = 0; shift < 64; shift += 16) {
        // Digits identical across all keys leave the order unchanged.
        if ((((all_or ^ all_and) >> shift) & 0xFFFF) == 0) continue;
        std::fill(count.begin(), count.end(), 0);
        for (auto v : a) ++count[(v >> shift) & 0xFFFF];
        std::size_t sum = 0;
        for (auto &c : count) {
            const std::size_t t = c;
            c = sum;
            sum += t;
        }
        for (auto v : a) b[count[(v >> shift) & 0xFFFF]++] = v;
        a.swap(b);
    }
    for (std::size_t i = 0; i < n; ++i) keys[i] = static_cast<std::int64_t>(a[i] ^ kBias);
}

std::vector<std::int64_t> run_length(std::vector<std::int64_t> &sorted_keys) {
    std::vector<std::int64_t> counts;
    std::size_t out = 0;
    for (std::size_t i = 0; i < sorted_keys.size();) {
        std::size_t j = i + 1;
        while (j < sorted_keys.size() && sorted_keys[j] == sorted_keys[i]) ++j;
        sorted_keys[out++] = sorted_keys[i];
        counts.push_back(static_cast<std::int64_t>(j - i));
        i = j;
    }
    sorted_keys.resize(out);
    return counts;
}

} // namespace sumlab::detail
