/*
Copyright 2026 the ggec authors
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

#ifndef GGEC_CDF_TABLE_HPP
#define GGEC_CDF_TABLE_HPP

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <utility>
#include <string>
#include <string_view>
#include <vector>

#include "ggec/intervals.hpp"

namespace ggec {

enum class CodingMode : std::uint8_t {
    kFixedGaussian = 0,   // sigma is a Gaussian standard deviation
    kFixedLaplacian = 1,  // sigma is a Laplacian scale
    kFixedGgd = 2,        // (sigma, beta) generalized Gaussian, unit intervals
    kDynamicGgd = 3,      // (sigma, beta, pi) with scaled center interval
    kPreliminary = 4,     // (mu, sigma) heuristic, heavy tail past sigma > 2
};

inline constexpr CodingMode kAllModes[] = {
    CodingMode::kFixedGaussian, CodingMode::kFixedLaplacian, CodingMode::kFixedGgd,
    CodingMode::kDynamicGgd,    CodingMode::kPreliminary,
};

inline std::string_view to_string(CodingMode mode) {
    switch (mode) {
        case CodingMode::kFixedGaussian: return "fixed-gaussian";
        case CodingMode::kFixedLaplacian: return "fixed-laplacian";
        case CodingMode::kFixedGgd: return "fixed-ggd";
        case CodingMode::kDynamicGgd: return "dynamic-ggd";
        case CodingMode::kPreliminary: return "preliminary";
    }
    throw std::invalid_argument("unknown coding mode value");
}

inline CodingMode mode_from_string(std::string_view name) {
    for (CodingMode m : kAllModes) {
        if (to_string(m) == name) return m;
    }
    throw std::invalid_argument("unknown coding mode: " + std::string(name));
}

// Finite signed symbol support for the arithmetic coder.
struct Alphabet {
    int min_sym = -255;
    int max_sym = 255;

    Alphabet() = default;
    Alphabet(int min_, int max_) : min_sym(min_), max_sym(max_) {
        if (min_sym >= max_sym) throw std::invalid_argument("alphabet: min must be below max");
        if (min_sym < -32768 || max_sym > 32767)
            throw std::invalid_argument("alphabet: bounds must fit 16-bit signed storage");
        if (size() > 65536 / 2)
            throw std::invalid_argument("alphabet: too large for 16-bit frequency total");
    }

    std::size_t size() const {
        return static_cast<std::size_t>(static_cast<long>(max_sym) - min_sym + 1);
    }
    bool contains(int s) const { return s >= min_sym && s <= max_sym; }
    std::size_t index_of(int s) const { return static_cast<std::size_t>(s - min_sym); }
    int symbol_at(std::size_t i) const { return min_sym + static_cast<int>(i); }
    int clamp(int s) const { return s < min_sym ? min_sym : (s > max_sym ? max_sym : s); }
};

inline bool operator==(const Alphabet& a, const Alphabet& b) {
    return a.min_sym == b.min_sym && a.max_sym == b.max_sym;
}

// Cumulative frequency table over an alphabet; cum has size()+1 entries,
// starts at 0, ends at exactly 65536, and is strictly increasing.
struct QuantizedCdf {
    static constexpr std::uint32_t kTotal = 65536;

    std::vector<std::uint32_t> cum;

    std::size_t size() const { return cum.empty() ? 0 : cum.size() - 1; }
    std::uint32_t freq(std::size_t i) const { return cum[i + 1] - cum[i]; }
};

inline bool operator==(const QuantizedCdf& a, const QuantizedCdf& b) { return a.cum == b.cum; }

// Every mode reduces to a generalized Gaussian plus an interval partition.
struct LikelihoodModel {
    GgdParams ggd;
    IntervalSpec spec;
};

inline LikelihoodModel effective_model(const SymbolParams& p, CodingMode mode) {
    const std::int64_t m = round_half_away(p.mu);
    switch (mode) {
        case CodingMode::kFixedGaussian:
            return {GgdParams(p.mu, p.sigma * math::kSqrt2, 2.0), {m, 1.0}};
        case CodingMode::kFixedLaplacian:
            return {GgdParams(p.mu, p.sigma, 1.0), {m, 1.0}};
        case CodingMode::kFixedGgd:
            return {GgdParams(p.mu, p.sigma, p.beta), {m, 1.0}};
        case CodingMode::kDynamicGgd:
            return {GgdParams(p.mu, p.sigma, p.beta), {m, delta_scale(p.pi, p.sigma)}};
        case CodingMode::kPreliminary:
            if (p.sigma <= 2.0) return {GgdParams(p.mu, p.sigma, 1.0), {m, 1.0}};
            return {GgdParams(p.mu, p.sigma, 0.5), {m, 0.5}};
    }
    throw std::invalid_argument("unknown coding mode value");
}

// Real (pre-quantization) per-symbol likelihoods over the alphabet. The two
// endpoint symbols absorb the remaining tail mass, so the vector sums to 1
// up to accumulated rounding. One gamma evaluation per interval boundary,
// shared by its two neighbors; values are bit-identical to the per-symbol
// interval_mass path.
inline std::vector<double> real_likelihoods(const SymbolParams& p, CodingMode mode,
                                            const Alphabet& alphabet) {
    const LikelihoodModel model = effective_model(p, mode);
    const GgdEvaluator g(model.ggd);
    const double mu = model.ggd.mu;
    const double sigma = model.ggd.sigma;
    const std::size_t n = alphabet.size();

    std::vector<double> zs(n + 1);  // signed normalized boundary positions
    std::vector<math::RegGammaPair> gp(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        const double b = i < n ? model.spec.interval(alphabet.symbol_at(i)).lo
                               : model.spec.interval(alphabet.max_sym).hi;
        zs[i] = (b - mu) / sigma;
        gp[i] = g.tail(math::abs(zs[i]));
    }

    std::vector<double> mass(n);
    for (std::size_t i = 0; i < n; ++i) {
        double m;
        if (zs[i] >= 0.0) {  // interval in the right tail
            m = gp[i].upper_is_native && gp[i + 1].upper_is_native
                    ? 0.5 * (gp[i].upper - gp[i + 1].upper)
                    : 0.5 * (gp[i + 1].lower - gp[i].lower);
        } else if (zs[i + 1] <= 0.0) {  // left tail
            m = gp[i].upper_is_native && gp[i + 1].upper_is_native
                    ? 0.5 * (gp[i + 1].upper - gp[i].upper)
                    : 0.5 * (gp[i].lower - gp[i + 1].lower);
        } else {  // straddles the mean
            m = 0.5 * gp[i].lower + 0.5 * gp[i + 1].lower;
        }
        mass[i] = m > 0.0 ? m : 0.0;
    }
    mass.front() += zs[0] < 0.0 ? 0.5 * gp[0].upper : 0.5 + 0.5 * gp[0].lower;
    mass.back() += zs[n] > 0.0 ? 0.5 * gp[n].upper : 0.5 + 0.5 * gp[n].lower;
    return mass;
}

// Likelihood of a single coded symbol under tail absorption, without
// building the whole vector.
inline double symbol_real_likelihood(const SymbolParams& p, CodingMode mode,
                                     const Alphabet& alphabet, int symbol) {
    const LikelihoodModel model = effective_model(p, mode);
    const GgdEvaluator g(model.ggd);
    const Interval iv = model.spec.interval(symbol);
    if (symbol == alphabet.min_sym) return g.lower_tail(iv.hi);
    if (symbol == alphabet.max_sym) return g.upper_tail(iv.lo);
    return g.interval_mass(iv.lo, iv.hi);
}

// Information content of one coded symbol under the real per-mode
// likelihood. Masses beyond double range are billed at the log-domain
// estimate of their interval's near-edge tail instead of +inf.
inline double symbol_estimate_bits(const SymbolParams& p, CodingMode mode,
                                   const Alphabet& alphabet, int symbol) {
    const double mass = symbol_real_likelihood(p, mode, alphabet, symbol);
    if (mass > 0.0) return -(math::log(mass) * math::kInvLn2);
    const LikelihoodModel model = effective_model(p, mode);
    const GgdEvaluator g(model.ggd);
    const Interval iv = model.spec.interval(symbol);
    const double near_edge = symbol > model.spec.m ? iv.lo : iv.hi;
    return -g.log2_tail_estimate(math::abs(near_edge - model.ggd.mu) / model.ggd.sigma);
}

// Largest-remainder apportionment of the real masses into integer
// frequencies summing to exactly 65536 with a floor of one per symbol.
// Ties on remainders go to the smaller symbol; floor repairs take units
// from the currently largest frequency (smaller symbol on ties).
inline QuantizedCdf build_cdf_table(const SymbolParams& p, CodingMode mode,
                                    const Alphabet& alphabet) {
    const std::vector<double> mass = real_likelihoods(p, mode, alphabet);
    const std::size_t n = mass.size();
    const double total = std::accumulate(mass.begin(), mass.end(), 0.0);
    if (!(total > 0.0)) throw math::numeric_error("build_cdf_table: degenerate mass vector");

    std::vector<std::uint32_t> freq(n);
    std::vector<double> remainder(n);
    std::uint64_t assigned = 0;
    const double scale = static_cast<double>(QuantizedCdf::kTotal) / total;
    for (std::size_t i = 0; i < n; ++i) {
        const double target = mass[i] * scale;
        const auto base = static_cast<std::uint32_t>(target);
        freq[i] = base;
        remainder[i] = target - static_cast<double>(base);
        assigned += base;
    }

    const auto by_remainder = [&](std::uint32_t a, std::uint32_t b) {
        if (remainder[a] != remainder[b]) return remainder[a] > remainder[b];
        return a < b;
    };
    const auto deficit = static_cast<std::size_t>(QuantizedCdf::kTotal - assigned);
    std::vector<std::uint32_t> order(n);
    std::iota(order.begin(), order.end(), 0u);
    if (deficit > 0 && deficit < n)
        std::nth_element(order.begin(), order.begin() + (deficit - 1), order.end(), by_remainder);
    for (std::size_t i = 0; i < deficit; ++i) freq[order[i]] += 1;

    // floor repair: zeros become 1, each unit taken from the currently
    // largest frequency (smaller symbol wins ties); the donor never reaches
    // zero because the total is at least twice the alphabet size
    std::priority_queue<std::pair<std::uint32_t, std::uint32_t>> donors;
    for (std::size_t i = 0; i < n; ++i) {
        if (freq[i] > 1)
            donors.emplace(freq[i], static_cast<std::uint32_t>(n - 1 - i));
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (freq[i] != 0) continue;
        auto [f, rev] = donors.top();
        donors.pop();
        const std::size_t donor = n - 1 - rev;
        freq[donor] -= 1;
        freq[i] = 1;
        if (freq[donor] > 1) donors.emplace(freq[donor], rev);
    }

    QuantizedCdf cdf;
    cdf.cum.resize(n + 1);
    cdf.cum[0] = 0;
    for (std::size_t i = 0; i < n; ++i) cdf.cum[i + 1] = cdf.cum[i] + freq[i];
    return cdf;
}

inline std::uint64_t fnv1a64(const std::uint8_t* data, std::size_t n) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (std::size_t i = 0; i < n; ++i) {
        h ^= data[i];
        h *= 0x100000001b3ULL;
    }
    return h;
}

// FNV-1a over the little-endian serialized cumulative array; the golden
// determinism checks pin these values per build.
inline std::uint64_t table_hash(const QuantizedCdf& cdf) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (std::uint32_t v : cdf.cum) {
        for (int b = 0; b < 4; ++b) {
            h ^= static_cast<std::uint8_t>(v >> (8 * b));
            h *= 0x100000001b3ULL;
        }
    }
    return h;
}

}  // namespace ggec

#endif  // GGEC_CDF_TABLE_HPP
