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

#ifndef GGEC_INTERVALS_HPP
#define GGEC_INTERVALS_HPP

#include <cstdint>

#include "ggec/ggd.hpp"

// Likelihood-interval partitions. The real line is tiled into one interval
// per integer: the center integer m = round(mu) owns [m - d/2, m + d/2] and
// every other integer owns a unit interval translated toward the center by
// (1 - d)/2. d = 1 recovers the plain half-open unit neighborhoods.

namespace ggec {

inline constexpr double kDeltaMax = 64.0;

inline constexpr double kPiMin = 1e-4;
inline constexpr double kPiMax = 1.0 - 1e-4;

// Nearest integer, ties away from zero. The fractional part of a double
// with |x| below 2^52 is exact, so the tie comparison is exact as well.
// Saturates far outside the symbol range, where doubles are integral
// anyway, to keep the cast defined on hostile inputs.
inline std::int64_t round_half_away(double x) {
    constexpr double kCap = 9.0e15;
    if (x >= kCap) return static_cast<std::int64_t>(kCap);
    if (x <= -kCap) return -static_cast<std::int64_t>(kCap);
    if (x >= 0.0) {
        const auto t = static_cast<std::int64_t>(x);
        return t + (x - static_cast<double>(t) >= 0.5 ? 1 : 0);
    }
    const auto t = static_cast<std::int64_t>(x);
    return t - (static_cast<double>(t) - x >= 0.5 ? 1 : 0);
}

// Width multiplier for the center interval. Interpolates between the
// squeeze bound 1/(1+sigma) at pi = 0 and the stretch bound 1/(1-e^-sigma)
// at pi = 1, passing through 1 at pi = 1/2; capped at 64 because the
// stretch bound diverges as sigma -> 0.
inline double delta_scale(double pi, double sigma) {
    double d;
    if (pi >= 0.5) {
        const double stretch = 1.0 / (1.0 - math::exp(-sigma));
        d = 1.0 + (2.0 * pi - 1.0) * (stretch - 1.0);
    } else {
        const double squeeze = 1.0 / (1.0 + sigma);
        d = 1.0 - (1.0 - 2.0 * pi) * (1.0 - squeeze);
    }
    return d < kDeltaMax ? d : kDeltaMax;
}

struct Interval {
    double lo;
    double hi;
};

// A concrete partition: center m with scale delta. Endpoints are computed
// so that hi(n) and lo(n+1) are the same double bit for bit, which makes
// alphabet masses telescope exactly.
struct IntervalSpec {
    std::int64_t m = 0;
    double delta = 1.0;

    Interval interval(std::int64_t n) const {
        const double h = 0.5 * delta;
        if (n == m) return {static_cast<double>(m) - h, static_cast<double>(m) + h};
        if (n > m) return {static_cast<double>(n - 1) + h, static_cast<double>(n) + h};
        return {static_cast<double>(n) - h, static_cast<double>(n + 1) - h};
    }

    // Boundary between n-1 and n.
    double lower_boundary(std::int64_t n) const { return interval(n).lo; }
};

inline Interval interval_of(std::int64_t n, double mu, double delta) {
    return IntervalSpec{round_half_away(mu), delta}.interval(n);
}

// Per-symbol entropy-model side information. pi estimates P(y = round(mu)).
struct SymbolParams {
    double mu = 0.0;
    double sigma = 1.0;
    double beta = 2.0;
    double pi = 0.5;

    SymbolParams() = default;
    SymbolParams(double mu_, double sigma_, double beta_, double pi_)
        : mu(mu_),
          sigma(detail::clamp(sigma_, kSigmaMin, kSigmaMax)),
          beta(detail::clamp(beta_, kBetaMin, kBetaMax)),
          pi(detail::clamp(pi_, kPiMin, kPiMax)) {}

    // Stored parameters are 32-bit floats on disk; this is the promotion
    // point that fixes the determinism boundary.
    static SymbolParams from_f32(float mu_, float sigma_, float beta_, float pi_) {
        return SymbolParams(static_cast<double>(mu_), static_cast<double>(sigma_),
                            static_cast<double>(beta_), static_cast<double>(pi_));
    }

    GgdParams ggd() const { return GgdParams(mu, sigma, beta); }
};

inline double symbol_likelihood(std::int64_t n, const SymbolParams& p, double delta) {
    const Interval iv = interval_of(n, p.mu, delta);
    return GgdEvaluator(p.ggd()).interval_mass(iv.lo, iv.hi);
}

// Heuristic likelihood for a model that only carries (mu, sigma): Laplacian
// unit intervals while sigma <= 2; past that, a heavy-tail G(mu, sigma, 0.5)
// with the center neighborhood halved and every other interval shifted a
// quarter toward the center. |n - mu| = 1/2 exactly goes to the center
// branch. The quarter offsets are dyadic, so for non-tie mu this coincides
// bit for bit with the delta = 1/2 partition.
inline double preliminary_likelihood(std::int64_t n, double mu, double sigma) {
    const double nd = static_cast<double>(n);
    if (sigma <= 2.0) {
        return GgdEvaluator(GgdParams(mu, sigma, 1.0)).interval_mass(nd - 0.5, nd + 0.5);
    }
    const GgdEvaluator g(GgdParams(mu, sigma, 0.5));
    if (math::abs(nd - mu) <= 0.5) return g.interval_mass(nd - 0.25, nd + 0.25);
    const double offset = mu > nd ? 0.25 : -0.25;
    return g.interval_mass(nd + offset - 0.5, nd + offset + 0.5);
}

}  // namespace ggec

#endif  // GGEC_INTERVALS_HPP
