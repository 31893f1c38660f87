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

#ifndef GGEC_RNG_HPP
#define GGEC_RNG_HPP

#include <cstdint>

#include "ggec/math.hpp"

// Counter-based pseudo-random streams: the stream for (seed, index) is a
// pure function of the key, so generation order and threading cannot change
// a dataset. Draws use the splitmix64 finalizer over an incrementing
// counter. Samplers route through ggec::math, keeping datasets bit-stable
// per build.

namespace ggec {

namespace rng_detail {
inline std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
}
}  // namespace rng_detail

class IndexedRng {
public:
    IndexedRng(std::uint64_t seed, std::uint64_t index) {
        state_ = rng_detail::mix64(seed + 0x9E3779B97F4A7C15ULL);
        state_ = rng_detail::mix64(state_ ^ (index + 0xD6E8FEB86659FD93ULL));
    }

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        return rng_detail::mix64(state_);
    }

    // Uniform in [0, 1) with 53 random bits.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

    bool next_bool() { return (next_u64() & 1) != 0; }

    // Marsaglia polar method; the second variate is discarded to keep draws
    // a pure function of the counter position.
    double normal() {
        for (;;) {
            const double u = 2.0 * next_double() - 1.0;
            const double v = 2.0 * next_double() - 1.0;
            const double s = u * u + v * v;
            if (s >= 1.0 || s == 0.0) continue;
            return u * math::sqrt(-2.0 * math::log(s) / s);
        }
    }

    // Marsaglia-Tsang for shape >= 1, boosted by u^(1/a) below 1.
    double gamma(double shape) {
        if (shape < 1.0) {
            double u = next_double();
            while (u == 0.0) u = next_double();
            return gamma(shape + 1.0) * math::pow(u, 1.0 / shape);
        }
        const double d = shape - 1.0 / 3.0;
        const double c = 1.0 / math::sqrt(9.0 * d);
        for (;;) {
            double x;
            double v;
            do {
                x = normal();
                v = 1.0 + c * x;
            } while (v <= 0.0);
            v = v * v * v;
            const double u = next_double();
            if (u == 0.0) continue;
            if (u < 1.0 - 0.0331 * (x * x) * (x * x)) return d * v;
            if (math::log(u) < 0.5 * x * x + d * (1.0 - v + math::log(v))) return d * v;
        }
    }

    // Exact generalized Gaussian draw: |X| = sigma * G^(1/beta) with
    // G ~ Gamma(1/beta), sign by a fair bit.
    double ggd(double sigma, double beta) {
        const double g = gamma(1.0 / beta);
        const double magnitude = sigma * math::pow(g, 1.0 / beta);
        return next_bool() ? magnitude : -magnitude;
    }

private:
    std::uint64_t state_;
};

}  // namespace ggec

#endif  // GGEC_RNG_HPP
