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

#ifndef GGEC_GGD_HPP
#define GGEC_GGD_HPP

#include "ggec/math.hpp"

// Generalized Gaussian distribution G(mu, sigma, beta):
//
//   pdf(x) = beta / (2 sigma Gamma(1/beta)) * exp(-(|x-mu|/sigma)^beta)
//
// beta = 1 is a Laplacian of scale sigma, beta = 2 a Gaussian of variance
// sigma^2/2. The CDF follows from substituting u = (|x-mu|/sigma)^beta:
//
//   F(x) = 1/2 + sgn(x-mu)/2 * P(1/beta, (|x-mu|/sigma)^beta)
//
// with P the regularized lower incomplete gamma.

namespace ggec {

inline constexpr double kSigmaMin = 1e-3;
inline constexpr double kSigmaMax = 1e4;
inline constexpr double kBetaMin = 0.25;
inline constexpr double kBetaMax = 4.0;

namespace detail {
inline double clamp(double x, double lo, double hi) {
    // NaN lands on lo; constructors never produce NaN fields.
    return x < lo ? lo : (x > hi ? hi : x);
}
}  // namespace detail

struct GgdParams {
    double mu = 0.0;
    double sigma = 1.0;
    double beta = 2.0;

    GgdParams() = default;
    GgdParams(double mu_, double sigma_, double beta_)
        : mu(mu_),
          sigma(detail::clamp(sigma_, kSigmaMin, kSigmaMax)),
          beta(detail::clamp(beta_, kBetaMin, kBetaMax)) {}
};

// Caches the derived constants of one parameter triple so a table build
// pays for log_gamma(1/beta) once, not once per alphabet symbol.
class GgdEvaluator {
public:
    explicit GgdEvaluator(const GgdParams& p)
        : p_(p),
          a_(1.0 / p.beta),
          log_gamma_a_(math::log_gamma(1.0 / p.beta)),
          ln_coef_(math::log(p.beta) - math::kLn2 - math::log(p.sigma) - log_gamma_a_) {}

    const GgdParams& params() const { return p_; }

    double pdf(double x) const {
        const double z = math::abs(x - p_.mu) / p_.sigma;
        return math::exp(ln_coef_ - math::pow(z, p_.beta));
    }

    double cdf(double x) const {
        const double z = math::abs(x - p_.mu) / p_.sigma;
        if (z == 0.0) return 0.5;
        const double tail = 0.5 * tail_pair(z).lower;
        return x >= p_.mu ? 0.5 + tail : 0.5 - tail;
    }

    // Probability of [x, +inf); relatively accurate deep into the right
    // tail where 1 - cdf(x) would cancel to zero.
    double upper_tail(double x) const {
        if (x > p_.mu) return 0.5 * tail_pair((x - p_.mu) / p_.sigma).upper;
        return 0.5 + 0.5 * tail_pair((p_.mu - x) / p_.sigma).lower;
    }

    // Probability of (-inf, x]; relatively accurate deep into the left tail.
    double lower_tail(double x) const {
        if (x < p_.mu) return 0.5 * tail_pair((p_.mu - x) / p_.sigma).upper;
        return 0.5 + 0.5 * tail_pair((x - p_.mu) / p_.sigma).lower;
    }

    // log2 of the tail mass 0.5*Q(a, z^beta) from the leading continued-
    // fraction term, evaluated in the log domain. Fallback for rate
    // estimates when the tail itself underflows double range.
    double log2_tail_estimate(double z) const {
        const double u = math::pow(z, p_.beta);
        const double lnq = a_ * math::log(u) - u - log_gamma_a_ - math::log(u + 1.0 - a_);
        return lnq * math::kInvLn2 - 1.0;
    }

    // Probability of [lo, hi]. Intervals entirely inside one tail are
    // differenced in the survival form so that far-out masses keep relative
    // accuracy instead of rounding to zero.
    double interval_mass(double lo, double hi) const {
        if (!(hi > lo)) return 0.0;
        double mass;
        if (lo >= p_.mu) {
            mass = one_sided((lo - p_.mu) / p_.sigma, (hi - p_.mu) / p_.sigma);
        } else if (hi <= p_.mu) {
            mass = one_sided((p_.mu - hi) / p_.sigma, (p_.mu - lo) / p_.sigma);
        } else {
            const auto gl = tail_pair((p_.mu - lo) / p_.sigma);
            const auto gh = tail_pair((hi - p_.mu) / p_.sigma);
            mass = 0.5 * gl.lower + 0.5 * gh.lower;
        }
        return mass > 0.0 ? mass : 0.0;
    }

    // Both regularized-gamma tails at normalized distance z = |x - mu| /
    // sigma. Exposed so table builds can share one evaluation per interval
    // boundary between the two adjacent symbols.
    math::RegGammaPair tail(double z) const { return tail_pair(z); }

private:
    math::RegGammaPair tail_pair(double z) const {
        return math::reg_gamma_pair(a_, math::pow(z, p_.beta), log_gamma_a_);
    }

    // Mass between z_near and z_far (0 <= z_near <= z_far) on one side of mu.
    double one_sided(double z_near, double z_far) const {
        if (z_near == 0.0) return 0.5 * tail_pair(z_far).lower;
        const auto gn = tail_pair(z_near);
        const auto gf = tail_pair(z_far);
        if (gn.upper_is_native && gf.upper_is_native) return 0.5 * (gn.upper - gf.upper);
        return 0.5 * (gf.lower - gn.lower);
    }

    GgdParams p_;
    double a_;
    double log_gamma_a_;
    double ln_coef_;
};

inline double ggd_pdf(double x, const GgdParams& p) { return GgdEvaluator(p).pdf(x); }

inline double ggd_cdf(double x, const GgdParams& p) { return GgdEvaluator(p).cdf(x); }

}  // namespace ggec

#endif  // GGEC_GGD_HPP
