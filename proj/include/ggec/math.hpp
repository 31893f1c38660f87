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

#ifndef GGEC_MATH_HPP
#define GGEC_MATH_HPP

#include <bit>
#include <cstdint>
#include <limits>
#include <stdexcept>

// Self-contained scalar kernels for everything that feeds probability
// tables. Platform libm implementations differ in last-bit behavior between
// systems, which would break golden-table reproducibility, so exp/log/pow
// and the gamma family are implemented here and used exclusively on those
// paths. Build with -ffp-contract=off so no FMA contraction sneaks in.

namespace ggec::math {

struct numeric_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline constexpr double kLn2 = 0.693147180559945309417232121458;
inline constexpr double kInvLn2 = 1.44269504088896340735992468100;
inline constexpr double kSqrt2 = 1.41421356237309504880168872421;
inline constexpr double kHalfLn2Pi = 0.918938533204672741780329736406;  // ln(2*pi)/2
inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Cody-Waite split of ln(2); the hi part has 20 trailing zero bits so
// k*kLn2Hi is exact for |k| < 2^20.
inline constexpr double kLn2Hi = 6.93147180369123816490e-01;
inline constexpr double kLn2Lo = 1.90821492927058770002e-10;

inline double abs(double x) { return x < 0.0 ? -x : x; }

// 2^k for k in [-1074, 1023], exact.
inline double pow2i(int k) {
    if (k >= -1022) return std::bit_cast<double>(static_cast<std::uint64_t>(k + 1023) << 52);
    return std::bit_cast<double>(std::uint64_t{1} << (k + 1074));
}

// exp(x) by ln2 range reduction and a degree-15 Taylor kernel on
// |r| <= ln2/2; last term ~1e-19 relative.
inline double exp(double x) {
    if (x != x) return x;
    if (x > 709.782712893384) return kInf;
    if (x < -745.133219101941) return 0.0;

    const double fk = x * kInvLn2;
    const int k = static_cast<int>(fk + (fk >= 0.0 ? 0.5 : -0.5));
    const double dk = static_cast<double>(k);
    const double r = (x - dk * kLn2Hi) - dk * kLn2Lo;

    double p = 1.0 / 1307674368000.0;  // 1/15!
    p = p * r + 1.0 / 87178291200.0;
    p = p * r + 1.0 / 6227020800.0;
    p = p * r + 1.0 / 479001600.0;
    p = p * r + 1.0 / 39916800.0;
    p = p * r + 1.0 / 3628800.0;
    p = p * r + 1.0 / 362880.0;
    p = p * r + 1.0 / 40320.0;
    p = p * r + 1.0 / 5040.0;
    p = p * r + 1.0 / 720.0;
    p = p * r + 1.0 / 120.0;
    p = p * r + 1.0 / 24.0;
    p = p * r + 1.0 / 6.0;
    p = p * r + 0.5;
    p = p * r + 1.0;
    p = p * r + 1.0;

    if (k >= 1024) return p * pow2i(1023) * 2.0;
    if (k <= -1023) return (p * pow2i(-1000)) * pow2i(k + 1000);
    return p * pow2i(k);
}

// ln(x) via mantissa/exponent split and the atanh series in
// t = (m-1)/(m+1) with m folded into [sqrt2/2, sqrt2].
inline double log(double x) {
    if (x != x) return x;
    if (x < 0.0) throw std::domain_error("log: negative argument");
    if (x == 0.0) return -kInf;
    if (x == kInf) return x;

    std::uint64_t u = std::bit_cast<std::uint64_t>(x);
    int e = 0;
    if (u < (std::uint64_t{1} << 52)) {  // subnormal
        x *= pow2i(54);
        e -= 54;
        u = std::bit_cast<std::uint64_t>(x);
    }
    e += static_cast<int>(u >> 52) - 1023;
    double m = std::bit_cast<double>((u & 0x000FFFFFFFFFFFFFULL) | (std::uint64_t{1023} << 52));
    if (m > kSqrt2) {
        m *= 0.5;
        e += 1;
    }

    const double t = (m - 1.0) / (m + 1.0);
    const double w = t * t;
    double s = 2.0 / 21.0;
    s = s * w + 2.0 / 19.0;
    s = s * w + 2.0 / 17.0;
    s = s * w + 2.0 / 15.0;
    s = s * w + 2.0 / 13.0;
    s = s * w + 2.0 / 11.0;
    s = s * w + 2.0 / 9.0;
    s = s * w + 2.0 / 7.0;
    s = s * w + 2.0 / 5.0;
    s = s * w + 2.0 / 3.0;
    s = s * w + 2.0;
    const double lnm = t * s;

    const double de = static_cast<double>(e);
    return de * kLn2Hi + (de * kLn2Lo + lnm);
}

// IEEE 754 square root is a correctly-rounded basic operation like + and *,
// so the hardware instruction is bit-identical on every compliant platform
// and safe for table-feeding paths.
inline double sqrt(double x) {
    if (x != x) return x;
    if (x < 0.0) throw std::domain_error("sqrt: negative argument");
    return __builtin_sqrt(x);
}

inline double pow(double x, double y) {
    if (y == 0.0) return 1.0;
    if (x == 0.0) {
        if (y > 0.0) return 0.0;
        throw std::domain_error("pow: zero base with non-positive exponent");
    }
    if (x < 0.0) throw std::domain_error("pow: negative base");
    if (y == 1.0) return x;
    if (y == 2.0) return x * x;
    if (y == 0.5) return sqrt(x);
    return exp(y * log(x));
}

// ln Gamma(a) for a > 0, Lanczos g=7 n=9. Recurrence lifts a < 0.5 into the
// well-conditioned zone; absolute error well under 1e-13 on [0.25, 20].
inline double log_gamma(double a) {
    if (!(a > 0.0)) throw std::domain_error("log_gamma: argument must be positive");
    if (a < 0.5) return log_gamma(a + 1.0) - log(a);

    static constexpr double c[9] = {
        0.99999999999980993,
        676.5203681218851,
        -1259.1392167224028,
        771.32342877765313,
        -176.61502916214059,
        12.507343278686905,
        -0.13857109526572012,
        9.9843695780195716e-6,
        1.5056327351493116e-7,
    };
    double acc = c[0];
    for (int i = 1; i < 9; ++i) acc += c[i] / (a - 1.0 + i);
    const double t = a + 6.5;  // a + g - 0.5
    return kHalfLn2Pi + (a - 0.5) * log(t) - t + log(acc);
}

// Regularized incomplete gamma, both tails from one evaluation.
// `upper_is_native` marks that Q came straight from the continued fraction
// and is therefore relatively accurate even when tiny; interval masses in
// far tails difference two native-Q values to dodge 1-1 cancellation.
struct RegGammaPair {
    double lower;  // P(a, x)
    double upper;  // Q(a, x) = 1 - P(a, x)
    bool upper_is_native;
};

namespace detail {

inline RegGammaPair reg_gamma_pair_impl(double a, double x, double log_gamma_a) {
    if (!(a > 0.0)) throw std::domain_error("reg_gamma: a must be positive");
    if (!(x >= 0.0)) throw std::domain_error("reg_gamma: x must be non-negative");
    if (x == 0.0) return {0.0, 1.0, false};

    constexpr int kMaxIter = 500;
    constexpr double kTol = 1e-14;

    // Integer shape (a = 1/beta for beta in {1, 1/2, 1/3, 1/4}) has the
    // exact finite form Q(a, x) = e^{-x} * sum_{k<a} x^k / k!; these are
    // the hot heavy-tail paths, reduced to a single exp.
    if (a == 1.0 || a == 2.0 || a == 3.0 || a == 4.0) {
        double poly = 1.0;
        if (a >= 2.0) poly += x;
        if (a >= 3.0) poly += 0.5 * x * x;
        if (a == 4.0) poly += x * x * x * (1.0 / 6.0);
        double q = exp(-x) * poly;
        if (q > 1.0) q = 1.0;  // the product can round one ulp past 1 near x = 0
        return {1.0 - q, q, true};
    }

    const double lnpre = a * log(x) - x - log_gamma_a;
    if (lnpre < -746.0) {
        // Prefactor underflows: the tail on the short side is below the
        // smallest subnormal.
        if (x >= a + 1.0) return {1.0, 0.0, true};
        return {0.0, 1.0, false};
    }

    if (x < a + 1.0) {
        // Series for P: sum_{n>=0} x^n / (a (a+1) ... (a+n)).
        double ap = a;
        double del = 1.0 / a;
        double sum = del;
        for (int i = 0; i < kMaxIter; ++i) {
            ap += 1.0;
            del *= x / ap;
            sum += del;
            if (abs(del) < abs(sum) * kTol) {
                double p = sum * exp(lnpre);
                if (p > 1.0) p = 1.0;
                return {p, 1.0 - p, false};
            }
        }
        throw numeric_error("reg_gamma: series did not converge in 500 terms");
    }

    // Modified Lentz continued fraction for Q.
    constexpr double kFpMin = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / kFpMin;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= kMaxIter; ++i) {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (abs(d) < kFpMin) d = kFpMin;
        c = b + an / c;
        if (abs(c) < kFpMin) c = kFpMin;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (abs(del - 1.0) < kTol) {
            double q = exp(lnpre) * h;
            if (q > 1.0) q = 1.0;
            return {1.0 - q, q, true};
        }
    }
    throw numeric_error("reg_gamma: continued fraction did not converge in 500 terms");
}

}  // namespace detail

inline RegGammaPair reg_gamma_pair(double a, double x, double log_gamma_a) {
    return detail::reg_gamma_pair_impl(a, x, log_gamma_a);
}

inline RegGammaPair reg_gamma_pair(double a, double x) {
    return detail::reg_gamma_pair_impl(a, x, log_gamma(a));
}

inline double reg_gamma_lower(double a, double x) { return reg_gamma_pair(a, x).lower; }

inline double reg_gamma_upper(double a, double x) { return reg_gamma_pair(a, x).upper; }

}  // namespace ggec::math

#endif  // GGEC_MATH_HPP
