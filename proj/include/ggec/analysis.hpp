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

#ifndef GGEC_ANALYSIS_HPP
#define GGEC_ANALYSIS_HPP

#include <algorithm>
#include <cstdio>
#include <string>
#include <vector>

#include "ggec/codec.hpp"

// Numeric experiments over the entropy models: the optimal-scale
// relationship sigma_opt(r) ~ r and per-mode bitrate comparisons.

namespace ggec {

enum class Family : std::uint8_t { kGaussian, kLaplacian, kGgd };
enum class Objective : std::uint8_t { kPdf, kIntervalMass };

inline std::string_view to_string(Family f) {
    switch (f) {
        case Family::kGaussian: return "gaussian";
        case Family::kLaplacian: return "laplacian";
        case Family::kGgd: return "ggd";
    }
    throw std::invalid_argument("unknown family value");
}

inline Family family_from_string(std::string_view name) {
    for (Family f : {Family::kGaussian, Family::kLaplacian, Family::kGgd})
        if (to_string(f) == name) return f;
    throw std::invalid_argument("unknown family: " + std::string(name));
}

inline std::string_view to_string(Objective o) {
    switch (o) {
        case Objective::kPdf: return "pdf";
        case Objective::kIntervalMass: return "interval-mass";
    }
    throw std::invalid_argument("unknown objective value");
}

inline Objective objective_from_string(std::string_view name) {
    for (Objective o : {Objective::kPdf, Objective::kIntervalMass})
        if (to_string(o) == name) return o;
    throw std::invalid_argument("unknown objective: " + std::string(name));
}

struct SigmaOptQuery {
    double residual = 1.0;  // |y - mu|
    Family family = Family::kGaussian;
    double ggd_beta = 1.0;  // only read for Family::kGgd
    Objective objective = Objective::kIntervalMass;
};

namespace analysis_detail {

inline GgdParams family_params(const SigmaOptQuery& q, double sigma) {
    switch (q.family) {
        case Family::kGaussian: return GgdParams(0.0, sigma * math::kSqrt2, 2.0);
        case Family::kLaplacian: return GgdParams(0.0, sigma, 1.0);
        case Family::kGgd: return GgdParams(0.0, sigma, q.ggd_beta);
    }
    throw std::invalid_argument("unknown family value");
}

inline double objective_value(const SigmaOptQuery& q, double sigma) {
    const GgdEvaluator g(family_params(q, sigma));
    if (q.objective == Objective::kPdf) return g.pdf(q.residual);
    return g.interval_mass(q.residual - 0.5, q.residual + 0.5);
}

// Golden-section maximization of a unimodal objective. Preferred over
// derivative root-finding: the objective's derivative is numerically noisy
// as sigma -> 0.
template <typename F>
double golden_section_max(F&& f, double lo, double hi, double tol) {
    constexpr double kInvPhi = 0.6180339887498948482;
    double a = lo;
    double b = hi;
    double x1 = b - kInvPhi * (b - a);
    double x2 = a + kInvPhi * (b - a);
    double f1 = f(x1);
    double f2 = f(x2);
    while (b - a > tol) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + kInvPhi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - kInvPhi * (b - a);
            f1 = f(x1);
        }
    }
    return 0.5 * (a + b);
}

}  // namespace analysis_detail

// argmax over sigma in [1e-3, 100] of the chosen objective at the given
// residual, to 1e-6 in sigma. Residuals below 1 have no interior argmax for
// the interval-mass objective (the mass is maximized as sigma -> 0).
inline double sigma_opt_numeric(const SigmaOptQuery& q) {
    if (!(q.residual > 0.0))
        throw std::domain_error("sigma_opt_numeric: residual must be positive");
    if (q.objective == Objective::kIntervalMass && q.residual < 1.0)
        throw std::domain_error(
            "sigma_opt_numeric: interval-mass objective needs residual >= 1");
    return analysis_detail::golden_section_max(
        [&](double sigma) { return analysis_detail::objective_value(q, sigma); }, 1e-3, 100.0,
        1e-6);
}

// One report per mode, rows ordered by mode enum value: real and quantized
// estimates plus the actual range-coder payload size.
inline std::vector<RateReport> compare_modes(std::span<const LatentRecord> records,
                                             std::vector<CodingMode> modes,
                                             const Alphabet& alphabet) {
    std::sort(modes.begin(), modes.end(), [](CodingMode a, CodingMode b) {
        return static_cast<std::uint8_t>(a) < static_cast<std::uint8_t>(b);
    });
    modes.erase(std::unique(modes.begin(), modes.end()), modes.end());
    std::vector<RateReport> reports;
    reports.reserve(modes.size());
    for (CodingMode mode : modes) {
        std::vector<std::uint8_t> payload;
        reports.push_back(code_stream(records, mode, alphabet, &payload));
    }
    return reports;
}

inline std::string reports_to_csv(std::span<const RateReport> reports) {
    std::string out = "mode,estimated_bits,coded_bytes,bits_per_symbol\n";
    char line[160];
    for (const RateReport& r : reports) {
        std::snprintf(line, sizeof(line), "%s,%.6f,%llu,%.6f\n",
                      std::string(to_string(r.mode)).c_str(), r.estimated_bits,
                      static_cast<unsigned long long>(r.coded_bytes), r.bits_per_symbol);
        out += line;
    }
    return out;
}

struct SigmaOptRow {
    double residual;
    Family family;
    Objective objective;
    double sigma_opt;
};

inline std::vector<SigmaOptRow> sigma_opt_sweep(Family family, Objective objective, double r_min,
                                                double r_max, std::size_t steps,
                                                double ggd_beta = 1.0) {
    if (steps < 1) throw std::invalid_argument("sigma_opt_sweep: steps must be >= 1");
    if (!(r_min <= r_max)) throw std::invalid_argument("sigma_opt_sweep: empty residual range");
    std::vector<SigmaOptRow> rows;
    rows.reserve(steps);
    for (std::size_t i = 0; i < steps; ++i) {
        const double t = steps == 1 ? 0.0 : static_cast<double>(i) / (steps - 1);
        const double r = r_min + t * (r_max - r_min);
        SigmaOptQuery q{r, family, ggd_beta, objective};
        rows.push_back({r, family, objective, sigma_opt_numeric(q)});
    }
    return rows;
}

inline std::string sigma_opt_csv(std::span<const SigmaOptRow> rows) {
    std::string out = "r,family,objective,sigma_opt\n";
    char line[128];
    for (const SigmaOptRow& row : rows) {
        std::snprintf(line, sizeof(line), "%.6f,%s,%s,%.9g\n", row.residual,
                      std::string(to_string(row.family)).c_str(),
                      std::string(to_string(row.objective)).c_str(), row.sigma_opt);
        out += line;
    }
    return out;
}

}  // namespace ggec

#endif  // GGEC_ANALYSIS_HPP
