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

#ifndef GGEC_SYNTH_HPP
#define GGEC_SYNTH_HPP

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "ggec/codec.hpp"
#include "ggec/rng.hpp"

// Seeded synthetic latents with known ground-truth residual statistics.
// Each symbol is y = round(mu + r) with r ~ G(0, sigma_true, beta_true);
// the coded parameters carry sigma_true (optionally perturbed to model
// estimation error), an experiment-chosen beta, and pi from the analytic
// center-probability oracle unless overridden.

namespace ggec {

struct SynthConfig {
    std::uint64_t count = 1;
    double mu_min = 0.0;
    double mu_max = 0.0;
    double sigma_log_min = 0.0;  // natural-log endpoints; sigma_true is log-uniform
    double sigma_log_max = 0.0;
    double beta_true = 1.0;
    double mismatch_rate = 0.0;  // fraction of symbols with perturbed coded sigma
    // log-factor interval for the perturbation sigma_coded = f * sigma_true.
    // The default draws f in [1/8, 1/2]: mispredicted symbols carry scales
    // that underestimate the true residual spread, the failure mode the
    // dynamic intervals are built to absorb.
    double mismatch_log_min = -2.0794415416798357;  // ln(1/8)
    double mismatch_log_max = -0.6931471805599453;  // ln(1/2)
    std::uint64_t seed = 0;
    std::optional<double> coded_beta;   // default: beta_true
    std::optional<double> pi_override;  // default: analytic oracle
    Alphabet alphabet;

    void validate() const {
        if (count < 1) throw format_error("synth config: count must be >= 1");
        if (!(mu_min <= mu_max)) throw format_error("synth config: empty mu_range");
        if (!(sigma_log_min <= sigma_log_max))
            throw format_error("synth config: empty sigma_log_range");
        if (!(math::exp(sigma_log_min) >= kSigmaMin && math::exp(sigma_log_max) <= kSigmaMax))
            throw format_error("synth config: sigma_log_range outside [ln 1e-3, ln 1e4]");
        if (!(beta_true >= kBetaMin && beta_true <= kBetaMax))
            throw format_error("synth config: beta_true outside [0.25, 4]");
        if (!(mismatch_rate >= 0.0 && mismatch_rate <= 1.0))
            throw format_error("synth config: mismatch_rate outside [0, 1]");
        if (!(mismatch_log_min <= mismatch_log_max))
            throw format_error("synth config: empty mismatch_log_range");
    }
};

inline SynthConfig synth_config_from_json(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw format_error(std::string("synth config: ") + e.what());
    }
    SynthConfig cfg;
    try {
        cfg.count = j.at("count").get<std::uint64_t>();
        cfg.mu_min = j.at("mu_range").at(0).get<double>();
        cfg.mu_max = j.at("mu_range").at(1).get<double>();
        cfg.sigma_log_min = j.at("sigma_log_range").at(0).get<double>();
        cfg.sigma_log_max = j.at("sigma_log_range").at(1).get<double>();
        cfg.beta_true = j.at("beta_true").get<double>();
        cfg.mismatch_rate = j.at("mismatch_rate").get<double>();
        cfg.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("mismatch_log_range")) {
            cfg.mismatch_log_min = j.at("mismatch_log_range").at(0).get<double>();
            cfg.mismatch_log_max = j.at("mismatch_log_range").at(1).get<double>();
        }
        if (j.contains("coded_beta")) cfg.coded_beta = j.at("coded_beta").get<double>();
        if (j.contains("pi_override")) cfg.pi_override = j.at("pi_override").get<double>();
        if (j.contains("alphabet"))
            cfg.alphabet = Alphabet(j.at("alphabet").at(0).get<int>(),
                                    j.at("alphabet").at(1).get<int>());
    } catch (const nlohmann::json::exception& e) {
        throw format_error(std::string("synth config: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw format_error(std::string("synth config: ") + e.what());
    }
    cfg.validate();
    return cfg;
}

// Exact probability that round(mu + r) equals round(mu) under the true
// residual model: the G(mu, sigma, beta) mass of the unit neighborhood of
// the rounded mean.
inline double oracle_pi(double mu, double sigma_true, double beta_true) {
    const GgdEvaluator g(GgdParams(mu, sigma_true, beta_true));
    const double center = static_cast<double>(round_half_away(mu));
    return g.interval_mass(center - 0.5, center + 0.5);
}

inline std::vector<LatentRecord> gen_latents(const SynthConfig& cfg) {
    cfg.validate();
    const double coded_beta = cfg.coded_beta.value_or(cfg.beta_true);
    std::vector<LatentRecord> records(cfg.count);
    for (std::uint64_t i = 0; i < cfg.count; ++i) {
        IndexedRng rng(cfg.seed, i);
        const double mu = rng.uniform(cfg.mu_min, cfg.mu_max);
        const double sigma_true = math::exp(rng.uniform(cfg.sigma_log_min, cfg.sigma_log_max));
        const double residual = rng.ggd(sigma_true, cfg.beta_true);

        double sigma_coded = sigma_true;
        if (rng.next_double() < cfg.mismatch_rate) {
            sigma_coded =
                sigma_true * math::exp(rng.uniform(cfg.mismatch_log_min, cfg.mismatch_log_max));
        }
        const double pi = cfg.pi_override ? *cfg.pi_override
                                          : oracle_pi(mu, sigma_true, cfg.beta_true);

        // Clamp in 64-bit first: heavy-tail residuals can overshoot int.
        std::int64_t y = round_half_away(mu + residual);
        if (y < cfg.alphabet.min_sym) y = cfg.alphabet.min_sym;
        if (y > cfg.alphabet.max_sym) y = cfg.alphabet.max_sym;

        LatentRecord& rec = records[i];
        rec.y_hat = static_cast<int>(y);
        rec.params = SymbolParams::from_f32(
            static_cast<float>(mu), static_cast<float>(sigma_coded),
            static_cast<float>(coded_beta), static_cast<float>(pi));
    }
    return records;
}

}  // namespace ggec

#endif  // GGEC_SYNTH_HPP
