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

// Acceptance suite: one line per criterion, nonzero exit if any fails.
// `ggec_acceptance --dump-golden` prints the measured golden values
// (table/container hashes, reference-run margins) for re-freezing after an
// intentional change to the math or the coder.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "ggec/ggec.hpp"
#include "test_support.hpp"

using namespace ggec;

namespace {

bool g_dump_golden = false;
int g_failures = 0;

void report(int id, const char* name, bool pass, const std::string& detail = "") {
    std::printf("%s  criterion %d: %s%s%s\n", pass ? "PASS" : "FAIL", id, name,
                detail.empty() ? "" : " -- ", detail.c_str());
    if (!pass) ++g_failures;
}

struct Check {
    bool ok = true;
    std::string detail;
    void fail(const std::string& why) {
        if (ok) detail = why;
        ok = false;
    }
    void expect(bool cond, const std::string& why) {
        if (!cond) fail(why);
    }
};

double run_seconds(const std::function<void()>& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---- criterion 1: GGD correctness --------------------------------------

void criterion_1() {
    Check c;
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
        const double mu = 200.0 * (U(rng) - 0.5);
        const double sigma = std::exp(U(rng) * 9.2 - 4.6);
        const double x1 = mu + 30.0 * sigma * (U(rng) - 0.5);
        const double lap = oracle::laplace_cdf(x1, mu, sigma);
        if (std::fabs(ggd_cdf(x1, GgdParams(mu, sigma, 1.0)) - lap) > 1e-10)
            c.fail("beta=1 path off the Laplacian closed form");
        const double x2 = mu + 12.0 * sigma * (U(rng) - 0.5);
        const double gau = oracle::ggd_beta2_cdf(x2, mu, sigma);
        if (std::fabs(ggd_cdf(x2, GgdParams(mu, sigma, 2.0)) - gau) > 1e-10)
            c.fail("beta=2 path off the Gaussian(sigma^2/2) erf oracle");
    }
    for (const double sigma : {1e-3, 0.2, 1.0, 240.0, 1e4}) {
        for (const double beta : {0.25, 0.5, 1.0, 2.0, 4.0}) {
            const GgdEvaluator g(GgdParams(0.0, sigma, beta));
            const double total =
                oracle::ggd_total_mass([&](double x) { return g.pdf(x); }, 0.0, sigma, beta);
            if (std::fabs(total - 1.0) > 1e-6)
                c.fail("pdf quadrature != 1 at sigma=" + std::to_string(sigma) +
                       " beta=" + std::to_string(beta));
        }
    }
    report(1, "GGD closed-form degenerations and pdf normalization", c.ok, c.detail);
}

// ---- criterion 2: delta formula -----------------------------------------

void criterion_2() {
    Check c;
    for (int j = 0; j < 100; ++j) {
        const double sigma = std::exp(-6.9077552789821368 + j * 16.118095650958319 / 99.0);
        const double d0 = delta_scale(0.0, sigma);
        const double d1 = delta_scale(1.0, sigma);
        if (std::fabs(d0 - 1.0 / (1.0 + sigma)) > 1e-9) c.fail("pi=0 endpoint");
        if (std::fabs(d1 - std::min(1.0 / (1.0 - std::exp(-sigma)), 64.0)) > 1e-9)
            c.fail("pi=1 endpoint");
        if (delta_scale(0.5, sigma) != 1.0) c.fail("pi=1/2 must give exactly 1");
        // The formula's pi-slope is (1/(1 - e^-sigma) - 1) ~ 1/sigma, so a
        // 1e-9 probe can only be expected to stay within 1e-6 of 1 once
        // sigma is above 1e-2; below that the slope itself exceeds 1e3.
        if (sigma >= 1e-2 &&
            (std::fabs(delta_scale(0.5 + 1e-9, sigma) - 1.0) > 1e-6 ||
             std::fabs(delta_scale(0.5 - 1e-9, sigma) - 1.0) > 1e-6))
            c.fail("discontinuous at pi=1/2");
        double prev = -1.0;
        for (int i = 0; i < 100; ++i) {
            const double pi = i / 99.0;
            const double d = delta_scale(pi, sigma);
            if (std::fabs(d - oracle::delta_formula(pi, sigma)) > 1e-9)
                c.fail("differs from the direct re-evaluation");
            if (d < prev) c.fail("not monotone in pi");
            prev = d;
        }
    }
    report(2, "center-interval scale formula on the (pi, sigma) grid", c.ok, c.detail);
}

// ---- criterion 3: partition tiling and normalization ---------------------

void criterion_3() {
    Check c;
    std::mt19937_64 rng(33);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    const Alphabet alphabet(-255, 255);
    for (int trial = 0; trial < 1000; ++trial) {
        const SymbolParams p(500.0 * (U(rng) - 0.5), std::exp(U(rng) * 9.2 - 4.6),
                             0.25 + 3.75 * U(rng), 1e-4 + (1.0 - 2e-4) * U(rng));
        const double delta = delta_scale(p.pi, p.sigma);
        for (std::int64_t n = -300; n < 300; ++n) {
            if (interval_of(n, p.mu, delta).hi != interval_of(n + 1, p.mu, delta).lo) {
                c.fail("tiling broke at n=" + std::to_string(n));
                break;
            }
        }
        for (const CodingMode mode : kAllModes) {
            const auto mass = real_likelihoods(p, mode, alphabet);
            double total = 0.0;
            for (double m : mass) total += m;
            if (std::fabs(total - 1.0) > 1e-9)
                c.fail("mass sum " + std::to_string(total) + " in mode " +
                       std::string(to_string(mode)));
        }
    }
    report(3, "exact interval tiling and unit mass over the alphabet", c.ok, c.detail);
}

// ---- criterion 4: heuristic equivalence ----------------------------------

void criterion_4() {
    Check c;
    std::mt19937_64 rng(44);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    for (int trial = 0; trial < 10000; ++trial) {
        const double mu = 80.0 * (U(rng) - 0.5);
        const double sigma = 2.0 + std::exp(U(rng) * 9.0 - 2.5);
        const auto n = static_cast<std::int64_t>(std::floor(mu + 30.0 * (U(rng) - 0.5)));
        const SymbolParams p(mu, sigma, 0.5, 0.5);
        const double lhs = preliminary_likelihood(n, mu, sigma);
        const double rhs = symbol_likelihood(n, p, 0.5);
        if (std::fabs(lhs - rhs) > 1e-12) {
            c.fail("mismatch at mu=" + std::to_string(mu) + " sigma=" + std::to_string(sigma) +
                   " n=" + std::to_string(n));
            break;
        }
    }
    report(4, "heuristic equals the delta=1/2 heavy-tail partition", c.ok, c.detail);
}

// ---- criterion 5: optimal scale ------------------------------------------

void criterion_5() {
    Check c;
    for (int i = 0; i < 50; ++i) {
        const double r = 1.0 + i;
        const double s = sigma_opt_numeric({r, Family::kLaplacian, 1.0, Objective::kPdf});
        if (std::fabs(s - r) / r > 1e-4)
            c.fail("Laplacian pdf argmax off at r=" + std::to_string(r));
    }
    for (double r = 2.0; r <= 20.0; r += 0.5) {
        const double s = sigma_opt_numeric({r, Family::kGaussian, 1.0, Objective::kIntervalMass});
        if (std::fabs(s / r - 1.0) > 0.05)
            c.fail("interval-mass argmax " + std::to_string(s) + " not within 5% of r=" +
                   std::to_string(r));
    }
    report(5, "optimal scale tracks the residual", c.ok, c.detail);
}

// ---- criterion 6: codec roundtrip fuzz -----------------------------------

void criterion_6() {
    Check c;
    std::mt19937_64 rng(66);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    const Alphabet alphabet(-255, 255);
    std::uint64_t symbols_done = 0;
    int stream_id = 0;
    while (symbols_done < 1000000) {
        const CodingMode mode = kAllModes[stream_id % 5];
        // parameter pool so distinct tables stay around 10^3 in total
        std::vector<SymbolParams> pool(100);
        for (auto& p : pool) {
            p = SymbolParams::from_f32(static_cast<float>(200.0 * (U(rng) - 0.5)),
                                       static_cast<float>(std::exp(U(rng) * 9.2 - 4.6)),
                                       static_cast<float>(0.25 + 3.75 * U(rng)),
                                       static_cast<float>(1e-4 + (1.0 - 2e-4) * U(rng)));
        }
        const std::size_t count = 25000;
        std::vector<LatentRecord> records(count);
        std::vector<SymbolParams> params(count);
        for (std::size_t i = 0; i < count; ++i) {
            const SymbolParams& p = pool[rng() % pool.size()];
            const double spread = U(rng) < 0.8 ? 3.0 * p.sigma : 120.0;
            records[i].params = p;
            params[i] = p;
            records[i].y_hat = alphabet.clamp(
                static_cast<int>(std::lround(p.mu + spread * (U(rng) - 0.5))));
        }
        std::vector<std::uint8_t> payload;
        const RateReport rep = code_stream(records, mode, alphabet, &payload);
        const double coded_bits = 8.0 * static_cast<double>(rep.coded_bytes);
        if (coded_bits < rep.estimated_bits_quantized)
            c.fail("coded below the quantized cross-entropy");
        if (coded_bits > rep.estimated_bits_quantized + 64.0)
            c.fail("coded more than 64 bits over the quantized cross-entropy");

        Container cont;
        cont.mode = mode;
        cont.alphabet = alphabet;
        cont.count = count;
        cont.payload = payload;
        const auto decoded = decode_stream(serialize_container(cont), params);
        for (std::size_t i = 0; i < count; ++i) {
            if (decoded[i] != records[i].y_hat) {
                c.fail("roundtrip mismatch at " + std::to_string(i));
                break;
            }
        }
        symbols_done += count;
        ++stream_id;
    }
    report(6, "10^6-symbol fuzz decodes exactly within the size bound", c.ok, c.detail);
}

// ---- criterion 7: degeneration -------------------------------------------

void criterion_7() {
    Check c;
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    const Alphabet alphabet(-255, 255);
    std::vector<LatentRecord> records(10000);
    for (auto& rec : records) {
        const double mu = 120.0 * (U(rng) - 0.5);
        const double sigma = std::exp(U(rng) * 7.0 - 3.5);
        rec.params = SymbolParams::from_f32(static_cast<float>(mu), static_cast<float>(sigma),
                                            1.0f, 0.5f);
        rec.y_hat = alphabet.clamp(
            static_cast<int>(std::lround(mu + 4.0 * sigma * (U(rng) - 0.5))));
    }
    const auto dyn = encode_stream(records, CodingMode::kDynamicGgd, alphabet);
    const auto lap = encode_stream(records, CodingMode::kFixedLaplacian, alphabet);
    c.expect(dyn.size() == lap.size(), "container sizes differ");
    if (c.ok) {
        // identical payloads; headers differ in the mode byte alone
        c.expect(std::memcmp(dyn.data() + 26, lap.data() + 26, dyn.size() - 26) == 0,
                 "payloads differ");
    }
    report(7, "pi=1/2, beta=1 dynamic stream is byte-identical to fixed-laplacian", c.ok,
           c.detail);
}

// ---- criterion 8: measured gains, frozen margins --------------------------

// Margins measured on the reference run of the seeded dataset below,
// in bits; re-measured values must stay within +-10%.
constexpr double kRefEstLapMinusGgd = 3698397.013497;
constexpr double kRefEstGgdMinusDyn = 1591.443004;
constexpr double kRefEstLapMinusPrelim = 57120.717927;
constexpr double kRefCodedLapMinusGgd = 386848.0;
constexpr double kRefCodedGgdMinusDyn = 1472.0;
constexpr double kRefCodedLapMinusPrelim = 22264.0;

void criterion_8() {
    Check c;
    // Reference dataset: heavy-tail residuals with three quarters of the
    // coded scales underestimating the true spread by 4-10x, the failure
    // regime the dynamic intervals are designed to absorb.
    SynthConfig cfg;
    cfg.count = 100000;
    cfg.mu_min = -40.0;
    cfg.mu_max = 40.0;
    cfg.sigma_log_min = std::log(0.5);
    cfg.sigma_log_max = std::log(8.0);
    cfg.beta_true = 0.5;
    cfg.mismatch_rate = 0.75;
    cfg.mismatch_log_min = std::log(0.1);
    cfg.mismatch_log_max = std::log(0.25);
    cfg.seed = 20260809;
    cfg.coded_beta = 0.5;
    const auto records = gen_latents(cfg);

    const auto reports = compare_modes(records,
                                       {CodingMode::kFixedLaplacian, CodingMode::kFixedGgd,
                                        CodingMode::kDynamicGgd, CodingMode::kPreliminary},
                                       cfg.alphabet);
    const RateReport& lap = reports[0];
    const RateReport& ggd = reports[1];
    const RateReport& dyn = reports[2];
    const RateReport& prelim = reports[3];

    c.expect(dyn.estimated_bits < ggd.estimated_bits, "estimate: dynamic !< fixed-ggd");
    c.expect(ggd.estimated_bits <= lap.estimated_bits, "estimate: fixed-ggd !<= laplacian");
    c.expect(prelim.estimated_bits < lap.estimated_bits, "estimate: preliminary !< laplacian");
    c.expect(dyn.coded_bytes < ggd.coded_bytes, "coded: dynamic !< fixed-ggd");
    c.expect(ggd.coded_bytes <= lap.coded_bytes, "coded: fixed-ggd !<= laplacian");
    c.expect(prelim.coded_bytes < lap.coded_bytes, "coded: preliminary !< laplacian");

    const double est_lap_ggd = lap.estimated_bits - ggd.estimated_bits;
    const double est_ggd_dyn = ggd.estimated_bits - dyn.estimated_bits;
    const double est_lap_prelim = lap.estimated_bits - prelim.estimated_bits;
    const double coded_lap_ggd = 8.0 * (static_cast<double>(lap.coded_bytes) - ggd.coded_bytes);
    const double coded_ggd_dyn = 8.0 * (static_cast<double>(ggd.coded_bytes) - dyn.coded_bytes);
    const double coded_lap_prelim =
        8.0 * (static_cast<double>(lap.coded_bytes) - prelim.coded_bytes);

    if (g_dump_golden) {
        std::printf("golden margins (bits):\n");
        std::printf("  kRefEstLapMinusGgd      = %.6f;\n", est_lap_ggd);
        std::printf("  kRefEstGgdMinusDyn      = %.6f;\n", est_ggd_dyn);
        std::printf("  kRefEstLapMinusPrelim   = %.6f;\n", est_lap_prelim);
        std::printf("  kRefCodedLapMinusGgd    = %.6f;\n", coded_lap_ggd);
        std::printf("  kRefCodedGgdMinusDyn    = %.6f;\n", coded_ggd_dyn);
        std::printf("  kRefCodedLapMinusPrelim = %.6f;\n", coded_lap_prelim);
    }

    const auto within = [](double measured, double frozen) {
        return std::fabs(measured - frozen) <= 0.10 * std::fabs(frozen);
    };
    c.expect(within(est_lap_ggd, kRefEstLapMinusGgd), "estimate margin lap-ggd drifted");
    c.expect(within(est_ggd_dyn, kRefEstGgdMinusDyn), "estimate margin ggd-dyn drifted");
    c.expect(within(est_lap_prelim, kRefEstLapMinusPrelim), "estimate margin lap-prelim drifted");
    c.expect(within(coded_lap_ggd, kRefCodedLapMinusGgd), "coded margin lap-ggd drifted");
    c.expect(within(coded_ggd_dyn, kRefCodedGgdMinusDyn), "coded margin ggd-dyn drifted");
    c.expect(within(coded_lap_prelim, kRefCodedLapMinusPrelim),
             "coded margin lap-prelim drifted");

    report(8, "heavy-tail gains ordered and margins within 10% of the reference run", c.ok,
           c.detail);
}

// ---- criterion 9: determinism goldens -------------------------------------

struct GoldenTable {
    CodingMode mode;
    float mu, sigma, beta, pi;
    int min_sym, max_sym;
    std::uint64_t hash;  // frozen FNV-1a of the cumulative table
};

// Reference tables spanning every mode, both clamp edges, the delta cap and
// a tie-breaking mu.
GoldenTable kGoldenTables[] = {
    {CodingMode::kFixedGaussian, 0.0f, 1.0f, 2.0f, 0.5f, -255, 255, 0xc4972b0a488a6e19ULL},
    {CodingMode::kFixedLaplacian, 0.0f, 1.0f, 1.0f, 0.5f, -255, 255, 0xf98d52a1d08358efULL},
    {CodingMode::kFixedGgd, 0.0f, 1.0f, 0.5f, 0.5f, -255, 255, 0xd1860a7db2d8168cULL},
    {CodingMode::kDynamicGgd, 0.0f, 1.0f, 0.5f, 0.8f, -255, 255, 0xee133d4f917b8338ULL},
    {CodingMode::kPreliminary, 0.3f, 3.0f, 1.0f, 0.5f, -255, 255, 0xe1216f107549a6b3ULL},
    {CodingMode::kFixedGaussian, -2.7f, 0.35f, 2.0f, 0.5f, -255, 255, 0x9a9e647914ecb8e1ULL},
    {CodingMode::kFixedLaplacian, 12.25f, 7.5f, 1.0f, 0.5f, -255, 255, 0x8ac63eaaff8ff690ULL},
    {CodingMode::kFixedGgd, 0.1f, 2.0f, 4.0f, 0.5f, -255, 255, 0x812c71e167b7f174ULL},
    {CodingMode::kDynamicGgd, -0.6f, 0.08f, 2.0f, 0.15f, -255, 255, 0xa25defa97f1797efULL},
    {CodingMode::kDynamicGgd, 100.4f, 25.0f, 1.0f, 0.5f, -255, 255, 0x4b31bf472e398d94ULL},
    {CodingMode::kPreliminary, -7.9f, 1.2f, 1.0f, 0.5f, -255, 255, 0x273602addbd9d05fULL},
    {CodingMode::kFixedGgd, 3.5f, 0.001f, 2.0f, 0.5f, -255, 255, 0xfd2abe83771b3a8eULL},
    {CodingMode::kDynamicGgd, 0.5f, 5.0f, 0.25f, 0.97f, -32, 32, 0x8d0e5649da1a7bc3ULL},
    {CodingMode::kFixedLaplacian, -120.0f, 300.0f, 1.0f, 0.5f, -255, 255, 0xfeb0806e7b1b4df8ULL},
    {CodingMode::kDynamicGgd, 7.77f, 0.004f, 3.0f, 0.999f, -255, 255, 0x3f5fd64169178409ULL},
    {CodingMode::kPreliminary, 33.33f, 9.9f, 1.0f, 0.5f, -64, 64, 0xf08c954067ff3b76ULL},
};

constexpr std::uint64_t kGoldenContainerHash = 0xe7ea7c0e45e77de2ULL;

void criterion_9() {
    Check c;
    for (std::size_t i = 0; i < std::size(kGoldenTables); ++i) {
        const GoldenTable& g = kGoldenTables[i];
        const SymbolParams p = SymbolParams::from_f32(g.mu, g.sigma, g.beta, g.pi);
        const Alphabet alphabet(g.min_sym, g.max_sym);
        const QuantizedCdf first = build_cdf_table(p, g.mode, alphabet);
        const QuantizedCdf second = build_cdf_table(p, g.mode, alphabet);
        if (!(first == second)) c.fail("rebuild differs for table " + std::to_string(i));
        const std::uint64_t h = table_hash(first);
        if (g_dump_golden) std::printf("golden table %2zu hash 0x%016llxULL\n", i,
                                       static_cast<unsigned long long>(h));
        if (h != g.hash)
            c.fail("table " + std::to_string(i) + " hash drifted");
    }

    SynthConfig cfg;
    cfg.count = 1000;
    cfg.mu_min = -20.0;
    cfg.mu_max = 20.0;
    cfg.sigma_log_min = std::log(0.5);
    cfg.sigma_log_max = std::log(8.0);
    cfg.beta_true = 0.5;
    cfg.mismatch_rate = 0.25;
    cfg.seed = 7;
    cfg.coded_beta = 0.5;
    const auto records = gen_latents(cfg);
    const auto container = encode_stream(records, CodingMode::kDynamicGgd, cfg.alphabet);
    const auto container2 = encode_stream(records, CodingMode::kDynamicGgd, cfg.alphabet);
    if (!(container == container2)) c.fail("re-encoding the golden container differs");
    const std::uint64_t h = fnv1a64(container.data(), container.size());
    if (g_dump_golden)
        std::printf("golden container hash 0x%016llxULL\n", static_cast<unsigned long long>(h));
    if (h != kGoldenContainerHash) c.fail("container hash drifted");

    report(9, "golden table and container hashes reproduce", c.ok, c.detail);
}

}  // namespace

int main(int argc, char** argv) {
    g_dump_golden = argc > 1 && std::strcmp(argv[1], "--dump-golden") == 0;

    struct Timed {
        int id;
        const char* budget;
        double seconds;
    };
    std::vector<Timed> times;
    times.push_back({1, "< 5 s", run_seconds(criterion_1)});
    times.push_back({2, "< 1 s", run_seconds(criterion_2)});
    times.push_back({3, "< 10 s", run_seconds(criterion_3)});
    times.push_back({4, "< 5 s", run_seconds(criterion_4)});
    times.push_back({5, "< 30 s", run_seconds(criterion_5)});
    times.push_back({6, "< 60 s", run_seconds(criterion_6)});
    times.push_back({7, "", run_seconds(criterion_7)});
    times.push_back({8, "< 60 s", run_seconds(criterion_8)});
    times.push_back({9, "", run_seconds(criterion_9)});

    const double budgets[] = {5.0, 1.0, 10.0, 5.0, 30.0, 60.0, 0.0, 60.0, 0.0};
    for (const Timed& t : times) {
        std::printf("time  criterion %d: %.2f s %s\n", t.id, t.seconds, t.budget);
        if (budgets[t.id - 1] > 0.0 && t.seconds > budgets[t.id - 1]) {
            std::printf("FAIL  criterion %d exceeded its runtime budget\n", t.id);
            ++g_failures;
        }
    }
    return g_failures == 0 ? 0 : 1;
}
