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

#ifndef GGEC_CLI_HPP
#define GGEC_CLI_HPP

#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ggec/analysis.hpp"
#include "ggec/synth.hpp"

// Command-line front end. Exit codes: 0 success, 1 usage error, 2 data or
// format error. stdout carries nothing except the tables/sigma-opt CSV when
// no --out is given; diagnostics go to stderr. File outputs are atomic.

namespace ggec {

namespace cli_detail {

inline Alphabet parse_alphabet(const std::string& text) {
    const std::size_t colon = text.find(':');
    if (colon == std::string::npos || colon == 0 || colon + 1 >= text.size())
        throw std::invalid_argument("alphabet must be \"min:max\", got \"" + text + "\"");
    std::size_t used = 0;
    int min_sym;
    int max_sym;
    try {
        min_sym = std::stoi(text.substr(0, colon), &used);
        if (used != colon) throw std::invalid_argument("");
        const std::string rest = text.substr(colon + 1);
        max_sym = std::stoi(rest, &used);
        if (used != rest.size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
        throw std::invalid_argument("alphabet must be \"min:max\", got \"" + text + "\"");
    }
    return Alphabet(min_sym, max_sym);
}

inline std::vector<CodingMode> parse_mode_list(const std::string& text) {
    std::vector<CodingMode> modes;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t comma = text.find(',', pos);
        if (comma == std::string::npos) comma = text.size();
        modes.push_back(mode_from_string(text.substr(pos, comma - pos)));
        pos = comma + 1;
    }
    return modes;
}

inline std::vector<LatentRecord> zip_records(const std::vector<int>& symbols,
                                             const std::vector<SymbolParams>& params) {
    if (symbols.size() != params.size())
        throw format_error("symbols count " + std::to_string(symbols.size()) +
                           " does not match params count " + std::to_string(params.size()));
    std::vector<LatentRecord> records(symbols.size());
    for (std::size_t i = 0; i < symbols.size(); ++i) records[i] = {symbols[i], params[i]};
    return records;
}

inline std::string table_csv(const QuantizedCdf& cdf, const Alphabet& alphabet) {
    std::string out = "symbol,freq\n";
    char line[48];
    for (std::size_t i = 0; i < cdf.size(); ++i) {
        std::snprintf(line, sizeof(line), "%d,%u\n", alphabet.symbol_at(i), cdf.freq(i));
        out += line;
    }
    return out;
}

inline void emit(const std::string& text, const std::string& out_path, std::ostream& stdout_like) {
    if (out_path.empty()) {
        stdout_like << text;
    } else {
        write_file_atomic(out_path, text);
    }
}

}  // namespace cli_detail

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"generalized-Gaussian entropy coding toolkit"};
    app.require_subcommand(1);

    // encode
    auto* encode = app.add_subcommand("encode", "range-code a symbols file against a params file");
    std::string enc_params, enc_symbols, enc_mode, enc_out;
    std::string enc_alphabet = "-255:255";
    encode->add_option("--params", enc_params, "params file (.ggpr or CSV)")->required();
    encode->add_option("--symbols", enc_symbols, "symbols file (.ggsy)")->required();
    encode->add_option("--mode", enc_mode, "coding mode")->required();
    encode->add_option("--out", enc_out, "output container (.ggec)")->required();
    encode->add_option("--alphabet", enc_alphabet, "symbol alphabet min:max");

    // decode
    auto* decode = app.add_subcommand("decode", "decode a container back to a symbols file");
    std::string dec_params, dec_in, dec_out;
    decode->add_option("--params", dec_params, "params file used at encode")->required();
    decode->add_option("--in", dec_in, "input container (.ggec)")->required();
    decode->add_option("--out", dec_out, "output symbols file (.ggsy)")->required();

    // synth
    auto* synth = app.add_subcommand("synth", "generate a synthetic latent dataset");
    std::string syn_config, syn_symbols, syn_params;
    synth->add_option("--config", syn_config, "JSON synth config")->required();
    synth->add_option("--symbols", syn_symbols, "output symbols file (.ggsy)")->required();
    synth->add_option("--params", syn_params, "output params file (.ggpr)")->required();

    // bench
    auto* bench = app.add_subcommand("bench", "compare coding modes on a synthetic dataset");
    std::string ben_config, ben_modes, ben_out;
    bench->add_option("--config", ben_config, "JSON synth config")->required();
    bench->add_option("--modes", ben_modes, "comma-separated coding modes")->required();
    bench->add_option("--out", ben_out, "output CSV")->required();

    // sigma-opt
    auto* sopt = app.add_subcommand("sigma-opt", "sweep the optimal model scale over residuals");
    std::string so_family = "gaussian", so_objective = "interval-mass", so_out;
    double so_rmin = 1.0, so_rmax = 10.0;
    std::size_t so_steps = 10;
    float so_beta = 1.0f;
    sopt->add_option("--family", so_family, "gaussian | laplacian | ggd");
    sopt->add_option("--objective", so_objective, "pdf | interval-mass");
    sopt->add_option("--rmin", so_rmin, "smallest residual");
    sopt->add_option("--rmax", so_rmax, "largest residual");
    sopt->add_option("--steps", so_steps, "number of sweep points");
    sopt->add_option("--beta", so_beta, "shape for the ggd family");
    sopt->add_option("--out", so_out, "output CSV (stdout when omitted)");

    // tables
    auto* tables = app.add_subcommand("tables", "dump the quantized frequency table for params");
    float tb_mu = 0.0f, tb_sigma = 1.0f, tb_beta = 2.0f, tb_pi = 0.5f;
    std::string tb_mode = "dynamic-ggd", tb_alphabet = "-255:255", tb_out;
    tables->add_option("--mu", tb_mu, "mean")->required();
    tables->add_option("--sigma", tb_sigma, "scale")->required();
    tables->add_option("--beta", tb_beta, "shape");
    tables->add_option("--pi", tb_pi, "center probability estimate");
    tables->add_option("--mode", tb_mode, "coding mode");
    tables->add_option("--alphabet", tb_alphabet, "symbol alphabet min:max");
    tables->add_option("--out", tb_out, "output CSV (stdout when omitted)");

    std::vector<const char*> argv;
    argv.push_back("ggec");
    for (const std::string& a : args) argv.push_back(a.c_str());

    try {
        try {
            app.parse(static_cast<int>(argv.size()), argv.data());
        } catch (const CLI::CallForHelp&) {
            out << app.help();
            return 0;
        } catch (const CLI::ParseError& e) {
            err << "usage error: " << e.what() << "\n" << app.help();
            return 1;
        }

        if (encode->parsed()) {
            const Alphabet alphabet = cli_detail::parse_alphabet(enc_alphabet);
            const auto records = cli_detail::zip_records(parse_symbols(read_file(enc_symbols)),
                                                         parse_params(read_file(enc_params)));
            const auto container = encode_stream(records, mode_from_string(enc_mode), alphabet);
            write_file_atomic(enc_out, std::span<const std::uint8_t>(container));
        } else if (decode->parsed()) {
            const auto params = parse_params(read_file(dec_params));
            const auto symbols = decode_stream(read_file(dec_in), params);
            write_file_atomic(dec_out, std::span<const std::uint8_t>(serialize_symbols(symbols)));
        } else if (synth->parsed()) {
            const auto cfg_bytes = read_file(syn_config);
            const SynthConfig cfg = synth_config_from_json(
                std::string_view(reinterpret_cast<const char*>(cfg_bytes.data()),
                                 cfg_bytes.size()));
            const auto records = gen_latents(cfg);
            std::vector<int> symbols(records.size());
            std::vector<SymbolParams> params(records.size());
            for (std::size_t i = 0; i < records.size(); ++i) {
                symbols[i] = records[i].y_hat;
                params[i] = records[i].params;
            }
            write_file_atomic(syn_symbols, std::span<const std::uint8_t>(serialize_symbols(symbols)));
            write_file_atomic(syn_params, std::span<const std::uint8_t>(serialize_params(params)));
        } else if (bench->parsed()) {
            const auto cfg_bytes = read_file(ben_config);
            const SynthConfig cfg = synth_config_from_json(
                std::string_view(reinterpret_cast<const char*>(cfg_bytes.data()),
                                 cfg_bytes.size()));
            const auto records = gen_latents(cfg);
            const auto reports =
                compare_modes(records, cli_detail::parse_mode_list(ben_modes), cfg.alphabet);
            write_file_atomic(ben_out, reports_to_csv(reports));
        } else if (sopt->parsed()) {
            const auto rows =
                sigma_opt_sweep(family_from_string(so_family), objective_from_string(so_objective),
                                so_rmin, so_rmax, so_steps, static_cast<double>(so_beta));
            cli_detail::emit(sigma_opt_csv(rows), so_out, out);
        } else if (tables->parsed()) {
            const Alphabet alphabet = cli_detail::parse_alphabet(tb_alphabet);
            const SymbolParams params = SymbolParams::from_f32(tb_mu, tb_sigma, tb_beta, tb_pi);
            const QuantizedCdf cdf = build_cdf_table(params, mode_from_string(tb_mode), alphabet);
            cli_detail::emit(cli_detail::table_csv(cdf, alphabet), tb_out, out);
        }
        return 0;
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace ggec

#endif  // GGEC_CLI_HPP
