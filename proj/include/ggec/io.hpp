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

#ifndef GGEC_IO_HPP
#define GGEC_IO_HPP

#include <bit>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ggec/cdf_table.hpp"

// On-disk formats, all integers little-endian:
//
//   symbols  "GGSY" 0x01 | count u64 | count * i16
//   params   "GGPR" 0x01 | count u64 | count * (f32 mu, sigma, beta, pi)
//   stream   "GGEC" 0x01 | mode u8 | alphabet min,max i16 | count u64
//            | payload length u64 | payload
//
// A CSV params variant with the exact header "mu,sigma,beta,pi" is accepted
// on input for hand-authored files; values are parsed at 32-bit precision
// to match the binary format.

namespace ggec {

struct format_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace io_detail {

class Writer {
public:
    explicit Writer(std::vector<std::uint8_t>& out) : out_(out) {}
    void u8(std::uint8_t v) { out_.push_back(v); }
    void bytes(const void* p, std::size_t n) {
        const auto* b = static_cast<const std::uint8_t*>(p);
        out_.insert(out_.end(), b, b + n);
    }
    void u64(std::uint64_t v) {
        for (int i = 0; i < 8; ++i) u8(static_cast<std::uint8_t>(v >> (8 * i)));
    }
    void i16(std::int16_t v) {
        const auto u = static_cast<std::uint16_t>(v);
        u8(static_cast<std::uint8_t>(u));
        u8(static_cast<std::uint8_t>(u >> 8));
    }
    void f32(float v) {
        const auto u = std::bit_cast<std::uint32_t>(v);
        for (int i = 0; i < 4; ++i) u8(static_cast<std::uint8_t>(u >> (8 * i)));
    }

private:
    std::vector<std::uint8_t>& out_;
};

class Reader {
public:
    Reader(std::span<const std::uint8_t> in, std::string_view what) : in_(in), what_(what) {}

    std::uint8_t u8(std::string_view field) {
        need(1, field);
        return in_[pos_++];
    }
    std::uint64_t u64(std::string_view field) {
        need(8, field);
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(in_[pos_++]) << (8 * i);
        return v;
    }
    std::int16_t i16(std::string_view field) {
        need(2, field);
        std::uint16_t v = in_[pos_];
        v = static_cast<std::uint16_t>(v | (in_[pos_ + 1] << 8));
        pos_ += 2;
        return static_cast<std::int16_t>(v);
    }
    float f32(std::string_view field) {
        need(4, field);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(in_[pos_++]) << (8 * i);
        return std::bit_cast<float>(v);
    }
    void magic(const char (&m)[5]) {
        need(4, "magic");
        for (int i = 0; i < 4; ++i) {
            if (in_[pos_ + i] != static_cast<std::uint8_t>(m[i]))
                throw format_error(std::string(what_) + ": bad magic at offset 0 (want \"" + m +
                                   "\")");
        }
        pos_ += 4;
    }
    void version(std::uint8_t want) {
        const std::size_t at = pos_;
        const std::uint8_t got = u8("version");
        if (got != want)
            throw format_error(std::string(what_) + ": unsupported version " +
                               std::to_string(got) + " at offset " + std::to_string(at));
    }
    std::span<const std::uint8_t> take(std::size_t n, std::string_view field) {
        need(n, field);
        auto s = in_.subspan(pos_, n);
        pos_ += n;
        return s;
    }
    std::size_t offset() const { return pos_; }
    std::size_t remaining() const { return in_.size() - pos_; }

private:
    void need(std::size_t n, std::string_view field) {
        if (in_.size() - pos_ < n)
            throw format_error(std::string(what_) + ": truncated reading " + std::string(field) +
                               " at offset " + std::to_string(pos_));
    }

    std::span<const std::uint8_t> in_;
    std::size_t pos_ = 0;
    std::string_view what_;
};

inline void check_finite(double v, std::size_t record, std::string_view field) {
    if (!(v - v == 0.0))
        throw format_error("params: non-finite " + std::string(field) + " in record " +
                           std::to_string(record));
}

}  // namespace io_detail

// ---- symbols (GGSY) ----

inline std::vector<std::uint8_t> serialize_symbols(std::span<const int> symbols) {
    std::vector<std::uint8_t> out;
    out.reserve(13 + 2 * symbols.size());
    io_detail::Writer w(out);
    w.bytes("GGSY", 4);
    w.u8(0x01);
    w.u64(symbols.size());
    for (int s : symbols) {
        if (s < -32768 || s > 32767)
            throw format_error("symbols: value " + std::to_string(s) + " does not fit i16");
        w.i16(static_cast<std::int16_t>(s));
    }
    return out;
}

inline std::vector<int> parse_symbols(std::span<const std::uint8_t> bytes) {
    io_detail::Reader r(bytes, "symbols");
    r.magic("GGSY");
    r.version(0x01);
    const std::uint64_t count = r.u64("count");
    if (r.remaining() != 2 * count)
        throw format_error("symbols: count " + std::to_string(count) + " does not match " +
                           std::to_string(r.remaining()) + " payload bytes");
    std::vector<int> out(count);
    for (std::uint64_t i = 0; i < count; ++i) out[i] = r.i16("symbol");
    return out;
}

// ---- params (GGPR / CSV) ----

inline std::vector<std::uint8_t> serialize_params(std::span<const SymbolParams> params) {
    std::vector<std::uint8_t> out;
    out.reserve(13 + 16 * params.size());
    io_detail::Writer w(out);
    w.bytes("GGPR", 4);
    w.u8(0x01);
    w.u64(params.size());
    for (const SymbolParams& p : params) {
        w.f32(static_cast<float>(p.mu));
        w.f32(static_cast<float>(p.sigma));
        w.f32(static_cast<float>(p.beta));
        w.f32(static_cast<float>(p.pi));
    }
    return out;
}

inline std::vector<SymbolParams> parse_params_binary(std::span<const std::uint8_t> bytes) {
    io_detail::Reader r(bytes, "params");
    r.magic("GGPR");
    r.version(0x01);
    const std::uint64_t count = r.u64("count");
    if (r.remaining() != 16 * count)
        throw format_error("params: count " + std::to_string(count) + " does not match " +
                           std::to_string(r.remaining()) + " payload bytes");
    std::vector<SymbolParams> out;
    out.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        const float mu = r.f32("mu");
        const float sigma = r.f32("sigma");
        const float beta = r.f32("beta");
        const float pi = r.f32("pi");
        io_detail::check_finite(mu, i, "mu");
        io_detail::check_finite(sigma, i, "sigma");
        io_detail::check_finite(beta, i, "beta");
        io_detail::check_finite(pi, i, "pi");
        out.push_back(SymbolParams::from_f32(mu, sigma, beta, pi));
    }
    return out;
}

inline std::vector<SymbolParams> parse_params_csv(std::string_view text) {
    std::vector<SymbolParams> out;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = text.size();
        std::string line(text.substr(pos, eol - pos));
        pos = eol + 1;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        ++line_no;
        if (line_no == 1) {
            if (line != "mu,sigma,beta,pi")
                throw format_error("params csv: header must be \"mu,sigma,beta,pi\"");
            continue;
        }
        if (line.empty()) continue;
        float v[4];
        const char* s = line.c_str();
        char* end = nullptr;
        for (int k = 0; k < 4; ++k) {
            v[k] = std::strtof(s, &end);
            if (end == s)
                throw format_error("params csv: bad field " + std::to_string(k + 1) + " on line " +
                                   std::to_string(line_no));
            s = end;
            if (k < 3) {
                if (*s != ',')
                    throw format_error("params csv: expected ',' on line " +
                                       std::to_string(line_no));
                ++s;
            }
        }
        io_detail::check_finite(v[0], line_no, "mu");
        io_detail::check_finite(v[1], line_no, "sigma");
        io_detail::check_finite(v[2], line_no, "beta");
        io_detail::check_finite(v[3], line_no, "pi");
        out.push_back(SymbolParams::from_f32(v[0], v[1], v[2], v[3]));
    }
    if (line_no == 0) throw format_error("params csv: empty input");
    return out;
}

// Sniffs GGPR vs CSV by the magic bytes.
inline std::vector<SymbolParams> parse_params(std::span<const std::uint8_t> bytes) {
    if (bytes.size() >= 4 && bytes[0] == 'G' && bytes[1] == 'G' && bytes[2] == 'P' &&
        bytes[3] == 'R')
        return parse_params_binary(bytes);
    return parse_params_csv(
        std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
}

// ---- coded stream container (GGEC) ----

struct Container {
    CodingMode mode = CodingMode::kFixedLaplacian;
    Alphabet alphabet;
    std::uint64_t count = 0;
    std::vector<std::uint8_t> payload;
};

inline std::vector<std::uint8_t> serialize_container(const Container& c) {
    std::vector<std::uint8_t> out;
    out.reserve(26 + c.payload.size());
    io_detail::Writer w(out);
    w.bytes("GGEC", 4);
    w.u8(0x01);
    w.u8(static_cast<std::uint8_t>(c.mode));
    w.i16(static_cast<std::int16_t>(c.alphabet.min_sym));
    w.i16(static_cast<std::int16_t>(c.alphabet.max_sym));
    w.u64(c.count);
    w.u64(c.payload.size());
    w.bytes(c.payload.data(), c.payload.size());
    return out;
}

inline Container parse_container(std::span<const std::uint8_t> bytes) {
    io_detail::Reader r(bytes, "container");
    r.magic("GGEC");
    r.version(0x01);
    const std::size_t mode_at = r.offset();
    const std::uint8_t mode = r.u8("mode");
    if (mode > 4)
        throw format_error("container: unknown mode " + std::to_string(mode) + " at offset " +
                           std::to_string(mode_at));
    Container c;
    c.mode = static_cast<CodingMode>(mode);
    const int min_sym = r.i16("alphabet min");
    const int max_sym = r.i16("alphabet max");
    try {
        c.alphabet = Alphabet(min_sym, max_sym);
    } catch (const std::invalid_argument& e) {
        throw format_error(std::string("container: ") + e.what());
    }
    c.count = r.u64("count");
    const std::uint64_t payload_len = r.u64("payload length");
    if (r.remaining() != payload_len)
        throw format_error("container: payload length " + std::to_string(payload_len) +
                           " does not match " + std::to_string(r.remaining()) +
                           " bytes after offset " + std::to_string(r.offset()));
    const auto span = r.take(payload_len, "payload");
    c.payload.assign(span.begin(), span.end());
    return c;
}

// ---- files ----

inline std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw format_error("cannot open " + path.string());
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(f)),
                                    std::istreambuf_iterator<char>());
    return bytes;
}

// Temp-and-rename so readers never observe a partial file.
inline void write_file_atomic(const std::filesystem::path& path,
                              std::span<const std::uint8_t> bytes) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw format_error("cannot open " + tmp.string() + " for writing");
        f.write(reinterpret_cast<const char*>(bytes.data()),
                static_cast<std::streamsize>(bytes.size()));
        if (!f) throw format_error("short write to " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

inline void write_file_atomic(const std::filesystem::path& path, std::string_view text) {
    write_file_atomic(path, std::span<const std::uint8_t>(
                                reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

}  // namespace ggec

#endif  // GGEC_IO_HPP
