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

#ifndef GGEC_CODEC_HPP
#define GGEC_CODEC_HPP

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <thread>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "ggec/io.hpp"
#include "ggec/range_coder.hpp"

// Stream-level coding. Entropy parameters are pure side information: both
// sides receive the same params (as a decoded hyperprior would supply them)
// and derive identical tables, so only the symbol payload is coded.

namespace ggec {

struct LatentRecord {
    int y_hat = 0;
    SymbolParams params;
};

// Bit accounting for one coded (or estimated) stream. estimated_bits sums
// -log2 of the real per-mode likelihoods; estimated_bits_quantized sums
// -log2(freq/65536) over the tables the coder actually uses. coded_bytes is
// the range-coder payload (container header excluded) and stays within 64
// bits of the quantized estimate; it is zero for estimate-only reports, in
// which case bits_per_symbol falls back to the real estimate.
struct RateReport {
    CodingMode mode = CodingMode::kFixedLaplacian;
    std::uint64_t count = 0;
    double estimated_bits = 0.0;
    double estimated_bits_quantized = 0.0;
    std::uint64_t coded_bytes = 0;
    double bits_per_symbol = 0.0;
};

// Memo of quantized tables keyed on the exact parameter bits. Streams that
// reuse parameters hit the memo; streams of all-distinct parameters pay one
// table build per record and bounded memory (the map resets at capacity).
// Table construction is pure, so caching and threading cannot change any
// coded byte.
class TableCache {
public:
    TableCache(CodingMode mode, const Alphabet& alphabet, std::size_t max_entries = 8192)
        : mode_(mode), alphabet_(alphabet), max_entries_(max_entries) {}

    const QuantizedCdf& get(const SymbolParams& p) {
        const Key key = key_of(p);
        const auto it = map_.find(key);
        if (it != map_.end()) return it->second;
        return insert(key, build_cdf_table(p, mode_, alphabet_));
    }

    // Builds every table the block will need, missing ones split across
    // worker threads.
    void prefetch(std::span<const LatentRecord> records, unsigned threads) {
        std::vector<Key> keys;
        std::vector<SymbolParams> params;
        std::unordered_set<Key, KeyHash> pending;
        for (const LatentRecord& rec : records) {
            const Key key = key_of(rec.params);
            if (map_.contains(key) || !pending.insert(key).second) continue;
            keys.push_back(key);
            params.push_back(rec.params);
        }
        if (keys.empty()) return;

        std::vector<QuantizedCdf> built(keys.size());
        if (threads <= 1 || keys.size() < 64) {
            for (std::size_t i = 0; i < keys.size(); ++i)
                built[i] = build_cdf_table(params[i], mode_, alphabet_);
        } else {
            std::vector<std::exception_ptr> errors(threads);
            std::vector<std::thread> pool;
            for (unsigned t = 0; t < threads; ++t) {
                pool.emplace_back([&, t]() {
                    try {
                        for (std::size_t i = t; i < keys.size(); i += threads)
                            built[i] = build_cdf_table(params[i], mode_, alphabet_);
                    } catch (...) {
                        errors[t] = std::current_exception();
                    }
                });
            }
            for (std::thread& th : pool) th.join();
            for (const std::exception_ptr& e : errors)
                if (e) std::rethrow_exception(e);
        }
        for (std::size_t i = 0; i < keys.size(); ++i) insert(keys[i], std::move(built[i]));
    }

private:
    using Key = std::array<std::uint64_t, 4>;

    struct KeyHash {
        std::size_t operator()(const Key& k) const {
            return static_cast<std::size_t>(
                fnv1a64(reinterpret_cast<const std::uint8_t*>(k.data()), sizeof(Key)));
        }
    };

    static Key key_of(const SymbolParams& p) {
        return {std::bit_cast<std::uint64_t>(p.mu), std::bit_cast<std::uint64_t>(p.sigma),
                std::bit_cast<std::uint64_t>(p.beta), std::bit_cast<std::uint64_t>(p.pi)};
    }

    const QuantizedCdf& insert(const Key& key, QuantizedCdf table) {
        if (map_.size() >= max_entries_) map_.clear();
        return map_.emplace(key, std::move(table)).first->second;
    }

    CodingMode mode_;
    Alphabet alphabet_;
    std::size_t max_entries_;
    std::unordered_map<Key, QuantizedCdf, KeyHash> map_;
};

// Block size for prefetching tables ahead of the sequential coding loop;
// must stay at or below the cache capacity so a block is never evicted
// while it is being coded.
inline constexpr std::size_t kCodecBlock = 4096;

inline unsigned codec_threads() {
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : (hw > 8 ? 8 : hw);
}

namespace codec_detail {

inline double neg_log2(double p) { return -(math::log(p) * math::kInvLn2); }

inline void check_in_alphabet(const LatentRecord& rec, std::size_t index,
                              const Alphabet& alphabet) {
    if (!alphabet.contains(rec.y_hat))
        throw coder_error("encode: symbol " + std::to_string(rec.y_hat) + " at record " +
                          std::to_string(index) + " outside alphabet [" +
                          std::to_string(alphabet.min_sym) + "," +
                          std::to_string(alphabet.max_sym) + "]");
}

}  // namespace codec_detail

// One pass over the records: accumulates both rate estimates and, when
// `payload` is given, range-codes the symbols into it.
inline RateReport code_stream(std::span<const LatentRecord> records, CodingMode mode,
                              const Alphabet& alphabet, std::vector<std::uint8_t>* payload) {
    TableCache cache(mode, alphabet);
    const unsigned threads = codec_threads();
    RangeEncoder enc;
    RateReport rep;
    rep.mode = mode;
    rep.count = records.size();
    for (std::size_t base = 0; base < records.size(); base += kCodecBlock) {
        const std::size_t block = std::min(kCodecBlock, records.size() - base);
        cache.prefetch(records.subspan(base, block), threads);
        for (std::size_t i = base; i < base + block; ++i) {
            const LatentRecord& rec = records[i];
            codec_detail::check_in_alphabet(rec, i, alphabet);
            const QuantizedCdf& table = cache.get(rec.params);
            const std::size_t index = alphabet.index_of(rec.y_hat);
            rep.estimated_bits += symbol_estimate_bits(rec.params, mode, alphabet, rec.y_hat);
            rep.estimated_bits_quantized += codec_detail::neg_log2(
                static_cast<double>(table.freq(index)) / QuantizedCdf::kTotal);
            if (payload != nullptr) enc.encode(table, index);
        }
    }
    if (payload != nullptr) {
        *payload = enc.finish();
        rep.coded_bytes = payload->size();
        rep.bits_per_symbol =
            rep.count == 0 ? 0.0 : 8.0 * static_cast<double>(rep.coded_bytes) / rep.count;
    } else {
        rep.bits_per_symbol = rep.count == 0 ? 0.0 : rep.estimated_bits / rep.count;
    }
    return rep;
}

inline RateReport estimate_bits(std::span<const LatentRecord> records, CodingMode mode,
                                const Alphabet& alphabet) {
    return code_stream(records, mode, alphabet, nullptr);
}

inline std::vector<std::uint8_t> encode_stream(std::span<const LatentRecord> records,
                                               CodingMode mode, const Alphabet& alphabet) {
    Container c;
    c.mode = mode;
    c.alphabet = alphabet;
    c.count = records.size();
    code_stream(records, mode, alphabet, &c.payload);
    return serialize_container(c);
}

inline std::vector<int> decode_stream(std::span<const std::uint8_t> container_bytes,
                                      std::span<const SymbolParams> params) {
    const Container c = parse_container(container_bytes);
    if (c.count != params.size())
        throw format_error("decode: container count " + std::to_string(c.count) +
                           " does not match " + std::to_string(params.size()) + " params");
    TableCache cache(c.mode, c.alphabet);
    const unsigned threads = codec_threads();
    RangeDecoder dec(c.payload);
    std::vector<int> symbols(c.count);
    std::vector<LatentRecord> block(std::min<std::size_t>(kCodecBlock, c.count));
    for (std::uint64_t base = 0; base < c.count; base += kCodecBlock) {
        const std::size_t n = std::min<std::size_t>(kCodecBlock, c.count - base);
        for (std::size_t i = 0; i < n; ++i) block[i].params = params[base + i];
        cache.prefetch(std::span<const LatentRecord>(block.data(), n), threads);
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t index = dec.decode(cache.get(params[base + i]));
            symbols[base + i] = c.alphabet.symbol_at(index);
        }
    }
    return symbols;
}

}  // namespace ggec

#endif  // GGEC_CODEC_HPP
