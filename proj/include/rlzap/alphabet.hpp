#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rlzap/common.hpp"
#include "rlzap/literal_store.hpp"
#include "rlzap/parser.hpp"

namespace rlzap {

// DNA sequences over {A, C, G, T, N} carried as raw bytes. Literals go to the
// 2-bit store with N exceptions; default parameters follow the DNA workload.
struct DnaAlphabet {
    using symbol_type = uint8_t;
    using literal_store_type = DnaLiteralStore;

    static constexpr uint8_t kTag = 0;
    static constexpr const char* kName = "dna";

    static ParseParams default_params() {
        ParseParams p;
        p.delta_bits = 2;
        p.look_ahead = 32;
        p.min_explicit_length = 32;
        p.max_lit = 4;
        p.sample_interval = 64;
        p.chunk_len = 32;
        p.sigma_bits = 2;
        return p;
    }

    static literal_store_type build_literals(std::span<const symbol_type> symbols,
                                             const ParseParams& params) {
        return DnaLiteralStore(symbols, params.chunk_len);
    }

    static symbol_type literal_at(const literal_store_type& store, uint64_t k) {
        return store.get(k);
    }

    static uint64_t checksum(std::span<const symbol_type> seq) {
        return fnv1a64(seq.data(), seq.size());
    }
};

// Signed 32-bit integer sequences (differentially encoded LCP arrays in the
// source workload). Literals are zig-zag packed at global minimal width.
struct Int32Alphabet {
    using symbol_type = int32_t;
    using literal_store_type = FixedLiteralStore;

    static constexpr uint8_t kTag = 1;
    static constexpr const char* kName = "i32";

    static ParseParams default_params() {
        ParseParams p;
        p.delta_bits = 4;
        p.look_ahead = 8;
        p.min_explicit_length = 4;
        p.max_lit = 4;
        p.sample_interval = 64;
        p.chunk_len = 32;
        p.sigma_bits = 32;
        return p;
    }

    static literal_store_type build_literals(std::span<const symbol_type> symbols,
                                             const ParseParams&) {
        std::vector<int64_t> wide(symbols.begin(), symbols.end());
        return FixedLiteralStore(wide);
    }

    static symbol_type literal_at(const literal_store_type& store, uint64_t k) {
        return static_cast<int32_t>(store.get(k));
    }

    static uint64_t checksum(std::span<const symbol_type> seq) {
        // Hash the little-endian byte image so the value is host-independent.
        std::vector<uint8_t> bytes;
        bytes.reserve(seq.size() * 4);
        for (int32_t v : seq) {
            uint32_t u = static_cast<uint32_t>(v);
            for (int i = 0; i < 4; ++i) bytes.push_back(static_cast<uint8_t>(u >> (8 * i)));
        }
        return fnv1a64(bytes.data(), bytes.size());
    }
};

}  // namespace rlzap
