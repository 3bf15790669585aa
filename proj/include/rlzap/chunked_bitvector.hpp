#pragma once

#include <cassert>
#include <cstdint>
#include <span>
#include <vector>

#include "rlzap/common.hpp"
#include "rlzap/packed_array.hpp"
#include "rlzap/sparse_bitvector.hpp"

namespace rlzap {

/*
 * Bitvector specialised for rare, clustered 1s: the universe is split into
 * fixed chunks of C bits (8..64), a sparse bitvector marks the nonempty
 * chunks, and only the marked chunks' raw words are kept. Unmarked chunks are
 * implicitly all-zero. A membership query costs one sparse-bitvector probe
 * plus at most one rank and one word fetch.
 */
class ChunkedExceptionBitvector {
public:
    ChunkedExceptionBitvector() = default;

    // ones must be strictly increasing positions < universe.
    ChunkedExceptionBitvector(uint64_t universe, std::span<const uint64_t> ones, uint32_t chunk_len) {
        if (chunk_len < 8 || chunk_len > 64)
            throw InvalidInputError("ChunkedExceptionBitvector: chunk length must be in [8, 64]");
        universe_ = universe;
        chunk_len_ = chunk_len;
        uint64_t nchunks = (universe + chunk_len - 1) / chunk_len;
        std::vector<uint64_t> marked;
        std::vector<uint64_t> words;
        for (size_t k = 0; k < ones.size(); ++k) {
            uint64_t p = ones[k];
            assert(p < universe_);
            assert(k == 0 || p > ones[k - 1]);
            uint64_t c = p / chunk_len;
            if (marked.empty() || marked.back() != c) {
                marked.push_back(c);
                words.push_back(0);
            }
            words.back() |= 1ull << (p % chunk_len);
        }
        chunks_.build(nchunks, marked);
        values_ = PackedArray::pack(chunk_len, words);
    }

    bool get(uint64_t i) const {
        if (i >= universe_) throw RangeError("ChunkedExceptionBitvector::get: position out of range");
        uint64_t c = i / chunk_len_;
        if (!chunks_.contains(c)) return false;
        uint64_t word = values_.get(chunks_.rank(c));
        return (word >> (i % chunk_len_)) & 1;
    }

    uint64_t universe() const { return universe_; }
    uint32_t chunk_len() const { return chunk_len_; }
    uint64_t num_marked_chunks() const { return chunks_.num_ones(); }
    const SparseBitvector& chunk_marks() const { return chunks_; }

    uint64_t size_in_bits() const { return chunks_.size_in_bits() + values_.size_in_bits(); }

    bool operator==(const ChunkedExceptionBitvector& o) const {
        return universe_ == o.universe_ && chunk_len_ == o.chunk_len_ &&
               chunks_ == o.chunks_ && values_ == o.values_;
    }

    void serialize(ByteWriter& w) const {
        w.put_u64(universe_);
        w.put_u32(chunk_len_);
        chunks_.serialize(w);
        values_.serialize(w);
    }

    static ChunkedExceptionBitvector deserialize(ByteReader& r) {
        ChunkedExceptionBitvector bv;
        bv.universe_ = r.get_u64();
        bv.chunk_len_ = r.get_u32();
        if (bv.chunk_len_ < 8 || bv.chunk_len_ > 64)
            throw FormatError("ChunkedExceptionBitvector: bad chunk length");
        bv.chunks_ = SparseBitvector::deserialize(r);
        bv.values_ = PackedArray::deserialize(r);
        if (bv.values_.size() != bv.chunks_.num_ones())
            throw FormatError("ChunkedExceptionBitvector: chunk payload count mismatch");
        return bv;
    }

private:
    uint64_t universe_ = 0;
    uint32_t chunk_len_ = 32;
    SparseBitvector chunks_;
    PackedArray values_;
};

}  // namespace rlzap
