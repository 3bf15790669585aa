#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rlzap/chunked_bitvector.hpp"
#include "rlzap/common.hpp"
#include "rlzap/packed_array.hpp"

namespace rlzap {

/*
 * Literal storage for DNA over {A, C, G, T, N}. Regular bases take 2 bits
 * each; N is written as an A and flagged in a chunked exception bitvector,
 * which stays tiny when Ns cluster (the usual case in assemblies).
 */
class DnaLiteralStore {
public:
    static constexpr uint8_t kSymbols[4] = {'A', 'C', 'G', 'T'};

    DnaLiteralStore() = default;

    DnaLiteralStore(std::span<const uint8_t> symbols, uint32_t chunk_len) {
        codes_.reset(2, symbols.size());
        std::vector<uint64_t> n_positions;
        for (uint64_t k = 0; k < symbols.size(); ++k) {
            switch (symbols[k]) {
                case 'A': codes_.set(k, 0); break;
                case 'C': codes_.set(k, 1); break;
                case 'G': codes_.set(k, 2); break;
                case 'T': codes_.set(k, 3); break;
                case 'N':
                    codes_.set(k, 0);  // placeholder base; the exception bit restores N
                    n_positions.push_back(k);
                    break;
                default:
                    throw InvalidInputError("DnaLiteralStore: symbol outside {A,C,G,T,N}");
            }
        }
        exceptions_ = ChunkedExceptionBitvector(symbols.size(), n_positions, chunk_len);
    }

    uint8_t get(uint64_t k) const {
        if (k >= codes_.size()) throw RangeError("DnaLiteralStore::get: index out of range");
        if (exceptions_.get(k)) return 'N';
        return kSymbols[codes_.get(k)];
    }

    uint64_t size() const { return codes_.size(); }
    uint64_t size_in_bits() const { return codes_.size_in_bits() + exceptions_.size_in_bits(); }
    const ChunkedExceptionBitvector& exceptions() const { return exceptions_; }

    bool operator==(const DnaLiteralStore& o) const {
        return codes_ == o.codes_ && exceptions_ == o.exceptions_;
    }

    void serialize(ByteWriter& w) const {
        codes_.serialize(w);
        exceptions_.serialize(w);
    }

    static DnaLiteralStore deserialize(ByteReader& r) {
        DnaLiteralStore s;
        s.codes_ = PackedArray::deserialize(r);
        s.exceptions_ = ChunkedExceptionBitvector::deserialize(r);
        if (s.codes_.width() != 2) throw FormatError("DnaLiteralStore: bad code width");
        if (s.exceptions_.universe() != s.codes_.size())
            throw FormatError("DnaLiteralStore: exception universe mismatch");
        return s;
    }

private:
    PackedArray codes_;
    ChunkedExceptionBitvector exceptions_;
};

/*
 * Literal storage for signed integer alphabets (differential LCP values and
 * the like): zig-zag codes packed at the minimal global width. No statistical
 * coding, so every access stays O(1).
 */
class FixedLiteralStore {
public:
    FixedLiteralStore() = default;

    explicit FixedLiteralStore(std::span<const int64_t> values) {
        values_ = pack_signed(signed_width_for(values), values);
    }

    int64_t get(uint64_t k) const { return get_signed(values_, k); }

    uint64_t size() const { return values_.size(); }
    uint32_t width() const { return values_.width(); }
    uint64_t size_in_bits() const { return values_.size_in_bits(); }

    bool operator==(const FixedLiteralStore& o) const { return values_ == o.values_; }

    void serialize(ByteWriter& w) const { values_.serialize(w); }

    static FixedLiteralStore deserialize(ByteReader& r) {
        FixedLiteralStore s;
        s.values_ = PackedArray::deserialize(r);
        return s;
    }

private:
    PackedArray values_;
};

}  // namespace rlzap
