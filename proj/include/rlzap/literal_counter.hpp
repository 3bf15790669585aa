#pragma once

#include <array>
#include <cassert>
#include <cstdint>
#include <span>
#include <vector>

#include "rlzap/common.hpp"
#include "rlzap/packed_array.hpp"

namespace rlzap {

/*
 * Per-phrase literal counts with sampled prefix sums.
 *
 * Counts are stored in a packed array L at max_lit bits each (so every count
 * is at most 2^max_lit - 1), absolute prefix sums are sampled every
 * sample_interval entries, and the gap between a sample and the queried index
 * is summed bytewise through a 256-entry table mapping a byte to the sum of
 * its 8/max_lit fields. max_lit must be 1, 2, 4 or 8 and sample_interval a
 * multiple of 8/max_lit, which keeps every sample byte-aligned in L. The
 * lookup table is derived from max_lit at construction and load; it is never
 * serialized.
 */
class LiteralCounter {
public:
    LiteralCounter() = default;

    LiteralCounter(std::span<const uint32_t> counts, uint32_t max_lit, uint32_t sample_interval) {
        if (max_lit != 1 && max_lit != 2 && max_lit != 4 && max_lit != 8)
            throw InvalidInputError("LiteralCounter: max_lit must be 1, 2, 4 or 8");
        if (sample_interval == 0 || sample_interval % (8 / max_lit) != 0)
            throw InvalidInputError("LiteralCounter: sample_interval must be a positive multiple of 8/max_lit");
        max_lit_ = max_lit;
        sample_interval_ = sample_interval;
        counts_.reset(max_lit, counts.size());
        uint64_t cap = (1ull << max_lit) - 1;
        uint64_t total = 0;
        // One sample per s in [0, count / sample_interval]: the prefix sum at s*SI.
        std::vector<uint64_t> samples;
        samples.reserve(counts.size() / sample_interval + 1);
        for (uint64_t k = 0; k < counts.size(); ++k) {
            if (k % sample_interval == 0) samples.push_back(total);
            if (counts[k] > cap) throw InvalidInputError("LiteralCounter: count exceeds 2^max_lit - 1");
            counts_.set(k, counts[k]);
            total += counts[k];
        }
        if (counts.size() % sample_interval == 0) samples.push_back(total);
        total_ = total;
        samples_ = PackedArray::pack(bits_for(total), samples);
        build_table();
    }

    uint64_t size() const { return counts_.size(); }
    uint32_t max_lit() const { return max_lit_; }
    uint32_t sample_interval() const { return sample_interval_; }
    uint64_t total() const { return total_; }

    // Count for phrase k (0-based).
    uint32_t get(uint64_t k) const { return static_cast<uint32_t>(counts_.get(k)); }

    // Sum of the first j counts. One sample fetch, then whole bytes through
    // the field-sum table, then a masked partial byte.
    uint64_t prefix_sum(uint64_t j) const {
        if (j > counts_.size()) throw RangeError("LiteralCounter::prefix_sum: index out of range");
        uint64_t s = j / sample_interval_;
        uint64_t sum = samples_.get(s);
        uint64_t elems_per_byte = 8 / max_lit_;
        uint64_t elem = s * sample_interval_;
        uint64_t byte = elem / elems_per_byte;           // byte-aligned by construction
        uint64_t full_bytes_end = j / elems_per_byte;
        for (; byte < full_bytes_end; ++byte) sum += table_[counts_.byte_at(byte)];
        uint64_t rem = j % elems_per_byte;
        if (rem) {
            uint8_t b = counts_.byte_at(full_bytes_end);
            b &= static_cast<uint8_t>((1u << (rem * max_lit_)) - 1);
            sum += table_[b];
        }
        return sum;
    }

    uint64_t size_in_bits() const { return counts_.size_in_bits() + samples_.size_in_bits(); }

    bool operator==(const LiteralCounter& o) const {
        return max_lit_ == o.max_lit_ && sample_interval_ == o.sample_interval_ &&
               counts_ == o.counts_ && samples_ == o.samples_;
    }

    void serialize(ByteWriter& w) const {
        w.put_u8(static_cast<uint8_t>(max_lit_));
        w.put_u32(sample_interval_);
        counts_.serialize(w);
        samples_.serialize(w);
    }

    static LiteralCounter deserialize(ByteReader& r) {
        LiteralCounter c;
        c.max_lit_ = r.get_u8();
        if (c.max_lit_ != 1 && c.max_lit_ != 2 && c.max_lit_ != 4 && c.max_lit_ != 8)
            throw FormatError("LiteralCounter: bad max_lit");
        c.sample_interval_ = r.get_u32();
        if (c.sample_interval_ == 0 || c.sample_interval_ % (8 / c.max_lit_) != 0)
            throw FormatError("LiteralCounter: bad sample_interval");
        c.counts_ = PackedArray::deserialize(r);
        c.samples_ = PackedArray::deserialize(r);
        if (c.counts_.width() != c.max_lit_) throw FormatError("LiteralCounter: width mismatch");
        if (c.samples_.size() != c.counts_.size() / c.sample_interval_ + 1)
            throw FormatError("LiteralCounter: sample table size mismatch");
        c.build_table();
        c.total_ = c.prefix_sum(c.counts_.size());
        return c;
    }

private:
    void build_table() {
        uint32_t fields = 8 / max_lit_;
        uint32_t mask = (max_lit_ == 8) ? 0xFFu : ((1u << max_lit_) - 1);
        for (uint32_t b = 0; b < 256; ++b) {
            uint32_t sum = 0;
            for (uint32_t f = 0; f < fields; ++f) sum += (b >> (f * max_lit_)) & mask;
            table_[b] = static_cast<uint16_t>(sum);
        }
    }

    uint32_t max_lit_ = 1;
    uint32_t sample_interval_ = 8;
    uint64_t total_ = 0;
    PackedArray counts_;
    PackedArray samples_;
    std::array<uint16_t, 256> table_{};
};

}  // namespace rlzap
