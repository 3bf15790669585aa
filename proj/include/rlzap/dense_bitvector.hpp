#pragma once

#include <cassert>
#include <cstdint>
#include <vector>

#include "rlzap/common.hpp"
#include "rlzap/serialize_util.hpp"

namespace rlzap {

/*
 * Plain bitvector with a two-level rank directory: absolute counts every
 * 65536 bits (u64) and relative counts every 512 bits (u16), then popcounts
 * over at most seven 64-bit words. select1 binary-searches the directory.
 * The directory is rebuilt on load; only the raw bits are serialized.
 */
class DenseBitvector {
public:
    static constexpr uint64_t kSuperBits = 65536;
    static constexpr uint64_t kBlockBits = 512;

    DenseBitvector() = default;

    explicit DenseBitvector(uint64_t nbits) : nbits_(nbits), words_((nbits + 63) / 64, 0) {}

    DenseBitvector(uint64_t nbits, std::vector<uint64_t> words)
        : nbits_(nbits), words_(std::move(words)) {
        assert(words_.size() == (nbits_ + 63) / 64);
        build_directory();
    }

    void set(uint64_t i) {
        assert(i < nbits_);
        words_[i >> 6] |= 1ull << (i & 63);
    }

    // Call once after the last set(); queries are valid from then on.
    void finish() { build_directory(); }

    bool get(uint64_t i) const {
        if (i >= nbits_) throw RangeError("DenseBitvector::get: position out of range");
        return (words_[i >> 6] >> (i & 63)) & 1;
    }

    uint64_t size() const { return nbits_; }
    uint64_t num_ones() const { return ones_; }

    // Number of 1s in [0, i).
    uint64_t rank(uint64_t i) const {
        if (i > nbits_) throw RangeError("DenseBitvector::rank: position out of range");
        if (i == 0) return 0;
        uint64_t r = super_[i / kSuperBits] + blocks_[i / kBlockBits];
        uint64_t word = i >> 6;
        for (uint64_t w = (i / kBlockBits) * (kBlockBits / 64); w < word; ++w)
            r += static_cast<uint64_t>(popcount64(words_[w]));
        uint32_t off = static_cast<uint32_t>(i & 63);
        if (off) r += static_cast<uint64_t>(popcount64(words_[word] << (64 - off)));
        return r;
    }

    // Position of the k-th 1, 0-based: select(0) is the first set bit.
    // Binary search through both directory levels, then a word scan.
    uint64_t select(uint64_t k) const {
        if (k >= ones_) throw RangeError("DenseBitvector::select: rank out of range");
        uint64_t lo = 0, hi = super_.size() - 1;
        while (lo < hi) {
            uint64_t mid = (lo + hi + 1) / 2;
            if (super_[mid] <= k) lo = mid; else hi = mid - 1;
        }
        uint64_t rem = k - super_[lo];
        uint64_t first_block = lo * (kSuperBits / kBlockBits);
        uint64_t b_lo = first_block;
        uint64_t b_hi = std::min<uint64_t>(first_block + kSuperBits / kBlockBits,
                                           blocks_.size()) - 1;
        while (b_lo < b_hi) {
            uint64_t mid = (b_lo + b_hi + 1) / 2;
            if (blocks_[mid] <= rem) b_lo = mid; else b_hi = mid - 1;
        }
        rem -= blocks_[b_lo];
        uint64_t w = b_lo * (kBlockBits / 64);
        while (true) {
            uint64_t c = static_cast<uint64_t>(popcount64(words_[w]));
            if (rem < c) break;
            rem -= c;
            ++w;
        }
        return w * 64 + select_in_word(words_[w], static_cast<uint32_t>(rem));
    }

    const std::vector<uint64_t>& words() const { return words_; }

    // Bits plus the scaling part of the rank directory; boundary sentinel
    // entries count as constant overhead and are excluded.
    uint64_t size_in_bits() const {
        return nbits_ + (nbits_ / kSuperBits) * 64 + (nbits_ / kBlockBits) * 16;
    }

    bool operator==(const DenseBitvector& o) const {
        return nbits_ == o.nbits_ && words_ == o.words_;
    }

    void serialize(ByteWriter& w) const {
        w.put_u64(nbits_);
        w.put_words(words_);
    }

    static DenseBitvector deserialize(ByteReader& r) {
        DenseBitvector bv;
        bv.nbits_ = r.get_u64();
        if (bv.nbits_ > UINT64_MAX - 63) throw FormatError("DenseBitvector: bit count overflows");
        bv.words_ = r.get_words((bv.nbits_ + 63) / 64);
        if (bv.nbits_ & 63) {
            uint64_t tail = bv.words_.back() >> (bv.nbits_ & 63);
            if (tail != 0) throw FormatError("DenseBitvector: nonzero padding bits");
        }
        bv.build_directory();
        return bv;
    }

private:
    void build_directory() {
        // Clear padding so popcounts and serialization stay canonical.
        if (nbits_ & 63 && !words_.empty()) words_.back() &= (1ull << (nbits_ & 63)) - 1;
        uint64_t nblocks = nbits_ / kBlockBits + 1;
        uint64_t nsupers = nbits_ / kSuperBits + 1;
        super_.assign(nsupers, 0);
        blocks_.assign(nblocks, 0);
        uint64_t total = 0, in_super = 0;
        for (uint64_t b = 0; b < nblocks; ++b) {
            if ((b * kBlockBits) % kSuperBits == 0) {
                super_[(b * kBlockBits) / kSuperBits] = total;
                in_super = 0;
            }
            blocks_[b] = static_cast<uint16_t>(in_super);
            uint64_t w0 = b * (kBlockBits / 64);
            uint64_t w1 = std::min<uint64_t>(w0 + kBlockBits / 64, words_.size());
            for (uint64_t w = w0; w < w1; ++w) {
                uint64_t c = static_cast<uint64_t>(popcount64(words_[w]));
                total += c;
                in_super += c;
            }
        }
        ones_ = total;
    }

    uint64_t nbits_ = 0;
    uint64_t ones_ = 0;
    std::vector<uint64_t> words_;
    std::vector<uint64_t> super_;
    std::vector<uint16_t> blocks_;
};

}  // namespace rlzap
