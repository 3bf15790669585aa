#pragma once

#include <cassert>
#include <cstdint>
#include <span>
#include <vector>

#include "rlzap/common.hpp"
#include "rlzap/serialize_util.hpp"

namespace rlzap {

// Fixed-width integer array packed into 64-bit words, LSB-first. Element k
// occupies bits [k*width, (k+1)*width) of the buffer; widths from 1 to 64.
class PackedArray {
public:
    PackedArray() = default;

    PackedArray(uint32_t width, uint64_t count) { reset(width, count); }

    // Pack an existing value sequence with the given width.
    template <typename It>
    static PackedArray pack(uint32_t width, It first, It last) {
        PackedArray a(width, static_cast<uint64_t>(std::distance(first, last)));
        uint64_t k = 0;
        for (It it = first; it != last; ++it) a.set(k++, static_cast<uint64_t>(*it));
        return a;
    }

    static PackedArray pack(uint32_t width, std::span<const uint64_t> values) {
        return pack(width, values.begin(), values.end());
    }

    void reset(uint32_t width, uint64_t count) {
        assert(width >= 1 && width <= 64);
        width_ = width;
        count_ = count;
        words_.assign((count * width + 63) / 64, 0);
    }

    void set(uint64_t k, uint64_t v) {
        assert(k < count_);
        assert(width_ == 64 || v < (1ull << width_));
        uint64_t bit = k * width_;
        uint64_t word = bit >> 6;
        uint32_t off = static_cast<uint32_t>(bit & 63);
        words_[word] = (words_[word] & ~(mask() << off)) | (v << off);
        if (off + width_ > 64) {
            uint32_t hi = off + width_ - 64;  // bits spilling into the next word
            words_[word + 1] = (words_[word + 1] & ~((1ull << hi) - 1)) | (v >> (width_ - hi));
        }
    }

    uint64_t get(uint64_t k) const {
        if (k >= count_) throw RangeError("PackedArray::get: index out of range");
        uint64_t bit = k * width_;
        uint64_t word = bit >> 6;
        uint32_t off = static_cast<uint32_t>(bit & 63);
        uint64_t v = words_[word] >> off;
        if (off + width_ > 64) v |= words_[word + 1] << (64 - off);
        return v & mask();
    }

    uint64_t operator[](uint64_t k) const { return get(k); }

    uint64_t size() const { return count_; }
    bool empty() const { return count_ == 0; }
    uint32_t width() const { return width_; }
    uint64_t size_in_bits() const { return count_ * width_; }
    const std::vector<uint64_t>& words() const { return words_; }

    // Byte k of the packed buffer, consistent with the LSB-first word layout.
    uint8_t byte_at(uint64_t k) const {
        return static_cast<uint8_t>(words_[k >> 3] >> (8 * (k & 7)));
    }

    bool operator==(const PackedArray& o) const {
        return width_ == o.width_ && count_ == o.count_ && words_ == o.words_;
    }

    void serialize(ByteWriter& w) const {
        w.put_u8(static_cast<uint8_t>(width_));
        w.put_u64(count_);
        w.put_words(words_);
    }

    static PackedArray deserialize(ByteReader& r) {
        PackedArray a;
        a.width_ = r.get_u8();
        if (a.width_ < 1 || a.width_ > 64) throw FormatError("PackedArray: bad element width");
        a.count_ = r.get_u64();
        if (a.count_ > (UINT64_MAX - 63) / a.width_)
            throw FormatError("PackedArray: element count overflows");
        a.words_ = r.get_words((a.count_ * a.width_ + 63) / 64);
        return a;
    }

private:
    uint64_t mask() const { return width_ == 64 ? ~0ull : (1ull << width_) - 1; }

    uint32_t width_ = 1;
    uint64_t count_ = 0;
    std::vector<uint64_t> words_;
};

// Signed views over PackedArray via zig-zag codes.
inline PackedArray pack_signed(uint32_t width, std::span<const int64_t> values) {
    PackedArray a(width, values.size());
    for (uint64_t k = 0; k < values.size(); ++k) a.set(k, zigzag_encode(values[k]));
    return a;
}

inline int64_t get_signed(const PackedArray& a, uint64_t k) {
    return zigzag_decode(a.get(k));
}

// Minimal zig-zag width covering every value in the sequence.
inline uint32_t signed_width_for(std::span<const int64_t> values) {
    uint64_t max_zz = 0;
    for (int64_t v : values) max_zz = std::max(max_zz, zigzag_encode(v));
    return bits_for(max_zz);
}

}  // namespace rlzap
