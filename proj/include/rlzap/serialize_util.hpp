#pragma once

#include <cstdint>
#include <cstring>
#include <span>
#include <string>
#include <vector>

#include "rlzap/common.hpp"

namespace rlzap {

// Little-endian byte sink. All multi-byte integers in the serialized formats
// go through here so the on-disk layout is identical across hosts.
class ByteWriter {
public:
    void put_u8(uint8_t v) { buf_.push_back(v); }

    void put_u32(uint32_t v) {
        for (int i = 0; i < 4; ++i) buf_.push_back(static_cast<uint8_t>(v >> (8 * i)));
    }

    void put_u64(uint64_t v) {
        for (int i = 0; i < 8; ++i) buf_.push_back(static_cast<uint8_t>(v >> (8 * i)));
    }

    void put_bytes(const void* data, size_t len) {
        const auto* p = static_cast<const uint8_t*>(data);
        buf_.insert(buf_.end(), p, p + len);
    }

    void put_words(const std::vector<uint64_t>& words) {
        for (uint64_t w : words) put_u64(w);
    }

    // Patch a previously written u64 (for length prefixes).
    void patch_u64(size_t offset, uint64_t v) {
        for (int i = 0; i < 8; ++i) buf_[offset + i] = static_cast<uint8_t>(v >> (8 * i));
    }

    size_t size() const { return buf_.size(); }
    const std::vector<uint8_t>& bytes() const { return buf_; }
    std::vector<uint8_t> take() { return std::move(buf_); }

private:
    std::vector<uint8_t> buf_;
};

// Bounds-checked little-endian byte source. Any read past the end throws
// TruncatedError, which is what makes byte-level truncation fuzzing safe.
class ByteReader {
public:
    explicit ByteReader(std::span<const uint8_t> data) : data_(data) {}

    uint8_t get_u8() {
        need(1);
        return data_[pos_++];
    }

    uint32_t get_u32() {
        need(4);
        uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= static_cast<uint32_t>(data_[pos_ + i]) << (8 * i);
        pos_ += 4;
        return v;
    }

    uint64_t get_u64() {
        need(8);
        uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v |= static_cast<uint64_t>(data_[pos_ + i]) << (8 * i);
        pos_ += 8;
        return v;
    }

    std::vector<uint64_t> get_words(uint64_t count) {
        if (count > (remaining() / 8)) throw TruncatedError("word block extends past end of data");
        std::vector<uint64_t> out(count);
        for (uint64_t i = 0; i < count; ++i) out[i] = get_u64();
        return out;
    }

    std::vector<uint8_t> get_bytes(uint64_t count) {
        need(count);
        std::vector<uint8_t> out(data_.begin() + static_cast<ptrdiff_t>(pos_),
                                 data_.begin() + static_cast<ptrdiff_t>(pos_ + count));
        pos_ += count;
        return out;
    }

    size_t position() const { return pos_; }
    size_t remaining() const { return data_.size() - pos_; }
    bool at_end() const { return pos_ == data_.size(); }
    std::span<const uint8_t> raw() const { return data_; }

    void seek(size_t pos) {
        if (pos > data_.size()) throw TruncatedError("seek past end of data");
        pos_ = pos;
    }

private:
    void need(uint64_t n) const {
        if (n > remaining()) throw TruncatedError("unexpected end of data");
    }

    std::span<const uint8_t> data_;
    size_t pos_ = 0;
};

// Every structure's serialization is length-prefixed: u64 byte length, then
// the payload. These helpers enforce that prefix on both sides, so a reader
// can index components without knowing their internals and truncation inside
// a component is always caught.
template <typename T>
void write_component(ByteWriter& w, const T& value) {
    size_t prefix_at = w.size();
    w.put_u64(0);
    size_t begin = w.size();
    value.serialize(w);
    w.patch_u64(prefix_at, w.size() - begin);
}

template <typename T>
T read_component(ByteReader& r) {
    uint64_t len = r.get_u64();
    if (len > r.remaining()) throw TruncatedError("component extends past end of data");
    ByteReader sub(std::span<const uint8_t>(r.raw().data() + r.position(), len));
    T value = T::deserialize(sub);
    if (!sub.at_end()) throw FormatError("component has trailing bytes");
    r.seek(r.position() + len);
    return value;
}

// Length of the next component without consuming it.
inline uint64_t peek_component_length(ByteReader& r) {
    size_t at = r.position();
    uint64_t len = r.get_u64();
    r.seek(at);
    return len;
}

}  // namespace rlzap
