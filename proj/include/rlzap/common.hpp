#pragma once

#include <bit>
#include <cstdint>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace rlzap {

// ----------------------------------------------------------------------------
// Error hierarchy. Every failure mode the library reports maps to one of
// these, so callers (and the CLI) can translate them into distinct exit codes.
// ----------------------------------------------------------------------------

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Query position or index outside the valid domain.
struct RangeError : Error {
    explicit RangeError(const std::string& what) : Error(what) {}
};

// Caller-supplied data violates a precondition (empty reference, bad symbol).
struct InvalidInputError : Error {
    explicit InvalidInputError(const std::string& what) : Error(what) {}
};

// A parsing handed to the encoder violates its own invariants.
struct EncodingError : Error {
    explicit EncodingError(const std::string& what) : Error(what) {}
};

// A parsing or archive is internally inconsistent (copy range out of bounds).
struct CorruptError : Error {
    explicit CorruptError(const std::string& what) : Error(what) {}
};

// Container-level problems. Subclassed so tests can distinguish them.
struct FormatError : Error {
    explicit FormatError(const std::string& what) : Error(what) {}
};
struct BadMagicError : FormatError {
    explicit BadMagicError(const std::string& what) : FormatError(what) {}
};
struct UnknownVersionError : FormatError {
    explicit UnknownVersionError(const std::string& what) : FormatError(what) {}
};
struct TruncatedError : FormatError {
    explicit TruncatedError(const std::string& what) : FormatError(what) {}
};

// Archive was built against a different reference sequence.
struct ChecksumMismatchError : Error {
    explicit ChecksumMismatchError(const std::string& what) : Error(what) {}
};

// Dataset file could not be ingested (bad symbol, bad length).
struct IngestError : Error {
    explicit IngestError(const std::string& what) : Error(what) {}
};

// ----------------------------------------------------------------------------
// Word-level bit utilities. All bit buffers in this library are LSB-first
// within little-endian 64-bit words; bit j of a buffer lives at
// words[j / 64] >> (j % 64).
// ----------------------------------------------------------------------------

inline int popcount64(uint64_t w) { return std::popcount(w); }

// Number of bits needed to represent v (>= 1 even for v == 0).
inline uint32_t bits_for(uint64_t v) {
    return v == 0 ? 1u : static_cast<uint32_t>(64 - std::countl_zero(v));
}

// Position (0-based) of the r-th (0-based) set bit of w. Requires r < popcount(w).
inline uint32_t select_in_word(uint64_t w, uint32_t r) {
    for (uint32_t byte = 0; byte < 8; ++byte) {
        uint32_t c = static_cast<uint32_t>(std::popcount(w & 0xFFull));
        if (r < c) {
            uint32_t pos = byte * 8;
            uint8_t b = static_cast<uint8_t>(w & 0xFF);
            while (true) {
                uint32_t low = b & 1u;
                if (low) {
                    if (r == 0) return pos;
                    --r;
                }
                b = static_cast<uint8_t>(b >> 1);
                ++pos;
            }
        }
        r -= c;
        w >>= 8;
    }
    return 64;  // unreachable for valid r
}

// ----------------------------------------------------------------------------
// Zig-zag coding: maps signed integers to unsigned so small magnitudes get
// small codes. A b-bit zig-zag code covers exactly [-2^(b-1), 2^(b-1) - 1],
// the same range as b-bit two's complement.
// ----------------------------------------------------------------------------

inline uint64_t zigzag_encode(int64_t v) {
    return (static_cast<uint64_t>(v) << 1) ^ static_cast<uint64_t>(v >> 63);
}

inline int64_t zigzag_decode(uint64_t u) {
    return static_cast<int64_t>(u >> 1) ^ -static_cast<int64_t>(u & 1);
}

// FNV-1a over a byte range; used to bind archives to their reference.
inline uint64_t fnv1a64(const void* data, size_t len) {
    const auto* p = static_cast<const unsigned char*>(data);
    uint64_t h = 0xcbf29ce484222325ull;
    for (size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ull;
    }
    return h;
}

}  // namespace rlzap
