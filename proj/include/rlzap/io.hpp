#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <span>
#include <string>
#include <vector>

#include "rlzap/alphabet.hpp"
#include "rlzap/archive.hpp"
#include "rlzap/baselines.hpp"
#include "rlzap/common.hpp"
#include "rlzap/serialize_util.hpp"

namespace rlzap {

/*
 * Archive container, version 1.
 *
 *   magic "RLZAP" | version u8 | scheme u8 | alphabet u8
 *   params: 7 x u32 (delta_bits, look_ahead, min_explicit_length, max_lit,
 *                    sample_interval, chunk_len, sigma_bits)
 *   adaptive_width_note u32   (ceil(log2(look_ahead)) + 1; informational)
 *   ref_checksum u64 | ref_len u64 | target_len u64
 *   section_count u32
 *   section table: (id u32, offset u64, length u64) per section
 *   section payloads, contiguous and in table order
 *
 * All integers little-endian. Section payloads are the length-prefixed
 * component serializations, laid out back to back; the table is an index
 * over them, and a file is rejected unless the sections tile the byte range
 * between header and end of file exactly. Serialization is canonical: equal
 * logical content produces identical bytes.
 */

enum class Scheme : uint8_t { Rlzap = 0, Rlz = 1, Gdc = 2, RelPtr = 3 };

inline const char* scheme_name(Scheme s) {
    switch (s) {
        case Scheme::Rlzap: return "rlzap";
        case Scheme::Rlz: return "rlz";
        case Scheme::Gdc: return "gdc";
        case Scheme::RelPtr: return "relptr";
    }
    return "?";
}

// Section ids by component role.
namespace section_id {
constexpr uint32_t kPhraseMarks = 1;     // phrase start / end bitvector
constexpr uint32_t kExplicitMarks = 2;   // explicit-phrase bitvector
constexpr uint32_t kPointers = 3;        // explicit pointers or sources
constexpr uint32_t kDeltas = 4;          // adaptive deltas
constexpr uint32_t kCounts = 5;          // literal counter
constexpr uint32_t kLiterals = 6;        // literal / mismatch store
constexpr uint32_t kRunValues = 7;       // run-length pointer values
constexpr uint32_t kRunHeads = 8;        // run head bitvector
}  // namespace section_id

inline const char* section_name(uint32_t id) {
    switch (id) {
        case section_id::kPhraseMarks: return "phrase-marks";
        case section_id::kExplicitMarks: return "explicit-marks";
        case section_id::kPointers: return "pointers";
        case section_id::kDeltas: return "deltas";
        case section_id::kCounts: return "counts";
        case section_id::kLiterals: return "literals";
        case section_id::kRunValues: return "run-values";
        case section_id::kRunHeads: return "run-heads";
    }
    return "?";
}

inline std::vector<uint32_t> section_ids_for(Scheme s) {
    using namespace section_id;
    switch (s) {
        case Scheme::Rlzap:
            return {kPhraseMarks, kExplicitMarks, kPointers, kDeltas, kCounts, kLiterals};
        case Scheme::Rlz:
            return {kPhraseMarks, kPointers};
        case Scheme::Gdc:
            return {kPointers, kPhraseMarks, kLiterals};
        case Scheme::RelPtr:
            return {kRunValues, kRunHeads, kPhraseMarks, kLiterals};
    }
    return {};
}

struct SectionEntry {
    uint32_t id = 0;
    uint64_t offset = 0;
    uint64_t length = 0;
};

struct ContainerInfo {
    uint8_t version = 1;
    Scheme scheme = Scheme::Rlzap;
    uint8_t alphabet_tag = 0;
    ParseParams params;
    uint32_t adaptive_width_note = 0;
    uint64_t ref_checksum = 0;
    uint64_t ref_len = 0;
    uint64_t target_len = 0;
    std::vector<SectionEntry> sections;
    uint64_t header_bytes = 0;
    uint64_t file_bytes = 0;
};

constexpr uint8_t kFormatVersion = 1;
inline constexpr char kMagic[5] = {'R', 'L', 'Z', 'A', 'P'};

namespace detail {

inline uint64_t header_size(size_t section_count) {
    return 5 + 1 + 1 + 1 + 7 * 4 + 4 + 8 + 8 + 8 + 4 + section_count * 20;
}

inline std::vector<uint8_t> write_container(Scheme scheme, uint8_t alphabet_tag,
                                            const ParseParams& params, uint64_t ref_checksum,
                                            uint64_t ref_len, uint64_t target_len,
                                            const std::vector<uint8_t>& body) {
    // Split the body back into its length-prefixed components to index them.
    std::vector<uint32_t> ids = section_ids_for(scheme);
    std::vector<SectionEntry> table;
    {
        ByteReader r(body);
        for (uint32_t id : ids) {
            SectionEntry e;
            e.id = id;
            e.offset = r.position();  // relative for now
            uint64_t len = r.get_u64();
            r.seek(r.position() + len);
            e.length = len + 8;
            table.push_back(e);
        }
        if (!r.at_end()) throw EncodingError("container: body does not match section plan");
    }

    ByteWriter w;
    w.put_bytes(kMagic, 5);
    w.put_u8(kFormatVersion);
    w.put_u8(static_cast<uint8_t>(scheme));
    w.put_u8(alphabet_tag);
    w.put_u32(params.delta_bits);
    w.put_u32(params.look_ahead);
    w.put_u32(params.min_explicit_length);
    w.put_u32(params.max_lit);
    w.put_u32(params.sample_interval);
    w.put_u32(params.chunk_len);
    w.put_u32(params.sigma_bits);
    // ceil(log2(look_ahead)) + 1: the naive adaptive-pointer width; stored for
    // inspection alongside delta_bits, which is what the deltas actually use.
    uint32_t ceil_log2 = params.look_ahead <= 1 ? 0 : bits_for(params.look_ahead - 1);
    w.put_u32(ceil_log2 + 1);
    w.put_u64(ref_checksum);
    w.put_u64(ref_len);
    w.put_u64(target_len);
    w.put_u32(static_cast<uint32_t>(table.size()));
    uint64_t base = header_size(table.size());
    for (const SectionEntry& e : table) {
        w.put_u32(e.id);
        w.put_u64(base + e.offset);
        w.put_u64(e.length);
    }
    w.put_bytes(body.data(), body.size());
    return w.take();
}

// Header + table parsing shared by info and the typed loaders.
inline ContainerInfo read_header(ByteReader& r, uint64_t file_bytes) {
    ContainerInfo info;
    info.file_bytes = file_bytes;
    std::vector<uint8_t> magic = r.get_bytes(5);
    for (int i = 0; i < 5; ++i)
        if (magic[i] != static_cast<uint8_t>(kMagic[i]))
            throw BadMagicError("container: bad magic bytes");
    info.version = r.get_u8();
    if (info.version != kFormatVersion)
        throw UnknownVersionError("container: unsupported format version " +
                                  std::to_string(info.version));
    uint8_t scheme = r.get_u8();
    if (scheme > 3) throw FormatError("container: unknown scheme tag");
    info.scheme = static_cast<Scheme>(scheme);
    info.alphabet_tag = r.get_u8();
    if (info.alphabet_tag > 1) throw FormatError("container: unknown alphabet tag");
    info.params.delta_bits = r.get_u32();
    info.params.look_ahead = r.get_u32();
    info.params.min_explicit_length = r.get_u32();
    info.params.max_lit = r.get_u32();
    info.params.sample_interval = r.get_u32();
    info.params.chunk_len = r.get_u32();
    info.params.sigma_bits = r.get_u32();
    info.adaptive_width_note = r.get_u32();
    try {
        info.params.validate();
    } catch (const InvalidInputError& e) {
        throw FormatError(std::string("container: bad parameters: ") + e.what());
    }
    info.ref_checksum = r.get_u64();
    info.ref_len = r.get_u64();
    info.target_len = r.get_u64();
    uint32_t section_count = r.get_u32();
    std::vector<uint32_t> expected = section_ids_for(info.scheme);
    if (section_count != expected.size())
        throw FormatError("container: unexpected section count");
    info.header_bytes = header_size(section_count);
    uint64_t cursor = info.header_bytes;
    for (uint32_t s = 0; s < section_count; ++s) {
        SectionEntry e;
        e.id = r.get_u32();
        e.offset = r.get_u64();
        e.length = r.get_u64();
        if (e.id != expected[s]) throw FormatError("container: unexpected section id");
        if (e.offset != cursor) throw FormatError("container: sections must be contiguous");
        if (e.length < 8) throw FormatError("container: section too short");
        if (e.length > file_bytes || e.offset > file_bytes - e.length)
            throw TruncatedError("container: section extends past end of file");
        cursor = e.offset + e.length;
        info.sections.push_back(e);
    }
    if (cursor != file_bytes) throw FormatError("container: trailing bytes after last section");
    return info;
}

}  // namespace detail

inline ContainerInfo read_container_info(std::span<const uint8_t> bytes) {
    ByteReader r(bytes);
    return detail::read_header(r, bytes.size());
}

// ---- typed save/load ----

template <typename Alphabet>
std::vector<uint8_t> save_archive(const RlzapArchive<Alphabet>& a) {
    ByteWriter body;
    a.serialize_body(body);
    return detail::write_container(Scheme::Rlzap, Alphabet::kTag, a.params(), a.ref_checksum(),
                                   a.ref_len(), a.target_len(), body.bytes());
}

template <typename Alphabet>
std::vector<uint8_t> save_archive(const RlzClassic<Alphabet>& a, uint64_t ref_checksum,
                                  uint64_t ref_len, const ParseParams& params = {}) {
    ByteWriter body;
    a.serialize_body(body);
    return detail::write_container(Scheme::Rlz, Alphabet::kTag, params, ref_checksum, ref_len,
                                   a.target_len(), body.bytes());
}

template <typename Alphabet>
std::vector<uint8_t> save_archive(const GdcParse<Alphabet>& a, uint64_t ref_checksum,
                                  const ParseParams& params = {}) {
    ByteWriter body;
    a.serialize_body(body);
    return detail::write_container(Scheme::Gdc, Alphabet::kTag, params, ref_checksum, a.ref_len(),
                                   a.target_len(), body.bytes());
}

template <typename Alphabet>
std::vector<uint8_t> save_archive(const RelPtrParse<Alphabet>& a, uint64_t ref_checksum,
                                  uint64_t ref_len, const ParseParams& params = {}) {
    ByteWriter body;
    a.serialize_body(body);
    return detail::write_container(Scheme::RelPtr, Alphabet::kTag, params, ref_checksum, ref_len,
                                   a.target_len(), body.bytes());
}

namespace detail {

inline ByteReader body_reader(std::span<const uint8_t> bytes, const ContainerInfo& info) {
    return ByteReader(bytes.subspan(info.header_bytes, info.file_bytes - info.header_bytes));
}

inline void expect(const ContainerInfo& info, Scheme scheme, uint8_t alphabet_tag) {
    if (info.scheme != scheme)
        throw FormatError(std::string("container: archive holds scheme '") +
                          scheme_name(info.scheme) + "', expected '" + scheme_name(scheme) + "'");
    if (info.alphabet_tag != alphabet_tag)
        throw FormatError("container: alphabet tag mismatch");
}

}  // namespace detail

template <typename Alphabet>
RlzapArchive<Alphabet> load_rlzap(std::span<const uint8_t> bytes) {
    ContainerInfo info = read_container_info(bytes);
    detail::expect(info, Scheme::Rlzap, Alphabet::kTag);
    ByteReader r = detail::body_reader(bytes, info);
    auto a = RlzapArchive<Alphabet>::deserialize_body(r, info.params, info.target_len,
                                                      info.ref_len, info.ref_checksum);
    if (!r.at_end()) throw FormatError("container: trailing bytes in body");
    return a;
}

template <typename Alphabet>
RlzClassic<Alphabet> load_rlz(std::span<const uint8_t> bytes) {
    ContainerInfo info = read_container_info(bytes);
    detail::expect(info, Scheme::Rlz, Alphabet::kTag);
    ByteReader r = detail::body_reader(bytes, info);
    auto a = RlzClassic<Alphabet>::deserialize_body(r, info.target_len, info.ref_len);
    if (!r.at_end()) throw FormatError("container: trailing bytes in body");
    return a;
}

template <typename Alphabet>
GdcParse<Alphabet> load_gdc(std::span<const uint8_t> bytes) {
    ContainerInfo info = read_container_info(bytes);
    detail::expect(info, Scheme::Gdc, Alphabet::kTag);
    ByteReader r = detail::body_reader(bytes, info);
    auto a = GdcParse<Alphabet>::deserialize_body(r, info.target_len, info.ref_len);
    if (!r.at_end()) throw FormatError("container: trailing bytes in body");
    return a;
}

template <typename Alphabet>
RelPtrParse<Alphabet> load_relptr(std::span<const uint8_t> bytes) {
    ContainerInfo info = read_container_info(bytes);
    detail::expect(info, Scheme::RelPtr, Alphabet::kTag);
    ByteReader r = detail::body_reader(bytes, info);
    auto a = RelPtrParse<Alphabet>::deserialize_body(r, info.target_len, info.ref_len);
    if (!r.at_end()) throw FormatError("container: trailing bytes in body");
    return a;
}

// ---- dataset ingestion ----

inline std::vector<uint8_t> read_file_bytes(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IngestError("cannot open file: " + path);
    in.seekg(0, std::ios::end);
    std::streamoff size = in.tellg();
    in.seekg(0, std::ios::beg);
    std::vector<uint8_t> bytes(static_cast<size_t>(size));
    if (size > 0) in.read(reinterpret_cast<char*>(bytes.data()), size);
    if (!in) throw IngestError("failed reading file: " + path);
    return bytes;
}

inline void write_file_bytes(const std::string& path, std::span<const uint8_t> bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IngestError("cannot open file for writing: " + path);
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IngestError("failed writing file: " + path);
}

// DNA datasets are raw byte sequences over {A,C,G,T,N}; lower case is
// normalised, anything else is a hard error with its offset.
inline std::vector<uint8_t> read_dna_dataset(const std::string& path) {
    std::vector<uint8_t> bytes = read_file_bytes(path);
    for (size_t i = 0; i < bytes.size(); ++i) {
        uint8_t c = bytes[i];
        if (c >= 'a' && c <= 'z') c = static_cast<uint8_t>(c - 'a' + 'A');
        switch (c) {
            case 'A': case 'C': case 'G': case 'T': case 'N':
                bytes[i] = c;
                break;
            default:
                throw IngestError(path + ": invalid symbol 0x" +
                                  [](uint8_t b) {
                                      char buf[3];
                                      std::snprintf(buf, sizeof buf, "%02x", b);
                                      return std::string(buf);
                                  }(bytes[i]) +
                                  " at offset " + std::to_string(i));
        }
    }
    return bytes;
}

// 32-bit little-endian signed integer arrays (differential LCP data).
inline std::vector<int32_t> read_i32_dataset(const std::string& path) {
    std::vector<uint8_t> bytes = read_file_bytes(path);
    if (bytes.size() % 4 != 0)
        throw IngestError(path + ": length " + std::to_string(bytes.size()) +
                          " is not a multiple of 4");
    std::vector<int32_t> out(bytes.size() / 4);
    for (size_t k = 0; k < out.size(); ++k) {
        uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= static_cast<uint32_t>(bytes[4 * k + i]) << (8 * i);
        out[k] = static_cast<int32_t>(v);
    }
    return out;
}

inline std::vector<uint8_t> i32_to_bytes(std::span<const int32_t> values) {
    std::vector<uint8_t> bytes;
    bytes.reserve(values.size() * 4);
    for (int32_t v : values) {
        uint32_t u = static_cast<uint32_t>(v);
        for (int i = 0; i < 4; ++i) bytes.push_back(static_cast<uint8_t>(u >> (8 * i)));
    }
    return bytes;
}

}  // namespace rlzap
