#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "rlzap/alphabet.hpp"
#include "rlzap/common.hpp"
#include "rlzap/dense_bitvector.hpp"
#include "rlzap/literal_counter.hpp"
#include "rlzap/packed_array.hpp"
#include "rlzap/parser.hpp"
#include "rlzap/sparse_bitvector.hpp"

namespace rlzap {

// Everything access() needs to know about the phrase containing a position.
struct PhraseView {
    uint64_t index = 0;      // 0-based phrase number
    uint64_t start = 0;      // first target position of the phrase
    uint64_t length = 0;     // copy part + literal run
    uint32_t lit_len = 0;
    bool is_explicit = false;
    int64_t rel = 0;         // effective relative pointer
};

struct ArchiveStats {
    uint64_t target_len = 0;
    uint64_t phrase_count = 0;
    uint64_t explicit_count = 0;
    uint64_t adaptive_count = 0;
    uint64_t literal_count = 0;
    uint64_t phrase_bv_bits = 0;
    uint64_t explicit_bv_bits = 0;
    uint64_t explicit_ptr_bits = 0;
    uint64_t adaptive_delta_bits = 0;
    uint64_t counter_bits = 0;
    uint64_t literal_bits = 0;

    uint64_t total_bits() const {
        return phrase_bv_bits + explicit_bv_bits + explicit_ptr_bits + adaptive_delta_bits +
               counter_bits + literal_bits;
    }
    double bits_per_symbol() const {
        return target_len ? static_cast<double>(total_bits()) / static_cast<double>(target_len) : 0.0;
    }
};

/*
 * Succinct encoding of a parsing with random access.
 *
 * A sparse bitvector marks phrase starts over the target; a plain bitvector
 * marks which phrases are explicit. Explicit pointers live zig-zag coded in a
 * packed table at ceil(log2(|R|+|S|)) + 1 bits; adaptive deltas in a packed
 * table at delta_bits. Per-phrase literal counts go to the sampled counter
 * and the literal symbols to the alphabet's store. Immutable once built;
 * concurrent readers need no synchronisation.
 */
template <typename Alphabet>
class RlzapArchive {
public:
    using Sym = typename Alphabet::symbol_type;

    RlzapArchive() = default;

    static RlzapArchive encode(const Parsing<Sym>& parsing, std::span<const Sym> literals,
                               uint64_t ref_len, uint64_t ref_checksum) {
        parsing.params.validate();
        RlzapArchive a;
        a.params_ = parsing.params;
        a.target_len_ = parsing.target_len;
        a.ref_len_ = ref_len;
        a.ref_checksum_ = ref_checksum;

        const uint64_t m = parsing.phrases.size();
        std::vector<uint64_t> starts;
        starts.reserve(m);
        std::vector<int64_t> explicit_ptrs;
        std::vector<int64_t> deltas;
        std::vector<uint32_t> counts;
        counts.reserve(m);
        DenseBitvector explicit_bv(m);

        const uint32_t cap = parsing.params.max_literals_per_phrase();
        for (uint64_t p = 0; p < m; ++p) {
            const Phrase& ph = parsing.phrases[p];
            starts.push_back(ph.start);
            counts.push_back(ph.lit_len);
            if (ph.lit_len > cap)
                throw EncodingError("encode: literal count exceeds 2^max_lit - 1");
            if (ph.is_explicit) {
                explicit_bv.set(p);
                explicit_ptrs.push_back(ph.pointer);
            } else {
                if (!fits_delta(ph.pointer, parsing.params.delta_bits))
                    throw EncodingError("encode: adaptive delta does not fit delta_bits");
                deltas.push_back(ph.pointer);
            }
        }
        if (m > 0 && !parsing.phrases.front().is_explicit)
            throw EncodingError("encode: first phrase must be explicit");
        explicit_bv.finish();

        a.phrase_bv_.build(parsing.target_len, starts);
        a.explicit_bv_ = std::move(explicit_bv);
        uint32_t ptr_width = bits_for(ref_len + parsing.target_len) + 1;
        for (int64_t v : explicit_ptrs)
            if (bits_for(zigzag_encode(v)) > ptr_width)
                throw EncodingError("encode: explicit pointer exceeds coded width");
        a.explicit_ptrs_ = pack_signed(ptr_width, explicit_ptrs);
        a.adaptive_deltas_ = pack_signed(parsing.params.delta_bits, deltas);
        a.counts_ = LiteralCounter(counts, parsing.params.max_lit, parsing.params.sample_interval);
        a.literals_ = Alphabet::build_literals(literals, parsing.params);
        a.check_consistency();
        return a;
    }

    static RlzapArchive encode(const Parsing<Sym>& parsing, uint64_t ref_len,
                               uint64_t ref_checksum) {
        return encode(parsing, std::span<const Sym>(parsing.literals), ref_len, ref_checksum);
    }

    uint64_t target_len() const { return target_len_; }
    uint64_t ref_len() const { return ref_len_; }
    uint64_t ref_checksum() const { return ref_checksum_; }
    const ParseParams& params() const { return params_; }
    uint64_t phrase_count() const { return explicit_bv_.size(); }

    // Phrase containing position i (0-based). One sparse rank, one sparse
    // select, one dense rank.
    PhraseView phrase_of(uint64_t i) const {
        if (i >= target_len_) throw RangeError("RlzapArchive::phrase_of: position out of range");
        PhraseView v;
        v.index = phrase_bv_.rank(i + 1) - 1;
        v.start = phrase_bv_.select(v.index);
        uint64_t next = v.index + 1 < phrase_count() ? phrase_bv_.select(v.index + 1) : target_len_;
        v.length = next - v.start;
        v.lit_len = counts_.get(v.index);
        fill_pointer(v);
        return v;
    }

    int64_t rel_pointer(const PhraseView& v) const { return v.rel; }

    // Single symbol access.
    Sym access(std::span<const Sym> reference, uint64_t i) const {
        PhraseView v = phrase_of(i);
        uint64_t copy_len = v.length - v.lit_len;
        if (i >= v.start + copy_len) {
            uint64_t lit_index = counts_.prefix_sum(v.index) + (i - (v.start + copy_len));
            return Alphabet::literal_at(literals_, lit_index);
        }
        return ref_symbol(reference, static_cast<int64_t>(i) + v.rel);
    }

    // Range extraction: one sparse rank up front, then phrase starts come
    // from select alone as the walk advances.
    std::vector<Sym> extract(std::span<const Sym> reference, uint64_t i, uint64_t len) const {
        if (len == 0) return {};
        if (i >= target_len_ || len > target_len_ - i)
            throw RangeError("RlzapArchive::extract: range out of bounds");
        std::vector<Sym> out;
        out.reserve(len);

        uint64_t p = phrase_bv_.rank(i + 1) - 1;  // the only rank on the phrase bitvector
        uint64_t start = phrase_bv_.select(p);
        uint64_t lit_base = counts_.prefix_sum(p);
        const uint64_t end = i + len;
        uint64_t pos = i;
        while (pos < end) {
            uint64_t next = p + 1 < phrase_count() ? phrase_bv_.select(p + 1) : target_len_;
            PhraseView v;
            v.index = p;
            v.start = start;
            v.length = next - start;
            v.lit_len = counts_.get(p);
            fill_pointer(v);
            uint64_t copy_end = start + (v.length - v.lit_len);
            while (pos < end && pos < copy_end) {
                out.push_back(ref_symbol(reference, static_cast<int64_t>(pos) + v.rel));
                ++pos;
            }
            while (pos < end && pos < next) {
                out.push_back(Alphabet::literal_at(literals_, lit_base + (pos - copy_end)));
                ++pos;
            }
            lit_base += v.lit_len;
            start = next;
            ++p;
        }
        return out;
    }

    bool matches_reference(std::span<const Sym> reference) const {
        return Alphabet::checksum(reference) == ref_checksum_ && reference.size() == ref_len_;
    }

    void require_reference(std::span<const Sym> reference) const {
        if (!matches_reference(reference))
            throw ChecksumMismatchError("archive was built against a different reference");
    }

    ArchiveStats stats() const {
        ArchiveStats s;
        s.target_len = target_len_;
        s.phrase_count = phrase_count();
        s.explicit_count = explicit_bv_.num_ones();
        s.adaptive_count = s.phrase_count - s.explicit_count;
        s.literal_count = counts_.total();
        s.phrase_bv_bits = phrase_bv_.size_in_bits();
        s.explicit_bv_bits = explicit_bv_.size_in_bits();
        s.explicit_ptr_bits = explicit_ptrs_.size_in_bits();
        s.adaptive_delta_bits = adaptive_deltas_.size_in_bits();
        s.counter_bits = counts_.size_in_bits();
        s.literal_bits = literals_.size_in_bits();
        return s;
    }

    // Component accessors (inspection and tests).
    const SparseBitvector& phrase_bv() const { return phrase_bv_; }
    const DenseBitvector& explicit_bv() const { return explicit_bv_; }
    const PackedArray& explicit_ptrs() const { return explicit_ptrs_; }
    const PackedArray& adaptive_deltas() const { return adaptive_deltas_; }
    const LiteralCounter& counts() const { return counts_; }
    const typename Alphabet::literal_store_type& literals() const { return literals_; }

    // One length-prefixed component per section, in fixed order.
    void serialize_body(ByteWriter& w) const {
        write_component(w, phrase_bv_);
        write_component(w, explicit_bv_);
        write_component(w, explicit_ptrs_);
        write_component(w, adaptive_deltas_);
        write_component(w, counts_);
        write_component(w, literals_);
    }

    static RlzapArchive deserialize_body(ByteReader& r, const ParseParams& params,
                                         uint64_t target_len, uint64_t ref_len,
                                         uint64_t ref_checksum) {
        RlzapArchive a;
        a.params_ = params;
        a.target_len_ = target_len;
        a.ref_len_ = ref_len;
        a.ref_checksum_ = ref_checksum;
        a.phrase_bv_ = read_component<SparseBitvector>(r);
        a.explicit_bv_ = read_component<DenseBitvector>(r);
        a.explicit_ptrs_ = read_component<PackedArray>(r);
        a.adaptive_deltas_ = read_component<PackedArray>(r);
        a.counts_ = read_component<LiteralCounter>(r);
        a.literals_ = read_component<typename Alphabet::literal_store_type>(r);
        if (a.counts_.max_lit() != params.max_lit)
            throw FormatError("archive: counter max_lit disagrees with header parameters");
        a.check_consistency();
        return a;
    }

private:
    void fill_pointer(PhraseView& v) const {
        uint64_t expl_upto = explicit_bv_.rank(v.index + 1);  // explicit phrases <= index
        v.is_explicit = explicit_bv_.get(v.index);
        int64_t base = get_signed(explicit_ptrs_, expl_upto - 1);
        if (v.is_explicit) {
            v.rel = base;
        } else {
            uint64_t adaptive_idx = v.index + 1 - expl_upto - 1;
            v.rel = base + get_signed(adaptive_deltas_, adaptive_idx);
        }
    }

    Sym ref_symbol(std::span<const Sym> reference, int64_t pos) const {
        if (pos < 0 || pos >= static_cast<int64_t>(reference.size()))
            throw CorruptError("RlzapArchive: copy offset escapes the reference");
        return reference[static_cast<uint64_t>(pos)];
    }

    void check_consistency() const {
        const uint64_t m = explicit_bv_.size();
        if (phrase_bv_.num_ones() != m)
            throw FormatError("archive: phrase mark count disagrees with phrase count");
        if (phrase_bv_.universe() != target_len_)
            throw FormatError("archive: phrase bitvector universe disagrees with target length");
        if (explicit_bv_.num_ones() != explicit_ptrs_.size())
            throw FormatError("archive: explicit pointer table size mismatch");
        if (m - explicit_bv_.num_ones() != adaptive_deltas_.size())
            throw FormatError("archive: adaptive delta table size mismatch");
        if (counts_.size() != m)
            throw FormatError("archive: literal counter size mismatch");
        if (counts_.total() != literals_.size())
            throw FormatError("archive: literal store size disagrees with counts");
        if (m > 0 && !explicit_bv_.get(0))
            throw FormatError("archive: first phrase is not explicit");
        if (m > 0 && phrase_bv_.select(0) != 0)
            throw FormatError("archive: first phrase does not start the target");
    }

    SparseBitvector phrase_bv_;
    DenseBitvector explicit_bv_;
    PackedArray explicit_ptrs_;
    PackedArray adaptive_deltas_;
    LiteralCounter counts_;
    typename Alphabet::literal_store_type literals_;
    ParseParams params_;
    uint64_t target_len_ = 0;
    uint64_t ref_len_ = 0;
    uint64_t ref_checksum_ = 0;
};

}  // namespace rlzap
