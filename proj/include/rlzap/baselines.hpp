#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rlzap/alphabet.hpp"
#include "rlzap/common.hpp"
#include "rlzap/dense_bitvector.hpp"
#include "rlzap/matcher.hpp"
#include "rlzap/packed_array.hpp"
#include "rlzap/sparse_bitvector.hpp"

namespace rlzap {

// Payload bit counts per component, excluding rank directories and container
// framing, so tiny worked examples compare layouts rather than constants.
struct BaselineSizes {
    uint64_t pointer_bits = 0;    // Q, or V for the run-length scheme
    uint64_t mismatch_bits = 0;   // M
    uint64_t bitvector_bits = 0;  // B (and L where present)
    uint64_t total() const { return pointer_bits + mismatch_bits + bitvector_bits; }
};

/*
 * Classic greedy reference parse: phrases exactly match reference substrings,
 * sources stored explicitly, phrase starts marked in a sparse bitvector.
 * Access: S[j] = R[Q[B.rank(j)] + j - B.select(B.rank(j))] in the 1-based
 * formulation; everything here is 0-based with the same meaning.
 */
template <typename Alphabet>
class RlzClassic {
public:
    using Sym = typename Alphabet::symbol_type;

    RlzClassic() = default;

    static RlzClassic build(const MatchingStatistics& ms, std::span<const Sym> target,
                            uint64_t ref_len) {
        RlzClassic x;
        x.target_len_ = target.size();
        x.ref_len_ = ref_len;
        std::vector<uint64_t> starts, sources;
        uint64_t p = 0;
        while (p < target.size()) {
            int64_t len = ms.len[p];
            if (len == 0)
                throw InvalidInputError("rlz_parse: target symbol does not occur in the reference");
            starts.push_back(p);
            sources.push_back(static_cast<uint64_t>(static_cast<int64_t>(p) + ms.rel[p]));
            p += static_cast<uint64_t>(len);
        }
        x.starts_.build(target.size(), starts);
        x.sources_ = PackedArray::pack(bits_for(ref_len ? ref_len - 1 : 0), sources);
        return x;
    }

    static RlzClassic build(std::span<const Sym> target, std::span<const Sym> reference) {
        MatchingStatistics ms = matching_statistics(target, reference);
        return build(ms, target, reference.size());
    }

    Sym access(std::span<const Sym> reference, uint64_t j) const {
        if (j >= target_len_) throw RangeError("rlz_access: position out of range");
        uint64_t phrase = starts_.rank(j + 1) - 1;
        uint64_t start = starts_.select(phrase);
        return reference[sources_.get(phrase) + (j - start)];
    }

    std::vector<Sym> extract(std::span<const Sym> reference, uint64_t i, uint64_t len) const {
        if (len == 0) return {};
        if (i >= target_len_ || len > target_len_ - i)
            throw RangeError("rlz extract: range out of bounds");
        std::vector<Sym> out;
        out.reserve(len);
        uint64_t p = starts_.rank(i + 1) - 1;
        uint64_t start = starts_.select(p);
        uint64_t pos = i;
        const uint64_t end = i + len;
        while (pos < end) {
            uint64_t next = p + 1 < phrase_count() ? starts_.select(p + 1) : target_len_;
            uint64_t q = sources_.get(p);
            while (pos < end && pos < next) {
                out.push_back(reference[q + (pos - start)]);
                ++pos;
            }
            start = next;
            ++p;
        }
        return out;
    }

    uint64_t phrase_count() const { return sources_.size(); }
    uint64_t target_len() const { return target_len_; }
    const SparseBitvector& phrase_starts() const { return starts_; }
    uint64_t source(uint64_t phrase) const { return sources_.get(phrase); }

    BaselineSizes size_bits() const {
        BaselineSizes s;
        s.pointer_bits = sources_.size_in_bits();
        s.bitvector_bits = target_len_;  // B spans the target
        return s;
    }

    void serialize_body(ByteWriter& w) const {
        write_component(w, starts_);
        write_component(w, sources_);
    }

    static RlzClassic deserialize_body(ByteReader& r, uint64_t target_len, uint64_t ref_len) {
        RlzClassic x;
        x.target_len_ = target_len;
        x.ref_len_ = ref_len;
        x.starts_ = read_component<SparseBitvector>(r);
        x.sources_ = read_component<PackedArray>(r);
        if (x.starts_.num_ones() != x.sources_.size())
            throw FormatError("rlz archive: phrase count mismatch");
        if (x.starts_.universe() != target_len)
            throw FormatError("rlz archive: bitvector universe mismatch");
        return x;
    }

private:
    SparseBitvector starts_;
    PackedArray sources_;
    uint64_t target_len_ = 0;
    uint64_t ref_len_ = 0;
};

/*
 * Mismatch-terminated parse: each phrase is a maximal reference match plus
 * one stored terminator symbol (the final phrase included). B marks phrase
 * ends; M holds the terminators in the alphabet's literal store.
 */
template <typename Alphabet>
class GdcParse {
public:
    using Sym = typename Alphabet::symbol_type;
    using Store = typename Alphabet::literal_store_type;

    GdcParse() = default;

    static GdcParse build(const MatchingStatistics& ms, std::span<const Sym> target,
                          uint64_t ref_len, const ParseParams& params = {}) {
        std::vector<uint64_t> sources, ends;
        std::vector<Sym> mismatches;
        uint64_t p = 0;
        const uint64_t n = target.size();
        while (p < n) {
            uint64_t len = std::min<uint64_t>(static_cast<uint64_t>(ms.len[p]), n - 1 - p);
            // Zero-length matches still form a phrase: bare terminator.
            uint64_t q = len > 0 ? static_cast<uint64_t>(static_cast<int64_t>(p) + ms.rel[p]) : p;
            sources.push_back(q);
            mismatches.push_back(target[p + len]);
            ends.push_back(p + len);
            p += len + 1;
        }
        return from_phrases(sources, ends, mismatches, n, ref_len, params);
    }

    static GdcParse build(std::span<const Sym> target, std::span<const Sym> reference,
                          const ParseParams& params = {}) {
        MatchingStatistics ms = matching_statistics(target, reference);
        return build(ms, target, reference.size(), params);
    }

    // Assemble directly from phrase data (sources, inclusive end positions,
    // terminator symbols); also the entry point for the run-length scheme.
    static GdcParse from_phrases(std::span<const uint64_t> sources,
                                 std::span<const uint64_t> ends, std::span<const Sym> mismatches,
                                 uint64_t target_len, uint64_t ref_len,
                                 const ParseParams& params = {}) {
        GdcParse x;
        x.target_len_ = target_len;
        x.ref_len_ = ref_len;
        x.sources_ = PackedArray::pack(bits_for(ref_len ? ref_len - 1 : 0), sources);
        x.ends_.build(target_len, ends);
        x.mismatches_ = Alphabet::build_literals(mismatches, params);
        return x;
    }

    Sym access(std::span<const Sym> reference, uint64_t j) const {
        if (j >= target_len_) throw RangeError("gdc_access: position out of range");
        // 1-based: S[j] = M[B.rank(j)] if B[j]=1, else
        // R[Q[B.rank(j)+1] + j - B.select(B.rank(j)) - 1] with B.select(0)=0.
        uint64_t before = ends_.rank(j);  // phrases ending strictly before j
        if (ends_.contains(j)) return Alphabet::literal_at(mismatches_, before);
        uint64_t phrase_start = before == 0 ? 0 : ends_.select(before - 1) + 1;
        return reference[sources_.get(before) + (j - phrase_start)];
    }

    std::vector<Sym> extract(std::span<const Sym> reference, uint64_t i, uint64_t len) const {
        if (len == 0) return {};
        if (i >= target_len_ || len > target_len_ - i)
            throw RangeError("gdc extract: range out of bounds");
        std::vector<Sym> out;
        out.reserve(len);
        uint64_t p = ends_.rank(i);  // phrase index containing i
        uint64_t start = p == 0 ? 0 : ends_.select(p - 1) + 1;
        uint64_t pos = i;
        const uint64_t end = i + len;
        while (pos < end) {
            uint64_t phrase_end = ends_.select(p);  // inclusive, position of the terminator
            uint64_t q = sources_.get(p);
            while (pos < end && pos < phrase_end) {
                out.push_back(reference[q + (pos - start)]);
                ++pos;
            }
            if (pos < end && pos == phrase_end) {
                out.push_back(Alphabet::literal_at(mismatches_, p));
                ++pos;
            }
            start = phrase_end + 1;
            ++p;
        }
        return out;
    }

    uint64_t phrase_count() const { return sources_.size(); }
    uint64_t target_len() const { return target_len_; }
    uint64_t ref_len() const { return ref_len_; }
    uint64_t source(uint64_t phrase) const { return sources_.get(phrase); }
    Sym mismatch(uint64_t phrase) const { return Alphabet::literal_at(mismatches_, phrase); }
    const SparseBitvector& phrase_ends() const { return ends_; }

    // Phrase start positions, reconstructed from the end marks.
    uint64_t phrase_start(uint64_t phrase) const {
        return phrase == 0 ? 0 : ends_.select(phrase - 1) + 1;
    }

    BaselineSizes size_bits() const {
        BaselineSizes s;
        s.pointer_bits = sources_.size_in_bits();
        s.mismatch_bits = mismatches_.size_in_bits();
        s.bitvector_bits = target_len_;
        return s;
    }

    void serialize_body(ByteWriter& w) const {
        write_component(w, sources_);
        write_component(w, ends_);
        write_component(w, mismatches_);
    }

    static GdcParse deserialize_body(ByteReader& r, uint64_t target_len, uint64_t ref_len) {
        GdcParse x;
        x.target_len_ = target_len;
        x.ref_len_ = ref_len;
        x.sources_ = read_component<PackedArray>(r);
        x.ends_ = read_component<SparseBitvector>(r);
        x.mismatches_ = read_component<Store>(r);
        if (x.ends_.num_ones() != x.sources_.size() || x.mismatches_.size() != x.sources_.size())
            throw FormatError("gdc archive: phrase count mismatch");
        if (x.ends_.universe() != target_len)
            throw FormatError("gdc archive: bitvector universe mismatch");
        return x;
    }

private:
    PackedArray sources_;
    SparseBitvector ends_;
    Store mismatches_;
    uint64_t target_len_ = 0;
    uint64_t ref_len_ = 0;
};

/*
 * The run-length relative-pointer layout over a mismatch-terminated parse:
 * the per-phrase source offsets D[k] = q_k - p_k are stored as one value per
 * maximal run (V, zig-zag at minimal width) plus a bitvector L marking run
 * heads, so D[k] = V[L.rank(k)]. M and B are as in the underlying parse.
 */
template <typename Alphabet>
class RelPtrParse {
public:
    using Sym = typename Alphabet::symbol_type;
    using Store = typename Alphabet::literal_store_type;

    RelPtrParse() = default;

    static RelPtrParse build(const GdcParse<Alphabet>& g, const ParseParams& params = {}) {
        RelPtrParse x;
        x.target_len_ = g.target_len();
        x.ref_len_ = g.ref_len();
        const uint64_t t = g.phrase_count();
        std::vector<int64_t> run_values;
        DenseBitvector run_heads(t);
        for (uint64_t k = 0; k < t; ++k) {
            int64_t d = static_cast<int64_t>(g.source(k)) - static_cast<int64_t>(g.phrase_start(k));
            if (run_values.empty() || run_values.back() != d) {
                run_values.push_back(d);
                run_heads.set(k);
            }
        }
        run_heads.finish();
        x.run_values_ = pack_signed(signed_width_for(run_values), run_values);
        x.run_heads_ = std::move(run_heads);

        std::vector<uint64_t> ends(t);
        std::vector<Sym> mismatches(t);
        for (uint64_t k = 0; k < t; ++k) {
            ends[k] = g.phrase_ends().select(k);
            mismatches[k] = g.mismatch(k);
        }
        x.ends_.build(g.target_len(), ends);
        x.mismatches_ = Alphabet::build_literals(mismatches, params);
        return x;
    }

    // D[k] = V[L.rank(k)] (1-based); with 0-based rank this is rank(k + 1) - 1.
    int64_t rel_pointer(uint64_t k) const {
        return get_signed(run_values_, run_heads_.rank(k + 1) - 1);
    }

    Sym access(std::span<const Sym> reference, uint64_t j) const {
        if (j >= target_len_) throw RangeError("relptr_access: position out of range");
        uint64_t before = ends_.rank(j);
        if (ends_.contains(j)) return Alphabet::literal_at(mismatches_, before);
        return reference[static_cast<uint64_t>(rel_pointer(before) + static_cast<int64_t>(j))];
    }

    std::vector<Sym> extract(std::span<const Sym> reference, uint64_t i, uint64_t len) const {
        if (len == 0) return {};
        if (i >= target_len_ || len > target_len_ - i)
            throw RangeError("relptr extract: range out of bounds");
        std::vector<Sym> out;
        out.reserve(len);
        uint64_t p = ends_.rank(i);
        uint64_t pos = i;
        const uint64_t end = i + len;
        while (pos < end) {
            uint64_t phrase_end = ends_.select(p);
            int64_t d = rel_pointer(p);
            while (pos < end && pos < phrase_end) {
                out.push_back(reference[static_cast<uint64_t>(d + static_cast<int64_t>(pos))]);
                ++pos;
            }
            if (pos < end && pos == phrase_end) {
                out.push_back(Alphabet::literal_at(mismatches_, p));
                ++pos;
            }
            ++p;
        }
        return out;
    }

    uint64_t phrase_count() const { return ends_.num_ones(); }
    uint64_t run_count() const { return run_values_.size(); }
    uint64_t target_len() const { return target_len_; }
    const PackedArray& run_values() const { return run_values_; }
    const DenseBitvector& run_heads() const { return run_heads_; }

    BaselineSizes size_bits() const {
        BaselineSizes s;
        s.pointer_bits = run_values_.size_in_bits();
        s.mismatch_bits = mismatches_.size_in_bits();
        s.bitvector_bits = target_len_ + run_heads_.size();  // B plus L
        return s;
    }

    void serialize_body(ByteWriter& w) const {
        write_component(w, run_values_);
        write_component(w, run_heads_);
        write_component(w, ends_);
        write_component(w, mismatches_);
    }

    static RelPtrParse deserialize_body(ByteReader& r, uint64_t target_len, uint64_t ref_len) {
        RelPtrParse x;
        x.target_len_ = target_len;
        x.ref_len_ = ref_len;
        x.run_values_ = read_component<PackedArray>(r);
        x.run_heads_ = read_component<DenseBitvector>(r);
        x.ends_ = read_component<SparseBitvector>(r);
        x.mismatches_ = read_component<Store>(r);
        if (x.run_heads_.num_ones() != x.run_values_.size())
            throw FormatError("relptr archive: run table size mismatch");
        if (x.ends_.num_ones() != x.mismatches_.size() || x.run_heads_.size() != x.mismatches_.size())
            throw FormatError("relptr archive: phrase count mismatch");
        if (x.ends_.universe() != target_len)
            throw FormatError("relptr archive: bitvector universe mismatch");
        return x;
    }

private:
    PackedArray run_values_;
    DenseBitvector run_heads_;
    SparseBitvector ends_;
    Store mismatches_;
    uint64_t target_len_ = 0;
    uint64_t ref_len_ = 0;
};

}  // namespace rlzap
