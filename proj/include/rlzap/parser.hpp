#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "rlzap/common.hpp"
#include "rlzap/matcher.hpp"

namespace rlzap {

/*
 * Parsing parameters.
 *
 *   delta_bits       width of an adaptive pointer delta (signed)
 *   look_ahead       how far the adaptive step scans for a restart
 *   min_explicit_length  matches longer than this may stand alone as explicit
 *   max_lit          bit width of per-phrase literal counts (1, 2, 4 or 8)
 *   sample_interval  literal-count prefix sum sampling stride
 *   chunk_len        chunk size of the DNA exception bitvector
 *   sigma_bits       bits per literal symbol, used by the cost test
 */
struct ParseParams {
    uint32_t delta_bits = 2;
    uint32_t look_ahead = 32;
    uint32_t min_explicit_length = 32;
    uint32_t max_lit = 4;
    uint32_t sample_interval = 64;
    uint32_t chunk_len = 32;
    uint32_t sigma_bits = 2;

    uint32_t max_literals_per_phrase() const { return (1u << max_lit) - 1; }

    void validate() const {
        if (delta_bits < 1 || delta_bits > 32)
            throw InvalidInputError("ParseParams: delta_bits must be in [1, 32]");
        if (look_ahead < 1) throw InvalidInputError("ParseParams: look_ahead must be >= 1");
        if (max_lit != 1 && max_lit != 2 && max_lit != 4 && max_lit != 8)
            throw InvalidInputError("ParseParams: max_lit must be 1, 2, 4 or 8");
        if (sample_interval == 0 || sample_interval % (8 / max_lit) != 0)
            throw InvalidInputError("ParseParams: sample_interval must be a positive multiple of 8/max_lit");
        if (chunk_len < 8 || chunk_len > 64)
            throw InvalidInputError("ParseParams: chunk_len must be in [8, 64]");
        if (sigma_bits < 1 || sigma_bits > 64)
            throw InvalidInputError("ParseParams: sigma_bits must be in [1, 64]");
    }
};

/*
 * One phrase: copy_len symbols copied from the reference followed by lit_len
 * verbatim symbols. Explicit phrases store their full relative offset;
 * adaptive phrases store a small delta against the most recent explicit
 * phrase's offset. Positions are 0-based.
 */
struct Phrase {
    uint64_t start = 0;
    uint64_t copy_len = 0;
    uint32_t lit_len = 0;
    bool is_explicit = false;
    int64_t pointer = 0;  // explicit: source - start; adaptive: delta vs. base

    uint64_t length() const { return copy_len + lit_len; }
};

template <typename Sym>
struct Parsing {
    std::vector<Phrase> phrases;
    std::vector<Sym> literals;  // all literal symbols in parse order
    uint64_t target_len = 0;
    ParseParams params;
};

// True iff delta fits a signed value of the given width, i.e. lies in
// [-2^(bits-1), 2^(bits-1) - 1].
inline bool fits_delta(int64_t delta, uint32_t bits) {
    if (bits >= 64) return true;
    int64_t lo = -(1ll << (bits - 1));
    int64_t hi = (1ll << (bits - 1)) - 1;
    return delta >= lo && delta <= hi;
}

// Cost test for starting an adaptive phrase: copying match_len symbols must
// beat spelling them out as literals, i.e. match_len * sigma_bits > delta_bits.
inline bool adaptive_worth(uint64_t match_len, const ParseParams& params) {
    return match_len * params.sigma_bits > params.delta_bits;
}

/*
 * Adaptive step at position i with the given base pointer: if i itself
 * qualifies (delta fits and the match is worth it) returns {0, i}; otherwise
 * returns {k - i, k} for the leftmost qualifying k within the look-ahead
 * window, the gap becoming literals. nullopt means fall through to the
 * explicit step.
 */
inline std::optional<std::pair<uint64_t, uint64_t>> try_adaptive_step(
    const MatchingStatistics& ms, uint64_t i, int64_t base_ptr, const ParseParams& params) {
    uint64_t n = ms.size();
    uint64_t last = std::min<uint64_t>(i + params.look_ahead, n > 0 ? n - 1 : 0);
    for (uint64_t k = i; k <= last && k < n; ++k) {
        if (fits_delta(ms.rel[k] - base_ptr, params.delta_bits) &&
            adaptive_worth(static_cast<uint64_t>(ms.len[k]), params))
            return std::make_pair(k - i, k);
    }
    return std::nullopt;
}

/*
 * Explicit step: scan forward from i for the first position k whose match
 * either exceeds min_explicit_length or is directly followed by a viable
 * adaptive phrase (anchored on k's own pointer). The gap becomes literals.
 * nullopt means no explicit phrase exists before the end of the target.
 */
inline std::optional<std::pair<uint64_t, uint64_t>> explicit_step(
    const MatchingStatistics& ms, uint64_t i, const ParseParams& params) {
    uint64_t n = ms.size();
    for (uint64_t k = i; k < n; ++k) {
        uint64_t len = static_cast<uint64_t>(ms.len[k]);
        if (len > params.min_explicit_length) return std::make_pair(k - i, k);
        if (len >= 1 && k + len < n &&
            try_adaptive_step(ms, k + len, ms.rel[k], params).has_value())
            return std::make_pair(k - i, k);
    }
    return std::nullopt;
}

namespace detail {

// Appends a literal run to the parse, filling the last phrase up to the cap
// and spilling the rest into zero-copy phrases. Spill phrases are adaptive
// with delta 0 once a base exists; a leading run with no phrase at all opens
// with a zero-copy explicit phrase at offset 0.
template <typename Sym>
void attach_literals(Parsing<Sym>& parsing, std::span<const Sym> target, uint64_t from,
                     uint64_t count) {
    if (count == 0) return;
    const uint32_t cap = parsing.params.max_literals_per_phrase();
    parsing.literals.insert(parsing.literals.end(), target.begin() + from,
                            target.begin() + from + count);
    uint64_t next_start = from;
    if (parsing.phrases.empty()) parsing.phrases.push_back(Phrase{from, 0, 0, true, 0});
    while (count > 0) {
        Phrase& last = parsing.phrases.back();
        uint32_t room = cap - last.lit_len;
        if (room == 0) {
            parsing.phrases.push_back(Phrase{next_start, 0, 0, false, 0});
            continue;
        }
        uint32_t take = static_cast<uint32_t>(std::min<uint64_t>(room, count));
        last.lit_len += take;
        next_start += take;
        count -= take;
    }
}

}  // namespace detail

/*
 * The one-pass parse: at each position try the adaptive step against the most
 * recent explicit pointer, fall back to the explicit step, and if neither
 * finds a phrase the remaining suffix is carried as literals.
 */
template <typename Sym>
Parsing<Sym> parse(const MatchingStatistics& ms, std::span<const Sym> target,
                   const ParseParams& params) {
    params.validate();
    Parsing<Sym> parsing;
    parsing.params = params;
    parsing.target_len = target.size();
    const uint64_t n = target.size();

    std::optional<int64_t> base;
    uint64_t i = 0;
    while (i < n) {
        if (base) {
            if (auto hit = try_adaptive_step(ms, i, *base, params)) {
                auto [lits, k] = *hit;
                detail::attach_literals(parsing, target, i, lits);
                parsing.phrases.push_back(
                    Phrase{k, static_cast<uint64_t>(ms.len[k]), 0, false, ms.rel[k] - *base});
                i = k + static_cast<uint64_t>(ms.len[k]);
                continue;
            }
        }
        if (auto hit = explicit_step(ms, i, params)) {
            auto [lits, k] = *hit;
            detail::attach_literals(parsing, target, i, lits);
            parsing.phrases.push_back(
                Phrase{k, static_cast<uint64_t>(ms.len[k]), 0, true, ms.rel[k]});
            base = static_cast<int64_t>(ms.rel[k]);
            i = k + static_cast<uint64_t>(ms.len[k]);
            continue;
        }
        detail::attach_literals(parsing, target, i, n - i);
        i = n;
    }
    return parsing;
}

template <typename Sym>
Parsing<Sym> parse(std::span<const Sym> target, std::span<const Sym> reference,
                   const ParseParams& params) {
    MatchingStatistics ms = matching_statistics(target, reference);
    return parse(ms, target, params);
}

template <typename Sym>
Parsing<Sym> parse(const std::vector<Sym>& target, const std::vector<Sym>& reference,
                   const ParseParams& params) {
    return parse<Sym>(std::span<const Sym>(target), std::span<const Sym>(reference), params);
}

// Inverse of parse: replay copies against the reference and splice literals
// back in. Doubles as the round-trip oracle for everything downstream.
template <typename Sym>
std::vector<Sym> decode_parsing(const Parsing<Sym>& parsing, std::span<const Sym> reference) {
    std::vector<Sym> out;
    out.reserve(parsing.target_len);
    int64_t base = 0;
    uint64_t lit_cursor = 0;
    for (const Phrase& ph : parsing.phrases) {
        int64_t offset;
        if (ph.is_explicit) {
            base = ph.pointer;
            offset = ph.pointer;
        } else {
            offset = base + ph.pointer;
        }
        if (ph.copy_len > 0) {
            int64_t src = static_cast<int64_t>(ph.start) + offset;
            if (src < 0 || src + static_cast<int64_t>(ph.copy_len) >
                               static_cast<int64_t>(reference.size()))
                throw CorruptError("decode_parsing: copy range outside reference");
            out.insert(out.end(), reference.begin() + src,
                       reference.begin() + src + static_cast<int64_t>(ph.copy_len));
        }
        if (ph.lit_len > 0) {
            if (lit_cursor + ph.lit_len > parsing.literals.size())
                throw CorruptError("decode_parsing: literal payload exhausted");
            out.insert(out.end(), parsing.literals.begin() + static_cast<int64_t>(lit_cursor),
                       parsing.literals.begin() + static_cast<int64_t>(lit_cursor + ph.lit_len));
            lit_cursor += ph.lit_len;
        }
    }
    if (out.size() != parsing.target_len)
        throw CorruptError("decode_parsing: phrases do not tile the target");
    return out;
}

template <typename Sym>
std::vector<Sym> decode_parsing(const Parsing<Sym>& parsing, const std::vector<Sym>& reference) {
    return decode_parsing(parsing, std::span<const Sym>(reference));
}

// Structural validity: exact tiling, first phrase explicit, literal caps,
// delta widths, and copy parts that really match the reference.
template <typename Sym>
void validate_parsing(const Parsing<Sym>& parsing, std::span<const Sym> target,
                      std::span<const Sym> reference) {
    const ParseParams& params = parsing.params;
    uint64_t pos = 0;
    uint64_t lit_total = 0;
    int64_t base = 0;
    bool seen_explicit = false;
    for (size_t idx = 0; idx < parsing.phrases.size(); ++idx) {
        const Phrase& ph = parsing.phrases[idx];
        if (ph.start != pos) throw CorruptError("validate_parsing: phrase start does not tile");
        if (ph.length() == 0) throw CorruptError("validate_parsing: empty phrase");
        if (ph.lit_len > params.max_literals_per_phrase())
            throw CorruptError("validate_parsing: literal run exceeds cap");
        if (idx == 0 && !ph.is_explicit)
            throw CorruptError("validate_parsing: first phrase must be explicit");
        int64_t offset;
        if (ph.is_explicit) {
            base = ph.pointer;
            offset = ph.pointer;
            seen_explicit = true;
        } else {
            if (!seen_explicit) throw CorruptError("validate_parsing: adaptive phrase before any explicit");
            if (!fits_delta(ph.pointer, params.delta_bits))
                throw CorruptError("validate_parsing: delta does not fit delta_bits");
            offset = base + ph.pointer;
        }
        for (uint64_t j = 0; j < ph.copy_len; ++j) {
            int64_t src = static_cast<int64_t>(ph.start + j) + offset;
            if (src < 0 || src >= static_cast<int64_t>(reference.size()))
                throw CorruptError("validate_parsing: copy source out of bounds");
            if (reference[src] != target[ph.start + j])
                throw CorruptError("validate_parsing: copy does not match reference");
        }
        lit_total += ph.lit_len;
        pos += ph.length();
    }
    if (pos != parsing.target_len || parsing.target_len != target.size())
        throw CorruptError("validate_parsing: phrases do not cover the target");
    if (lit_total != parsing.literals.size())
        throw CorruptError("validate_parsing: literal payload size mismatch");
}

}  // namespace rlzap
