#pragma once

// Independent reference implementations used as test oracles. Everything here
// is deliberately naive - linear scans, quadratic searches, straight-line
// transcriptions - and shares no code with the structures under test.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "rlzap/parser.hpp"

namespace oracle {

// Number of 1s among bits[0..i) of a plain bool vector.
inline uint64_t naive_rank(const std::vector<bool>& bits, uint64_t i) {
    uint64_t r = 0;
    for (uint64_t k = 0; k < i; ++k) r += bits[k] ? 1 : 0;
    return r;
}

// Position of the k-th (0-based) set bit; bits.size() if absent.
inline uint64_t naive_select(const std::vector<bool>& bits, uint64_t k) {
    for (uint64_t p = 0; p < bits.size(); ++p) {
        if (bits[p]) {
            if (k == 0) return p;
            --k;
        }
    }
    return bits.size();
}

inline uint64_t naive_prefix_sum(const std::vector<uint32_t>& counts, uint64_t j) {
    uint64_t s = 0;
    for (uint64_t k = 0; k < j; ++k) s += counts[k];
    return s;
}

// Quadratic matching statistics with smallest-source tie breaking.
template <typename Sym>
struct BruteMs {
    std::vector<int64_t> len;
    std::vector<int64_t> rel;
};

template <typename Sym>
BruteMs<Sym> brute_matching_statistics(std::span<const Sym> target,
                                       std::span<const Sym> reference) {
    BruteMs<Sym> ms;
    const int64_t n = static_cast<int64_t>(target.size());
    const int64_t m = static_cast<int64_t>(reference.size());
    ms.len.assign(target.size(), 0);
    ms.rel.assign(target.size(), 0);
    for (int64_t i = 0; i < n; ++i) {
        int64_t best = 0, witness = -1;
        for (int64_t k = 0; k < m; ++k) {
            int64_t l = 0;
            while (i + l < n && k + l < m && target[i + l] == reference[k + l]) ++l;
            if (l > best) {
                best = l;
                witness = k;
            }
        }
        ms.len[i] = best;
        ms.rel[i] = best > 0 ? witness - i : 0;
    }
    return ms;
}

// Straight-line transcription of the adaptive parsing procedure, driven by
// the quadratic matching statistics above. Kept independent of the library's
// parser so the two can check each other.
struct OraclePhrase {
    uint64_t start;
    uint64_t copy_len;
    uint32_t lit_len;
    bool is_explicit;
    int64_t pointer;
};

template <typename Sym>
struct OracleParse {
    std::vector<OraclePhrase> phrases;
    std::vector<Sym> literals;
};

template <typename Sym>
OracleParse<Sym> straightline_parse(std::span<const Sym> target, std::span<const Sym> reference,
                                    const rlzap::ParseParams& pp) {
    BruteMs<Sym> ms = brute_matching_statistics(target, reference);
    const int64_t n = static_cast<int64_t>(target.size());
    const int64_t cap = (1ll << pp.max_lit) - 1;
    OracleParse<Sym> out;

    auto fits = [&](int64_t d) {
        return d >= -(1ll << (pp.delta_bits - 1)) && d <= (1ll << (pp.delta_bits - 1)) - 1;
    };
    auto worth = [&](int64_t l) {
        return static_cast<uint64_t>(l) * pp.sigma_bits > pp.delta_bits;
    };
    auto adaptive_find = [&](int64_t j, int64_t base) -> int64_t {
        for (int64_t k = j; k <= j + static_cast<int64_t>(pp.look_ahead) && k < n; ++k)
            if (fits(ms.rel[k] - base) && worth(ms.len[k])) return k;
        return -1;
    };
    auto attach = [&](int64_t from, int64_t count) {
        if (count == 0) return;
        for (int64_t x = from; x < from + count; ++x) out.literals.push_back(target[x]);
        if (out.phrases.empty())
            out.phrases.push_back(OraclePhrase{static_cast<uint64_t>(from), 0, 0, true, 0});
        int64_t pos = from;
        while (count > 0) {
            int64_t room = cap - out.phrases.back().lit_len;
            if (room == 0) {
                out.phrases.push_back(OraclePhrase{static_cast<uint64_t>(pos), 0, 0, false, 0});
                continue;
            }
            int64_t take = std::min(room, count);
            out.phrases.back().lit_len += static_cast<uint32_t>(take);
            pos += take;
            count -= take;
        }
    };

    int64_t i = 0;
    bool have_base = false;
    int64_t base = 0;
    while (i < n) {
        if (have_base) {
            int64_t k = adaptive_find(i, base);
            if (k >= 0) {
                attach(i, k - i);
                out.phrases.push_back(OraclePhrase{static_cast<uint64_t>(k),
                                                   static_cast<uint64_t>(ms.len[k]), 0, false,
                                                   ms.rel[k] - base});
                i = k + ms.len[k];
                continue;
            }
        }
        int64_t e = -1;
        for (int64_t k = i; k < n; ++k) {
            if (ms.len[k] > static_cast<int64_t>(pp.min_explicit_length)) {
                e = k;
                break;
            }
            if (ms.len[k] >= 1 && k + ms.len[k] < n &&
                adaptive_find(k + ms.len[k], ms.rel[k]) >= 0) {
                e = k;
                break;
            }
        }
        if (e >= 0) {
            attach(i, e - i);
            out.phrases.push_back(OraclePhrase{static_cast<uint64_t>(e),
                                               static_cast<uint64_t>(ms.len[e]), 0, true,
                                               ms.rel[e]});
            base = ms.rel[e];
            have_base = true;
            i = e + ms.len[e];
        } else {
            attach(i, n - i);
            i = n;
        }
    }
    return out;
}

// Quadratic greedy factorizations for the baseline schemes.
template <typename Sym>
struct GreedyPhrase {
    uint64_t start;
    uint64_t match_len;
    uint64_t source;
};

// Longest match of target[p..] anywhere in the reference, smallest source.
template <typename Sym>
GreedyPhrase<Sym> longest_match_at(std::span<const Sym> target, std::span<const Sym> reference,
                                   uint64_t p) {
    GreedyPhrase<Sym> g{p, 0, 0};
    for (uint64_t k = 0; k < reference.size(); ++k) {
        uint64_t l = 0;
        while (p + l < target.size() && k + l < reference.size() &&
               target[p + l] == reference[k + l])
            ++l;
        if (l > g.match_len) {
            g.match_len = l;
            g.source = k;
        }
    }
    return g;
}

template <typename Sym>
std::vector<GreedyPhrase<Sym>> greedy_rlz_phrases(std::span<const Sym> target,
                                                  std::span<const Sym> reference) {
    std::vector<GreedyPhrase<Sym>> phrases;
    uint64_t p = 0;
    while (p < target.size()) {
        GreedyPhrase<Sym> g = longest_match_at(target, reference, p);
        phrases.push_back(g);
        p += g.match_len;  // match_len == 0 would loop; callers guarantee coverage
    }
    return phrases;
}

// Mismatch-terminated greedy phrases: (source, end position, terminator).
template <typename Sym>
struct GdcPhrase {
    uint64_t source;
    uint64_t end;  // inclusive position of the terminator
    Sym terminator;
};

template <typename Sym>
std::vector<GdcPhrase<Sym>> greedy_gdc_phrases(std::span<const Sym> target,
                                               std::span<const Sym> reference) {
    std::vector<GdcPhrase<Sym>> phrases;
    uint64_t p = 0;
    const uint64_t n = target.size();
    while (p < n) {
        GreedyPhrase<Sym> g = longest_match_at(target, reference, p);
        uint64_t len = std::min(g.match_len, n - 1 - p);
        phrases.push_back(GdcPhrase<Sym>{len > 0 ? g.source : p, p + len, target[p + len]});
        p += len + 1;
    }
    return phrases;
}

}  // namespace oracle
