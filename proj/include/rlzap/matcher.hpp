#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <vector>

#include "rlzap/common.hpp"
#include "rlzap/suffix_array.hpp"

namespace rlzap {

/*
 * Matching statistics of a target against a reference: for every target
 * position i, len[i] is the length of the longest common prefix between the
 * target suffix at i and any reference suffix, and rel[i] is k - i for the
 * smallest reference position k attaining it (0 when len[i] == 0, or when
 * several sources tie the smallest one is chosen).
 */
struct MatchingStatistics {
    std::vector<int32_t> len;
    std::vector<int32_t> rel;

    size_t size() const { return len.size(); }
};

namespace detail {

// Union-find over suffix-array slots carrying the minimum reference position
// present in each component. 32-bit throughout; inputs are capped at 2^31.
class WitnessForest {
public:
    explicit WitnessForest(std::vector<int32_t> min_ref)
        : parent_(min_ref.size()), min_ref_(std::move(min_ref)) {
        std::iota(parent_.begin(), parent_.end(), 0);
    }

    int32_t find(int32_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    void unite(int32_t a, int32_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        parent_[a] = b;
        min_ref_[b] = std::min(min_ref_[b], min_ref_[a]);
    }

    int32_t min_ref(int32_t x) { return min_ref_[find(x)]; }

private:
    std::vector<int32_t> parent_;
    std::vector<int32_t> min_ref_;
};

}  // namespace detail

/*
 * Computed over the concatenation reference + separator + target: one suffix
 * array, one LCP array, two directional scans for the maximal lengths, then a
 * descending-threshold union-find sweep to pick the smallest reference
 * position among all sources achieving the maximum. O((|R|+|S|) log) overall.
 */
template <typename Sym>
MatchingStatistics matching_statistics(std::span<const Sym> target, std::span<const Sym> reference) {
    if (reference.empty()) throw InvalidInputError("matching_statistics: empty reference");
    MatchingStatistics ms;
    const int64_t ns = static_cast<int64_t>(target.size());
    const int64_t nr = static_cast<int64_t>(reference.size());
    if (ns + nr + 1 > std::numeric_limits<int32_t>::max())
        throw InvalidInputError("matching_statistics: combined input exceeds 2^31 symbols");
    ms.len.assign(ns, 0);
    ms.rel.assign(ns, 0);
    if (ns == 0) return ms;

    // Dense-rank both sequences together; 0 is the unique separator.
    std::vector<int32_t> text(nr + 1 + ns);
    {
        std::vector<Sym> alphabet(reference.begin(), reference.end());
        alphabet.insert(alphabet.end(), target.begin(), target.end());
        std::sort(alphabet.begin(), alphabet.end());
        alphabet.erase(std::unique(alphabet.begin(), alphabet.end()), alphabet.end());
        auto code = [&](Sym s) {
            return static_cast<int32_t>(
                std::lower_bound(alphabet.begin(), alphabet.end(), s) - alphabet.begin() + 1);
        };
        for (int64_t i = 0; i < nr; ++i) text[i] = code(reference[i]);
        text[nr] = 0;
        for (int64_t i = 0; i < ns; ++i) text[nr + 1 + i] = code(target[i]);
    }

    const int64_t n = static_cast<int64_t>(text.size());
    std::vector<int32_t> sa = build_suffix_array(text);
    std::vector<int32_t> lcp = build_lcp_array(text, sa);

    auto is_ref = [&](int64_t slot) { return sa[slot] < nr; };
    auto target_index = [&](int64_t slot) -> int64_t {
        int64_t p = sa[slot];
        return p > nr ? p - nr - 1 : -1;
    };

    constexpr int32_t kInf = std::numeric_limits<int32_t>::max();

    // Forward scan: best match against the nearest reference suffix above.
    {
        int32_t running = -1;  // -1: no reference suffix seen yet
        for (int64_t q = 0; q < n; ++q) {
            if (q > 0 && running >= 0) running = std::min(running, lcp[q]);
            if (is_ref(q)) {
                running = kInf;
            } else {
                int64_t t = target_index(q);
                if (t >= 0 && running > ms.len[t]) ms.len[t] = std::min(running, kInf);
            }
        }
    }
    // Backward scan: nearest reference suffix below.
    {
        int32_t running = -1;
        for (int64_t q = n - 1; q >= 0; --q) {
            if (is_ref(q)) {
                running = kInf;
            } else {
                int64_t t = target_index(q);
                if (t >= 0 && running > ms.len[t]) ms.len[t] = running;
            }
            if (q > 0 && running >= 0) running = std::min(running, lcp[q]);
        }
    }

    // Witness sweep: merge adjacent suffix-array slots in decreasing LCP
    // order; once the threshold reaches a query's match length, its component
    // is exactly the set of suffixes sharing that prefix, and the smallest
    // reference position inside is the tie-broken witness.
    {
        std::vector<int32_t> min_ref(n, std::numeric_limits<int32_t>::max());
        for (int64_t q = 0; q < n; ++q)
            if (is_ref(q)) min_ref[q] = sa[q];
        detail::WitnessForest forest(std::move(min_ref));

        std::vector<int32_t> edges(n > 0 ? n - 1 : 0);
        std::iota(edges.begin(), edges.end(), 1);
        std::sort(edges.begin(), edges.end(),
                  [&](int32_t a, int32_t b) { return lcp[a] > lcp[b]; });

        std::vector<int32_t> queries;
        queries.reserve(ns);
        std::vector<int32_t> slot_of(ns);
        for (int64_t q = 0; q < n; ++q) {
            int64_t t = target_index(q);
            if (t >= 0) {
                slot_of[t] = static_cast<int32_t>(q);
                if (ms.len[t] > 0) queries.push_back(static_cast<int32_t>(t));
            }
        }
        std::sort(queries.begin(), queries.end(),
                  [&](int32_t a, int32_t b) { return ms.len[a] > ms.len[b]; });

        size_t e = 0;
        for (int32_t t : queries) {
            while (e < edges.size() && lcp[edges[e]] >= ms.len[t]) {
                forest.unite(edges[e] - 1, edges[e]);
                ++e;
            }
            ms.rel[t] = forest.min_ref(slot_of[t]) - t;
        }
    }
    return ms;
}

template <typename Sym>
MatchingStatistics matching_statistics(const std::vector<Sym>& target,
                                       const std::vector<Sym>& reference) {
    return matching_statistics(std::span<const Sym>(target), std::span<const Sym>(reference));
}

}  // namespace rlzap
