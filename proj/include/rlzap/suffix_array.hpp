#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <span>
#include <vector>

#include "rlzap/common.hpp"

namespace rlzap {

/*
 * Suffix array by prefix doubling with two-pass counting sorts: O(n log n),
 * and in practice far fewer rounds because ranks become distinct as soon as
 * the doubling length passes the longest repeat. Input is any int32 sequence;
 * values are remapped to dense ranks first. Good to n < 2^31.
 */
inline std::vector<int32_t> build_suffix_array(std::span<const int32_t> text) {
    const int32_t n = static_cast<int32_t>(text.size());
    std::vector<int32_t> sa(n), rank(n), tmp_rank(n), tmp_sa(n), bucket;
    if (n == 0) return sa;

    // Initial ranks: dense remap of symbol values.
    {
        std::vector<int32_t> sorted(text.begin(), text.end());
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        for (int32_t i = 0; i < n; ++i)
            rank[i] = static_cast<int32_t>(
                std::lower_bound(sorted.begin(), sorted.end(), text[i]) - sorted.begin());
    }

    bucket.assign(static_cast<size_t>(n) + 1, 0);
    auto stable_sort_by_rank = [&](const std::vector<int32_t>& src, std::vector<int32_t>& dst) {
        std::fill(bucket.begin(), bucket.end(), 0);
        for (int32_t i = 0; i < n; ++i) bucket[rank[i]]++;
        int32_t sum = 0;
        for (int32_t r = 0; r <= n; ++r) {
            int32_t c = bucket[r];
            bucket[r] = sum;
            sum += c;
        }
        for (int32_t i = 0; i < n; ++i) dst[bucket[rank[src[i]]]++] = src[i];
    };

    std::iota(tmp_sa.begin(), tmp_sa.end(), 0);
    stable_sort_by_rank(tmp_sa, sa);

    for (int32_t k = 1; rank[sa[n - 1]] != n - 1; k <<= 1) {
        // Order by the second key rank[i + k]: suffixes with i + k >= n have
        // no second key and come first; the rest follow by walking the
        // rank-ordered sa shifted left by k.
        int32_t fill = 0;
        for (int32_t i = std::max(0, n - k); i < n; ++i) tmp_sa[fill++] = i;
        for (int32_t i = 0; i < n; ++i) {
            int32_t j = sa[i] - k;
            if (j >= 0) tmp_sa[fill++] = j;
        }
        // Stable sort by first key completes the pair sort.
        stable_sort_by_rank(tmp_sa, sa);

        tmp_rank[sa[0]] = 0;
        auto key = [&](int32_t i) {
            return std::pair<int32_t, int32_t>(rank[i], i + k < n ? rank[i + k] : -1);
        };
        for (int32_t i = 1; i < n; ++i)
            tmp_rank[sa[i]] = tmp_rank[sa[i - 1]] + (key(sa[i - 1]) != key(sa[i]) ? 1 : 0);
        rank.swap(tmp_rank);
    }
    return sa;
}

// Kasai's algorithm: lcp[j] = LCP(text[sa[j-1]..], text[sa[j]..]), lcp[0] = 0.
inline std::vector<int32_t> build_lcp_array(std::span<const int32_t> text,
                                            std::span<const int32_t> sa) {
    const int32_t n = static_cast<int32_t>(text.size());
    std::vector<int32_t> isa(n), lcp(n, 0);
    for (int32_t i = 0; i < n; ++i) isa[sa[i]] = i;
    int32_t h = 0;
    for (int32_t i = 0; i < n; ++i) {
        if (isa[i] == 0) {
            h = 0;
            continue;
        }
        int32_t j = sa[isa[i] - 1];
        while (i + h < n && j + h < n && text[i + h] == text[j + h]) ++h;
        lcp[isa[i]] = h;
        if (h > 0) --h;
    }
    return lcp;
}

}  // namespace rlzap
