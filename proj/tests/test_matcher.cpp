#include "doctest.h"

#include <algorithm>
#include <numeric>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "rlzap/matcher.hpp"
#include "rlzap/suffix_array.hpp"

#include "generators.hpp"
#include "oracles.hpp"

using namespace rlzap;

namespace {

// The worked example pair used throughout the golden tests.
const std::string kRef = "ACATCATTCGAGGACAGGTATAGCTACAGTTAGAA";
const std::string kTarget = "ACATGATTCGACGACAGGTACTAGCTACAGTAGAA";

std::vector<uint8_t> bytes(const std::string& s) { return {s.begin(), s.end()}; }

std::vector<int32_t> naive_suffix_array(std::span<const int32_t> text) {
    std::vector<int32_t> sa(text.size());
    std::iota(sa.begin(), sa.end(), 0);
    std::sort(sa.begin(), sa.end(), [&](int32_t a, int32_t b) {
        return std::lexicographical_compare(text.begin() + a, text.end(), text.begin() + b,
                                            text.end());
    });
    return sa;
}

}  // namespace

TEST_CASE("suffix array matches a sort-based oracle") {
    std::mt19937_64 rng(31);
    SUBCASE("handcrafted strings") {
        for (std::string s : {"banana", "aaaaaa", "abab", "a", "", "mississippi",
                              "zyxzyxzyx", "ACGTACGTACGT"}) {
            std::vector<int32_t> text(s.begin(), s.end());
            CHECK(build_suffix_array(text) == naive_suffix_array(text));
        }
    }
    SUBCASE("random strings over small and large alphabets") {
        for (int trial = 0; trial < 60; ++trial) {
            size_t n = 1 + rng() % 300;
            int32_t sigma = trial % 2 == 0 ? 3 : 200;
            std::vector<int32_t> text(n);
            for (auto& c : text) c = static_cast<int32_t>(rng() % sigma) - 50;
            CHECK(build_suffix_array(text) == naive_suffix_array(text));
        }
    }
}

TEST_CASE("lcp array matches direct comparison") {
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 30; ++trial) {
        size_t n = 2 + rng() % 200;
        std::vector<int32_t> text(n);
        for (auto& c : text) c = static_cast<int32_t>(rng() % 4);
        auto sa = build_suffix_array(text);
        auto lcp = build_lcp_array(text, sa);
        for (size_t j = 1; j < n; ++j) {
            int32_t a = sa[j - 1], b = sa[j], l = 0;
            while (a + l < static_cast<int32_t>(n) && b + l < static_cast<int32_t>(n) &&
                   text[a + l] == text[b + l])
                ++l;
            CHECK(lcp[j] == l);
        }
    }
}

TEST_CASE("matching statistics: self-match lengths") {
    auto r = bytes(kRef);
    MatchingStatistics ms = matching_statistics<uint8_t>(r, r);
    for (size_t i = 0; i < r.size(); ++i) {
        CHECK(static_cast<size_t>(ms.len[i]) == r.size() - i);
        // witness must be exact, whatever source the tie-break picked
        int64_t k = static_cast<int64_t>(i) + ms.rel[i];
        REQUIRE(k >= 0);
        for (int32_t l = 0; l < ms.len[i]; ++l) CHECK(r[k + l] == r[i + l]);
    }
}

TEST_CASE("matching statistics: worked-example first position") {
    auto s = bytes(kTarget);
    auto r = bytes(kRef);
    MatchingStatistics ms = matching_statistics<uint8_t>(s, r);
    // The classic parse's first phrase is ACAT: longest match at position 1 has length 4.
    CHECK(ms.len[0] == 4);
    int64_t src = 0 + ms.rel[0];
    CHECK(std::equal(s.begin(), s.begin() + 4, r.begin() + src));
}

TEST_CASE("matching statistics: empty inputs") {
    std::vector<uint8_t> empty;
    auto r = bytes(kRef);
    MatchingStatistics ms = matching_statistics<uint8_t>(empty, r);
    CHECK(ms.len.empty());
    CHECK_THROWS_AS(matching_statistics<uint8_t>(r, empty), InvalidInputError);
}

TEST_CASE("matching statistics equal brute force on random DNA pairs") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 120; ++trial) {
        size_t nr = 1 + rng() % 120;
        size_t ns = rng() % 120;
        auto r = gen::random_dna(rng, nr);
        auto s = gen::random_dna(rng, ns);
        MatchingStatistics ms = matching_statistics<uint8_t>(s, r);
        auto brute = oracle::brute_matching_statistics<uint8_t>(s, r);
        for (size_t i = 0; i < ns; ++i) {
            REQUIRE(ms.len[i] == brute.len[i]);
            REQUIRE(ms.rel[i] == brute.rel[i]);
        }
    }
}

TEST_CASE("matching statistics equal brute force on mutated pairs") {
    std::mt19937_64 rng(43);
    gen::MutationProfile prof;
    prof.substitution_rate = 0.05;
    prof.indel_rate = 0.02;
    for (int trial = 0; trial < 50; ++trial) {
        auto r = gen::random_dna(rng, 50 + rng() % 400);
        auto s = gen::mutate_dna(r, rng, prof);
        MatchingStatistics ms = matching_statistics<uint8_t>(s, r);
        auto brute = oracle::brute_matching_statistics<uint8_t>(s, r);
        for (size_t i = 0; i < s.size(); ++i) {
            REQUIRE(ms.len[i] == brute.len[i]);
            REQUIRE(ms.rel[i] == brute.rel[i]);
        }
    }
}

TEST_CASE("matching statistics equal brute force on integer sequences") {
    std::mt19937_64 rng(47);
    for (int trial = 0; trial < 40; ++trial) {
        auto r = gen::random_i32(rng, 1 + rng() % 150, -20, 20);
        auto s = gen::random_i32(rng, rng() % 150, -20, 20);
        MatchingStatistics ms = matching_statistics<int32_t>(s, r);
        auto brute = oracle::brute_matching_statistics<int32_t>(s, r);
        for (size_t i = 0; i < s.size(); ++i) {
            REQUIRE(ms.len[i] == brute.len[i]);
            REQUIRE(ms.rel[i] == brute.rel[i]);
        }
    }
}

TEST_CASE("matching statistics invariants: maximality and witness correctness") {
    std::mt19937_64 rng(53);
    auto r = gen::random_dna(rng, 500);
    gen::MutationProfile prof;
    prof.substitution_rate = 0.03;
    auto s = gen::mutate_dna(r, rng, prof);
    MatchingStatistics ms = matching_statistics<uint8_t>(s, r);
    for (size_t i = 0; i < s.size(); ++i) {
        // every symbol of the target occurs in the reference here
        CHECK(ms.len[i] >= 1);
        int64_t k = static_cast<int64_t>(i) + ms.rel[i];
        REQUIRE(k >= 0);
        REQUIRE(k + ms.len[i] <= static_cast<int64_t>(r.size()));
        for (int32_t l = 0; l < ms.len[i]; ++l) REQUIRE(r[k + l] == s[i + l]);
        // maximality at a few probe sources
        for (int probe = 0; probe < 20; ++probe) {
            int64_t kp = static_cast<int64_t>(rng() % r.size());
            int64_t l = 0;
            while (i + l < s.size() && kp + l < static_cast<int64_t>(r.size()) &&
                   s[i + l] == r[kp + l])
                ++l;
            REQUIRE(l <= ms.len[i]);
        }
    }
}

TEST_CASE("matching statistics: symbols absent from the reference get zero") {
    std::vector<uint8_t> r = bytes("ACACAC");
    std::vector<uint8_t> s = bytes("ACNNAC");
    MatchingStatistics ms = matching_statistics<uint8_t>(s, r);
    CHECK(ms.len[2] == 0);
    CHECK(ms.rel[2] == 0);
    CHECK(ms.len[3] == 0);
    CHECK(ms.len[0] >= 2);
}
