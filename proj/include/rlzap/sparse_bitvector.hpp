#pragma once

#include <atomic>
#include <cassert>
#include <cstdint>
#include <span>
#include <vector>

#include "rlzap/common.hpp"
#include "rlzap/dense_bitvector.hpp"
#include "rlzap/packed_array.hpp"

namespace rlzap {

/*
 * Elias-Fano encoded set of positions over a universe [0, n): low bits in a
 * packed array, high bits in unary in a dense bitvector. select is a dense
 * select plus a low fetch; rank binary-searches select values over the high
 * part. Space is within a constant of m*log(n/m) + O(m) bits.
 *
 * rank/select carry per-instance call counters (relaxed atomics) so tests can
 * assert how many queries an algorithm issued; they are not part of the
 * logical state and are ignored by serialization and comparison.
 */
class SparseBitvector {
public:
    SparseBitvector() = default;

    // positions must be strictly increasing and < universe.
    SparseBitvector(uint64_t universe, std::span<const uint64_t> positions) {
        build(universe, positions);
    }

    void build(uint64_t universe, std::span<const uint64_t> positions) {
        universe_ = universe;
        count_ = positions.size();
        low_width_ = 0;
        if (count_ > 0 && universe_ / count_ > 1)
            low_width_ = bits_for(universe_ / count_) - 1;
        lows_.reset(low_width_ == 0 ? 1 : low_width_, low_width_ == 0 ? 0 : count_);
        DenseBitvector highs(count_ + (universe_ >> low_width_) + 1);
        uint64_t prev = 0;
        for (uint64_t k = 0; k < count_; ++k) {
            uint64_t p = positions[k];
            assert(p < universe_);
            assert(k == 0 || p > prev);
            prev = p;
            if (low_width_) lows_.set(k, p & ((1ull << low_width_) - 1));
            highs.set((p >> low_width_) + k);
        }
        highs.finish();
        highs_ = std::move(highs);
        build_rank_hints();
    }

    uint64_t universe() const { return universe_; }
    uint64_t num_ones() const { return count_; }

    // Position of the k-th 1 (0-based).
    uint64_t select(uint64_t k) const {
        if (k >= count_) throw RangeError("SparseBitvector::select: rank out of range");
        select_calls_.fetch_add(1, std::memory_order_relaxed);
        return select_impl(k);
    }

    // Number of 1s in [0, i): binary search over the ones, windowed by rank
    // hints sampled every few average gaps, so the search touches O(1) probes.
    uint64_t rank(uint64_t i) const {
        if (i > universe_) throw RangeError("SparseBitvector::rank: position out of range");
        rank_calls_.fetch_add(1, std::memory_order_relaxed);
        if (count_ == 0 || i == 0) return 0;
        uint64_t w = (i - 1) / hint_stride_;
        uint64_t lo = hints_.get(w);
        uint64_t hi = hints_.get(w + 1);
        while (lo < hi) {  // invariant: select(lo-1) < i <= select(hi)
            uint64_t mid = (lo + hi) / 2;
            if (select_impl(mid) < i) lo = mid + 1; else hi = mid;
        }
        return lo;
    }

    bool contains(uint64_t i) const {
        if (i >= universe_) throw RangeError("SparseBitvector::contains: position out of range");
        if (count_ == 0) return 0;
        uint64_t r = rank(i + 1);
        return r > 0 && select_impl(r - 1) == i;
    }

    uint64_t size_in_bits() const {
        return count_ == 0 ? 0
                           : lows_.size_in_bits() + highs_.size_in_bits() + hints_.size_in_bits();
    }

    // Instrumentation hooks (test-only; not logical state).
    uint64_t rank_calls() const { return rank_calls_.load(std::memory_order_relaxed); }
    uint64_t select_calls() const { return select_calls_.load(std::memory_order_relaxed); }
    void reset_counters() const {
        rank_calls_.store(0, std::memory_order_relaxed);
        select_calls_.store(0, std::memory_order_relaxed);
    }

    bool operator==(const SparseBitvector& o) const {
        return universe_ == o.universe_ && count_ == o.count_ &&
               low_width_ == o.low_width_ && lows_ == o.lows_ && highs_ == o.highs_;
    }

    void serialize(ByteWriter& w) const {
        w.put_u64(universe_);
        w.put_u64(count_);
        w.put_u8(static_cast<uint8_t>(low_width_));
        lows_.serialize(w);
        highs_.serialize(w);
    }

    static SparseBitvector deserialize(ByteReader& r) {
        SparseBitvector bv;
        bv.universe_ = r.get_u64();
        bv.count_ = r.get_u64();
        bv.low_width_ = r.get_u8();
        if (bv.low_width_ > 63) throw FormatError("SparseBitvector: bad low width");
        bv.lows_ = PackedArray::deserialize(r);
        bv.highs_ = DenseBitvector::deserialize(r);
        if (bv.highs_.num_ones() != bv.count_)
            throw FormatError("SparseBitvector: high part inconsistent with count");
        if (bv.lows_.size() != (bv.low_width_ ? bv.count_ : 0))
            throw FormatError("SparseBitvector: low part inconsistent with count");
        bv.build_rank_hints();
        return bv;
    }

    SparseBitvector(const SparseBitvector& o)
        : universe_(o.universe_), count_(o.count_), low_width_(o.low_width_),
          lows_(o.lows_), highs_(o.highs_), hints_(o.hints_), hint_stride_(o.hint_stride_) {}
    SparseBitvector& operator=(const SparseBitvector& o) {
        universe_ = o.universe_;
        count_ = o.count_;
        low_width_ = o.low_width_;
        lows_ = o.lows_;
        highs_ = o.highs_;
        hints_ = o.hints_;
        hint_stride_ = o.hint_stride_;
        return *this;
    }
    SparseBitvector(SparseBitvector&& o) noexcept
        : universe_(o.universe_), count_(o.count_), low_width_(o.low_width_),
          lows_(std::move(o.lows_)), highs_(std::move(o.highs_)), hints_(std::move(o.hints_)),
          hint_stride_(o.hint_stride_) {}
    SparseBitvector& operator=(SparseBitvector&& o) noexcept {
        universe_ = o.universe_;
        count_ = o.count_;
        low_width_ = o.low_width_;
        lows_ = std::move(o.lows_);
        highs_ = std::move(o.highs_);
        hints_ = std::move(o.hints_);
        hint_stride_ = o.hint_stride_;
        return *this;
    }

private:
    uint64_t select_impl(uint64_t k) const {
        uint64_t high = highs_.select(k) - k;
        return low_width_ ? (high << low_width_) | lows_.get(k) : high;
    }

    // Rank of the positions at a fixed stride of a few average gaps; rebuilt
    // after construction and load, never serialized.
    void build_rank_hints() {
        if (count_ == 0) {
            hint_stride_ = 1;
            hints_.reset(1, 0);
            return;
        }
        hint_stride_ = std::max<uint64_t>(1, universe_ / count_) * 8;
        uint64_t entries = (universe_ == 0 ? 0 : (universe_ - 1) / hint_stride_) + 2;
        hints_.reset(bits_for(count_), entries);
        uint64_t k = 0;
        for (uint64_t j = 0; j < entries; ++j) {
            uint64_t boundary = j * hint_stride_;  // hint j = number of ones below boundary
            while (k < count_ && select_impl(k) < boundary) ++k;
            hints_.set(j, k);
        }
    }

    uint64_t universe_ = 0;
    uint64_t count_ = 0;
    uint32_t low_width_ = 0;
    PackedArray lows_;
    DenseBitvector highs_;
    PackedArray hints_;
    uint64_t hint_stride_ = 1;
    mutable std::atomic<uint64_t> rank_calls_{0};
    mutable std::atomic<uint64_t> select_calls_{0};
};

}  // namespace rlzap
