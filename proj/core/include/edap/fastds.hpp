#pragma once

#include <cstdint>
#include <optional>
#include <tuple>
#include <utility>
#include <vector>

#include "edap/rng.hpp"

namespace edap {

enum class Direction { Left, Right };

// Segment tree over sparse nonnegative weights a_1..a_n with subtree sums.
// Supports exact range sums and the ball-boundary search used by
// Lambda-balls. Immutable after construction; queries are const.
class PrefixSumTree {
public:
    PrefixSumTree() = default;
    PrefixSumTree(std::int64_t n, const std::vector<std::pair<std::int64_t, double>>& entries);

    std::int64_t size() const { return n_; }
    double total() const { return n_ ? tree_[1] : 0.0; }

    // Sum of a_i..a_j, 1-based inclusive. Out-of-range indices throw.
    double range_sum(std::int64_t i, std::int64_t j) const;

    struct Boundary {
        std::int64_t index;     // support index where the cumulative sum crosses zeta
        double sum_inclusive;   // mass of [index..i] (left) or [i..index] (right)
    };

    // Leftward: the largest support index j <= i with sum(j..i) >= zeta (so
    // sum(j+1..i) < zeta). Rightward is mirrored. nullopt when the one-sided
    // mass never reaches zeta.
    std::optional<Boundary> ball_boundary(std::int64_t i, double zeta, Direction dir) const;

    double value_at(std::int64_t i) const;

private:
    std::int64_t n_ = 0;      // logical size
    std::int64_t cap_ = 0;    // power-of-two capacity
    std::vector<double> tree_;
};

// The sampling structure: weighted index draws plus independent min(k*a_i,1)
// subsampling via Poisson splitting down the tree, with a heavy list for
// a_i >= 0.5/k. Subsampling restricted to a range uses the same splitting
// against range-clipped subtree masses.
class WeightedSampleTree {
public:
    WeightedSampleTree() = default;
    WeightedSampleTree(std::int64_t n, const std::vector<std::pair<std::int64_t, double>>& entries);

    std::int64_t size() const { return n_; }
    double total() const { return n_ ? sum_[1] : 0.0; }
    double value_at(std::int64_t i) const;

    // Index i with probability a_i / total. Throws on zero total mass.
    std::int64_t sample_index(Rng& rng) const;

    // Independent inclusion with probability min(k*a_i, 1), optionally
    // restricted to [range.first, range.second]. Sorted output.
    std::vector<std::int64_t> subsample(double k, Rng& rng,
                                        std::optional<std::pair<std::int64_t, std::int64_t>> range =
                                            std::nullopt) const;

    double range_sum(std::int64_t i, std::int64_t j) const;

private:
    void heavy_collect(std::size_t node, std::int64_t lo, std::int64_t hi, std::int64_t s,
                       std::int64_t t, double thresh, std::vector<std::int64_t>& out) const;
    void poisson_split(std::size_t node, std::int64_t lo, std::int64_t hi, std::int64_t s,
                       std::int64_t t, std::int64_t count, double k, double heavy_thresh, Rng& rng,
                       std::vector<std::int64_t>& out) const;
    double clipped_sum(std::size_t node, std::int64_t lo, std::int64_t hi, std::int64_t s,
                       std::int64_t t) const;
    double clipped_light(std::size_t node, std::int64_t lo, std::int64_t hi, std::int64_t s,
                         std::int64_t t, double heavy_thresh) const;

    std::int64_t n_ = 0;
    std::int64_t cap_ = 0;
    std::vector<double> sum_;
    std::vector<double> maxv_;
};

// Dyadic heavy-range detector over a sparse nonnegative matrix: given
// monotone query ranges [s_i, t_i] and a threshold, reports exactly the
// (range, row) pairs whose range sum meets the threshold. Candidate
// generation goes through per-dyadic-interval row sums; an exact recheck
// removes false positives.
class DyadicHeavyIndex {
public:
    DyadicHeavyIndex(std::int64_t rows, std::int64_t cols,
                     const std::vector<std::tuple<std::int64_t, std::int64_t, double>>& entries);

    std::int64_t rows() const { return rows_; }
    std::int64_t cols() const { return cols_; }

    // ranges[i] = [s_i, t_i], 1-based inclusive, with {s_i} and {t_i}
    // nondecreasing. Returns sorted unique (range index, row) pairs.
    std::vector<std::pair<std::int64_t, std::int64_t>> heavy_pairs(
        const std::vector<std::pair<std::int64_t, std::int64_t>>& ranges,
        double gamma_thresh) const;

    double range_sum(std::int64_t row, std::int64_t s, std::int64_t t) const;

private:
    void decompose(std::int64_t s, std::int64_t t,
                   std::vector<std::pair<std::int64_t, std::int64_t>>& pieces) const;

    std::int64_t rows_ = 0;
    std::int64_t cols_ = 0;
    std::int64_t cap_ = 0;
    std::int64_t levels_ = 0;
    // per (dyadic node id, row) -> sum; node ids follow heap order on the
    // padded [1, cap_] array
    std::vector<std::vector<std::pair<std::int64_t, double>>> node_rows_;  // sorted by row
};

}  // namespace edap
