#include "edap/fastds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <tuple>

namespace edap {

std::int64_t poisson_sample(Rng& rng, double mean) {
    if (mean <= 0) return 0;
    if (mean < 30.0) {
        double limit = std::exp(-mean);
        std::int64_t k = 0;
        double p = 1.0;
        for (;;) {
            p *= rng.uniform();
            if (p <= limit) return k;
            ++k;
        }
    }
    // exact split by additivity
    double half = mean / 2.0;
    return poisson_sample(rng, half) + poisson_sample(rng, mean - half);
}

std::int64_t binomial_sample(Rng& rng, std::int64_t n, double p) {
    if (n <= 0 || p <= 0) return 0;
    if (p >= 1) return n;
    std::int64_t hits = 0;
    for (std::int64_t i = 0; i < n; ++i)
        if (rng.uniform() < p) ++hits;
    return hits;
}

namespace {

std::int64_t pow2_at_least(std::int64_t v) {
    std::int64_t c = 1;
    while (c < v) c <<= 1;
    return c;
}

}  // namespace

// ---------------------------------------------------------------------------
// PrefixSumTree

PrefixSumTree::PrefixSumTree(std::int64_t n,
                             const std::vector<std::pair<std::int64_t, double>>& entries)
    : n_(n), cap_(pow2_at_least(std::max<std::int64_t>(n, 1))) {
    if (n < 1) throw std::invalid_argument("PrefixSumTree: size must be >= 1");
    tree_.assign(static_cast<std::size_t>(2 * cap_), 0.0);
    for (const auto& [i, v] : entries) {
        if (i < 1 || i > n_) throw std::out_of_range("PrefixSumTree: entry index out of range");
        if (v < 0) throw std::invalid_argument("PrefixSumTree: negative weight");
        tree_[static_cast<std::size_t>(cap_ + i - 1)] += v;
    }
    for (std::int64_t v = cap_ - 1; v >= 1; --v)
        tree_[static_cast<std::size_t>(v)] =
            tree_[static_cast<std::size_t>(2 * v)] + tree_[static_cast<std::size_t>(2 * v + 1)];
}

double PrefixSumTree::value_at(std::int64_t i) const {
    if (i < 1 || i > n_) throw std::out_of_range("PrefixSumTree: index out of range");
    return tree_[static_cast<std::size_t>(cap_ + i - 1)];
}

double PrefixSumTree::range_sum(std::int64_t i, std::int64_t j) const {
    if (i < 1 || j > n_ || i > j) throw std::out_of_range("PrefixSumTree: bad range");
    double acc = 0.0;
    std::int64_t lo = cap_ + i - 1, hi = cap_ + j - 1;
    while (lo <= hi) {
        if (lo & 1) acc += tree_[static_cast<std::size_t>(lo++)];
        if (!(hi & 1)) acc += tree_[static_cast<std::size_t>(hi--)];
        lo >>= 1;
        hi >>= 1;
    }
    return acc;
}

std::optional<PrefixSumTree::Boundary> PrefixSumTree::ball_boundary(std::int64_t i, double zeta,
                                                                    Direction dir) const {
    if (i < 1 || i > n_) throw std::out_of_range("PrefixSumTree: index out of range");
    if (zeta <= 0) throw std::invalid_argument("PrefixSumTree: zeta must be positive");
    if (dir == Direction::Left) {
        double side = range_sum(1, i);
        if (side < zeta) return std::nullopt;
        // largest j <= i with sum(j..i) >= zeta, i.e. largest j with
        // prefix(j-1) <= prefix(i) - zeta
        double target = side - zeta;
        std::int64_t node = 1, lo = 1, hi = cap_;
        double skipped = 0.0;  // prefix mass strictly left of current node
        while (lo < hi) {
            std::int64_t mid = (lo + hi) / 2;
            double left_sum = tree_[static_cast<std::size_t>(2 * node)];
            if (skipped + left_sum <= target + 0.0) {
                skipped += left_sum;
                node = 2 * node + 1;
                lo = mid + 1;
            } else {
                node = 2 * node;
                hi = mid;
            }
        }
        // lo is the first index whose prefix exceeds target when included
        std::int64_t p = (skipped + tree_[static_cast<std::size_t>(node)] <= target) ? lo : lo - 1;
        std::int64_t j = std::min<std::int64_t>(p + 1, i);
        return Boundary{j, range_sum(j, i)};
    }
    double side = range_sum(i, n_);
    if (side < zeta) return std::nullopt;
    // smallest j >= i with sum(i..j) >= zeta
    double before = i > 1 ? range_sum(1, i - 1) : 0.0;
    double target = before + zeta;  // first prefix(j) >= target
    std::int64_t node = 1, lo = 1, hi = cap_;
    double skipped = 0.0;
    while (lo < hi) {
        std::int64_t mid = (lo + hi) / 2;
        double left_sum = tree_[static_cast<std::size_t>(2 * node)];
        if (skipped + left_sum >= target) {
            node = 2 * node;
            hi = mid;
        } else {
            skipped += left_sum;
            node = 2 * node + 1;
            lo = mid + 1;
        }
    }
    std::int64_t j = std::max<std::int64_t>(lo, i);
    return Boundary{j, range_sum(i, j)};
}

// ---------------------------------------------------------------------------
// WeightedSampleTree

WeightedSampleTree::WeightedSampleTree(
    std::int64_t n, const std::vector<std::pair<std::int64_t, double>>& entries)
    : n_(n), cap_(pow2_at_least(std::max<std::int64_t>(n, 1))) {
    if (n < 1) throw std::invalid_argument("WeightedSampleTree: size must be >= 1");
    sum_.assign(static_cast<std::size_t>(2 * cap_), 0.0);
    maxv_.assign(static_cast<std::size_t>(2 * cap_), 0.0);
    for (const auto& [i, v] : entries) {
        if (i < 1 || i > n_)
            throw std::out_of_range("WeightedSampleTree: entry index out of range");
        if (v < 0) throw std::invalid_argument("WeightedSampleTree: negative weight");
        sum_[static_cast<std::size_t>(cap_ + i - 1)] += v;
    }
    for (std::int64_t i = 0; i < cap_; ++i)
        maxv_[static_cast<std::size_t>(cap_ + i)] = sum_[static_cast<std::size_t>(cap_ + i)];
    for (std::int64_t v = cap_ - 1; v >= 1; --v) {
        sum_[static_cast<std::size_t>(v)] =
            sum_[static_cast<std::size_t>(2 * v)] + sum_[static_cast<std::size_t>(2 * v + 1)];
        maxv_[static_cast<std::size_t>(v)] = std::max(maxv_[static_cast<std::size_t>(2 * v)],
                                                      maxv_[static_cast<std::size_t>(2 * v + 1)]);
    }
}

double WeightedSampleTree::value_at(std::int64_t i) const {
    if (i < 1 || i > n_) throw std::out_of_range("WeightedSampleTree: index out of range");
    return sum_[static_cast<std::size_t>(cap_ + i - 1)];
}

double WeightedSampleTree::range_sum(std::int64_t i, std::int64_t j) const {
    if (i < 1 || j > n_ || i > j) throw std::out_of_range("WeightedSampleTree: bad range");
    double acc = 0.0;
    std::int64_t lo = cap_ + i - 1, hi = cap_ + j - 1;
    while (lo <= hi) {
        if (lo & 1) acc += sum_[static_cast<std::size_t>(lo++)];
        if (!(hi & 1)) acc += sum_[static_cast<std::size_t>(hi--)];
        lo >>= 1;
        hi >>= 1;
    }
    return acc;
}

std::int64_t WeightedSampleTree::sample_index(Rng& rng) const {
    double t = total();
    if (t <= 0) throw std::domain_error("WeightedSampleTree: zero total mass");
    double r = rng.uniform() * t;
    std::size_t node = 1;
    while (node < static_cast<std::size_t>(cap_)) {
        double left = sum_[2 * node];
        if (r < left) {
            node = 2 * node;
        } else {
            r -= left;
            node = 2 * node + 1;
        }
    }
    auto idx = static_cast<std::int64_t>(node) - cap_ + 1;
    // guard against landing on zero-weight padding from float roundoff
    if (idx > n_ || sum_[node] <= 0.0) {
        for (std::int64_t i = n_; i >= 1; --i)
            if (sum_[static_cast<std::size_t>(cap_ + i - 1)] > 0) return i;
        throw std::domain_error("WeightedSampleTree: zero total mass");
    }
    return idx;
}

void WeightedSampleTree::heavy_collect(std::size_t node, std::int64_t lo, std::int64_t hi,
                                       std::int64_t s, std::int64_t t, double thresh,
                                       std::vector<std::int64_t>& out) const {
    if (hi < s || lo > t || maxv_[node] < thresh) return;
    if (lo == hi) {
        out.push_back(lo);
        return;
    }
    std::int64_t mid = (lo + hi) / 2;
    heavy_collect(2 * node, lo, mid, s, t, thresh, out);
    heavy_collect(2 * node + 1, mid + 1, hi, s, t, thresh, out);
}

double WeightedSampleTree::clipped_sum(std::size_t node, std::int64_t lo, std::int64_t hi,
                                       std::int64_t s, std::int64_t t) const {
    if (hi < s || lo > t) return 0.0;
    if (s <= lo && hi <= t) return sum_[node];
    std::int64_t mid = (lo + hi) / 2;
    return clipped_sum(2 * node, lo, mid, s, t) + clipped_sum(2 * node + 1, mid + 1, hi, s, t);
}

double WeightedSampleTree::clipped_light(std::size_t node, std::int64_t lo, std::int64_t hi,
                                         std::int64_t s, std::int64_t t,
                                         double heavy_thresh) const {
    if (hi < s || lo > t || sum_[node] <= 0.0) return 0.0;
    if (maxv_[node] < heavy_thresh) return clipped_sum(node, lo, hi, s, t);
    if (lo == hi) return 0.0;  // heavy leaf
    std::int64_t mid = (lo + hi) / 2;
    return clipped_light(2 * node, lo, mid, s, t, heavy_thresh) +
           clipped_light(2 * node + 1, mid + 1, hi, s, t, heavy_thresh);
}

namespace {

// inclusion probability for a light leaf that received a positive Poisson count
double light_accept_prob(double ak) {
    double denom = 1.0 - std::exp(-2.0 * ak);
    if (denom <= 0) return 1.0;
    return std::min(1.0, ak / denom);
}

}  // namespace

void WeightedSampleTree::poisson_split(std::size_t node, std::int64_t lo, std::int64_t hi,
                                       std::int64_t s, std::int64_t t, std::int64_t count,
                                       double k, double heavy_thresh, Rng& rng,
                                       std::vector<std::int64_t>& out) const {
    if (count <= 0 || hi < s || lo > t) return;
    if (lo == hi) {
        double a = sum_[node];
        if (a <= 0 || a >= heavy_thresh) return;  // heavies handled separately
        if (rng.uniform() < light_accept_prob(a * k)) out.push_back(lo);
        return;
    }
    std::int64_t mid = (lo + hi) / 2;
    // light mass of each child within [s, t]
    double l = clipped_light(2 * node, lo, mid, s, t, heavy_thresh);
    double r = clipped_light(2 * node + 1, mid + 1, hi, s, t, heavy_thresh);
    double tot = l + r;
    std::int64_t left_count;
    if (tot <= 0) return;
    if (l <= 0)
        left_count = 0;
    else if (r <= 0)
        left_count = count;
    else
        left_count = binomial_sample(rng, count, l / tot);
    poisson_split(2 * node, lo, mid, s, t, left_count, k, heavy_thresh, rng, out);
    poisson_split(2 * node + 1, mid + 1, hi, s, t, count - left_count, k, heavy_thresh, rng, out);
}

std::vector<std::int64_t> WeightedSampleTree::subsample(
    double k, Rng& rng, std::optional<std::pair<std::int64_t, std::int64_t>> range) const {
    if (k <= 0) return {};
    std::int64_t s = 1, t = n_;
    if (range) {
        s = std::max<std::int64_t>(1, range->first);
        t = std::min(n_, range->second);
        if (s > t) return {};
    }
    const double heavy_thresh = 0.5 / k;

    std::vector<std::int64_t> picked;
    std::vector<std::int64_t> heavies;
    heavy_collect(1, 1, cap_, s, t, heavy_thresh, heavies);
    for (std::int64_t i : heavies) {
        double a = sum_[static_cast<std::size_t>(cap_ + i - 1)];
        double p = std::min(1.0, k * a);
        if (rng.uniform() < p) picked.push_back(i);
    }

    double light_mass = clipped_light(1, 1, cap_, s, t, heavy_thresh);
    if (light_mass > 0) {
        std::int64_t count = poisson_sample(rng, 2.0 * k * light_mass);
        poisson_split(1, 1, cap_, s, t, count, k, heavy_thresh, rng, picked);
    }
    std::sort(picked.begin(), picked.end());
    picked.erase(std::unique(picked.begin(), picked.end()), picked.end());
    return picked;
}

// ---------------------------------------------------------------------------
// DyadicHeavyIndex

DyadicHeavyIndex::DyadicHeavyIndex(
    std::int64_t rows, std::int64_t cols,
    const std::vector<std::tuple<std::int64_t, std::int64_t, double>>& entries)
    : rows_(rows), cols_(cols), cap_(pow2_at_least(std::max<std::int64_t>(cols, 1))) {
    if (rows < 1 || cols < 1) throw std::invalid_argument("DyadicHeavyIndex: bad dimensions");
    levels_ = 1;
    while ((std::int64_t{1} << (levels_ - 1)) < cap_) ++levels_;

    std::vector<std::tuple<std::int64_t, std::int64_t, double>> node_entries;
    node_entries.reserve(entries.size() * static_cast<std::size_t>(levels_));
    for (const auto& [row, col, val] : entries) {
        if (row < 1 || row > rows_ || col < 1 || col > cols_)
            throw std::out_of_range("DyadicHeavyIndex: entry out of range");
        if (val < 0) throw std::invalid_argument("DyadicHeavyIndex: negative entry");
        if (val == 0) continue;
        for (std::int64_t node = cap_ + col - 1; node >= 1; node >>= 1)
            node_entries.emplace_back(node, row, val);
    }
    std::sort(node_entries.begin(), node_entries.end());
    node_rows_.assign(static_cast<std::size_t>(2 * cap_), {});
    for (std::size_t i = 0; i < node_entries.size();) {
        auto [node, row, val] = node_entries[i];
        double acc = 0.0;
        std::size_t j = i;
        while (j < node_entries.size() && std::get<0>(node_entries[j]) == node &&
               std::get<1>(node_entries[j]) == row) {
            acc += std::get<2>(node_entries[j]);
            ++j;
        }
        node_rows_[static_cast<std::size_t>(node)].emplace_back(row, acc);
        i = j;
    }
}

void DyadicHeavyIndex::decompose(std::int64_t s, std::int64_t t,
                                 std::vector<std::pair<std::int64_t, std::int64_t>>& pieces) const {
    // standard iterative dyadic cover of [s, t]; emits (node id, level) pairs
    std::int64_t lo = cap_ + s - 1, hi = cap_ + t - 1;
    while (lo <= hi) {
        if (lo & 1) pieces.emplace_back(lo++, 0);
        if (!(hi & 1)) pieces.emplace_back(hi--, 0);
        lo >>= 1;
        hi >>= 1;
    }
}

double DyadicHeavyIndex::range_sum(std::int64_t row, std::int64_t s, std::int64_t t) const {
    if (s < 1 || t > cols_ || s > t) throw std::out_of_range("DyadicHeavyIndex: bad range");
    std::vector<std::pair<std::int64_t, std::int64_t>> pieces;
    decompose(s, t, pieces);
    double acc = 0.0;
    for (auto [node, lvl] : pieces) {
        const auto& list = node_rows_[static_cast<std::size_t>(node)];
        auto it = std::lower_bound(list.begin(), list.end(), row,
                                   [](const auto& pr, std::int64_t r) { return pr.first < r; });
        if (it != list.end() && it->first == row) acc += it->second;
    }
    return acc;
}

std::vector<std::pair<std::int64_t, std::int64_t>> DyadicHeavyIndex::heavy_pairs(
    const std::vector<std::pair<std::int64_t, std::int64_t>>& ranges, double gamma_thresh) const {
    if (gamma_thresh <= 0) throw std::invalid_argument("DyadicHeavyIndex: threshold must be > 0");
    for (std::size_t i = 0; i < ranges.size(); ++i) {
        auto [s, t] = ranges[i];
        if (s < 1 || t > cols_ || s > t)
            throw std::out_of_range("DyadicHeavyIndex: query range out of bounds");
        if (i > 0 && (s < ranges[i - 1].first || t < ranges[i - 1].second))
            throw std::invalid_argument("DyadicHeavyIndex: query endpoints must be nondecreasing");
    }

    // register every range on each dyadic piece of its decomposition
    std::vector<std::vector<std::int64_t>> queries_at(static_cast<std::size_t>(2 * cap_));
    std::vector<std::pair<std::int64_t, std::int64_t>> pieces;
    for (std::size_t qi = 0; qi < ranges.size(); ++qi) {
        pieces.clear();
        decompose(ranges[qi].first, ranges[qi].second, pieces);
        for (auto [node, lvl] : pieces)
            queries_at[static_cast<std::size_t>(node)].push_back(static_cast<std::int64_t>(qi));
    }

    const double piece_thresh = gamma_thresh / (2.0 * static_cast<double>(levels_));
    std::vector<std::pair<std::int64_t, std::int64_t>> out;
    for (std::int64_t node = 1; node < 2 * cap_; ++node) {
        const auto& queries = queries_at[static_cast<std::size_t>(node)];
        if (queries.empty()) continue;
        for (const auto& [row, tau] : node_rows_[static_cast<std::size_t>(node)]) {
            if (tau < piece_thresh) continue;
            for (std::int64_t qi : queries) {
                double exact = range_sum(row, ranges[static_cast<std::size_t>(qi)].first,
                                         ranges[static_cast<std::size_t>(qi)].second);
                if (exact >= gamma_thresh) out.emplace_back(qi, row);
            }
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace edap
