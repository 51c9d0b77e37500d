#include "edap/alignment.hpp"

#include <algorithm>
#include <stdexcept>

namespace edap {

Alignment::Alignment(std::vector<std::pair<std::int64_t, std::int64_t>> pairs, std::int64_t n)
    : pairs_(std::move(pairs)), n_(n) {
    std::sort(pairs_.begin(), pairs_.end());
    for (std::size_t i = 1; i < pairs_.size(); ++i) {
        if (pairs_[i].first == pairs_[i - 1].first || pairs_[i].second <= pairs_[i - 1].second)
            throw std::invalid_argument("alignment: pairs must be strictly monotone and injective");
    }
}

Alignment Alignment::identity(std::int64_t n) {
    std::vector<std::pair<std::int64_t, std::int64_t>> p;
    p.reserve(static_cast<std::size_t>(n));
    for (std::int64_t i = 1; i <= n; ++i) p.emplace_back(i, i);
    return Alignment(std::move(p), n);
}

std::optional<std::int64_t> Alignment::map(std::int64_t i) const {
    if (i < 1 || i > n_) return i;  // convention: identity outside [1, n]
    auto it = std::lower_bound(pairs_.begin(), pairs_.end(), std::make_pair(i, INT64_MIN));
    if (it != pairs_.end() && it->first == i) return it->second;
    return std::nullopt;
}

std::optional<std::int64_t> Alignment::inverse(std::int64_t j) const {
    if (j < 1 || j > n_) return j;
    // second components are sorted because the map is strictly monotone
    auto it = std::lower_bound(pairs_.begin(), pairs_.end(), j,
                               [](const auto& pr, std::int64_t v) { return pr.second < v; });
    if (it != pairs_.end() && it->second == j) return it->first;
    return std::nullopt;
}

std::optional<std::int64_t> Alignment::left_min(std::int64_t i) const {
    // min pi(j) over defined j >= i; by monotonicity that is the first defined j >= i
    auto it = std::lower_bound(pairs_.begin(), pairs_.end(), std::make_pair(i, INT64_MIN));
    if (it == pairs_.end()) {
        if (i <= n_) return std::nullopt;
        return i;  // out-of-range convention
    }
    return it->second;
}

Interval extend_alignment(const Alignment& pi, const Interval& iv) {
    if (iv.is_bottom()) throw std::invalid_argument("extend_alignment: bottom has no image");
    if (iv.axis == Axis::X) {
        auto j = pi.map(iv.start);
        if (!j) return Interval::bottom(iv.width);
        return Interval{Axis::Y, *j, iv.width};
    }
    auto i = pi.inverse(iv.start);
    if (!i) return Interval::bottom(iv.width);
    return Interval{Axis::X, *i, iv.width};
}

}  // namespace edap
