#include "edap/exact.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <vector>

namespace edap {

namespace {

constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;

// Full DP in whole units (indel = 1 per edit; substitution = 1 when allowed,
// forbidden for the indel-only variant). Row-rolling memory.
std::int64_t dp_units(std::span<const Symbol> a, std::span<const Symbol> b, bool allow_sub) {
    const std::size_t n = a.size(), m = b.size();
    std::vector<std::int64_t> prev(m + 1), cur(m + 1);
    for (std::size_t j = 0; j <= m; ++j) prev[j] = static_cast<std::int64_t>(j);
    for (std::size_t i = 1; i <= n; ++i) {
        cur[0] = static_cast<std::int64_t>(i);
        for (std::size_t j = 1; j <= m; ++j) {
            std::int64_t best = std::min(prev[j], cur[j - 1]) + 1;
            if (a[i - 1] == b[j - 1])
                best = std::min(best, prev[j - 1]);
            else if (allow_sub)
                best = std::min(best, prev[j - 1] + 1);
            cur[j] = best;
        }
        std::swap(prev, cur);
    }
    return prev[m];
}

// Banded DP: cells with |i - j| > band are unreachable under the cap.
std::optional<std::int64_t> dp_units_banded(std::span<const Symbol> a, std::span<const Symbol> b,
                                            std::int64_t cap_units, bool allow_sub) {
    const auto n = static_cast<std::int64_t>(a.size());
    const auto m = static_cast<std::int64_t>(b.size());
    if (std::abs(n - m) > cap_units) return std::nullopt;
    const std::int64_t band = cap_units;
    const std::int64_t width = 2 * band + 1;
    std::vector<std::int64_t> prev(static_cast<std::size_t>(width), kInf);
    std::vector<std::int64_t> cur(static_cast<std::size_t>(width), kInf);
    // column j is stored at offset j - i + band
    for (std::int64_t j = 0; j <= std::min(m, band); ++j) prev[static_cast<std::size_t>(j + band)] = j;
    for (std::int64_t i = 1; i <= n; ++i) {
        std::fill(cur.begin(), cur.end(), kInf);
        const std::int64_t jlo = std::max<std::int64_t>(0, i - band);
        const std::int64_t jhi = std::min(m, i + band);
        for (std::int64_t j = jlo; j <= jhi; ++j) {
            const std::size_t off = static_cast<std::size_t>(j - i + band);
            std::int64_t best = kInf;
            if (j == 0) {
                best = i;
            } else {
                // prev row, same j: offset shifts by +1; same row, j-1: offset -1
                if (j - i + 1 + band >= 0 && j - i + 1 <= band)
                    best = std::min(best, prev[static_cast<std::size_t>(j - i + 1 + band)] + 1);
                if (off >= 1) best = std::min(best, cur[off - 1] + 1);
                std::int64_t diag = prev[off];
                if (a[static_cast<std::size_t>(i - 1)] == b[static_cast<std::size_t>(j - 1)])
                    best = std::min(best, diag);
                else if (allow_sub && diag < kInf)
                    best = std::min(best, diag + 1);
            }
            cur[off] = best;
        }
        std::swap(prev, cur);
    }
    std::int64_t result = prev[static_cast<std::size_t>(m - n + band)];
    if (result > cap_units) return std::nullopt;
    return result;
}

}  // namespace

EditCost edit_distance(std::span<const Symbol> a, std::span<const Symbol> b, EdVariant variant) {
    if (variant == EdVariant::IndelHalf) return EditCost{dp_units(a, b, false)};
    return EditCost{2 * dp_units(a, b, true)};
}

std::optional<EditCost> banded_distance(std::span<const Symbol> a, std::span<const Symbol> b,
                                        std::int64_t d_cap, EdVariant variant) {
    if (d_cap < 0) throw std::invalid_argument("banded_distance: d_cap must be >= 0");
    if (variant == EdVariant::IndelHalf) {
        auto units = dp_units_banded(a, b, 2 * d_cap, false);
        if (!units) return std::nullopt;
        return EditCost{*units};
    }
    auto units = dp_units_banded(a, b, d_cap, true);
    if (!units) return std::nullopt;
    return EditCost{2 * *units};
}

Alignment optimal_alignment(std::span<const Symbol> a, std::span<const Symbol> b) {
    const auto n = static_cast<std::int64_t>(a.size());
    const auto m = static_cast<std::int64_t>(b.size());
    // full table with move backpointers: 0 diag, 1 up (skip a), 2 left (skip b)
    std::vector<std::int64_t> prev(static_cast<std::size_t>(m + 1)), cur(m + 1);
    std::vector<std::uint8_t> moves(static_cast<std::size_t>((n + 1) * (m + 1)));
    auto mv = [&](std::int64_t i, std::int64_t j) -> std::uint8_t& {
        return moves[static_cast<std::size_t>(i * (m + 1) + j)];
    };
    for (std::int64_t j = 0; j <= m; ++j) {
        prev[static_cast<std::size_t>(j)] = j;
        mv(0, j) = 2;
    }
    for (std::int64_t i = 1; i <= n; ++i) {
        cur[0] = i;
        mv(i, 0) = 1;
        for (std::int64_t j = 1; j <= m; ++j) {
            std::int64_t best;
            std::uint8_t move;
            if (a[static_cast<std::size_t>(i - 1)] == b[static_cast<std::size_t>(j - 1)] &&
                prev[static_cast<std::size_t>(j - 1)] <= prev[static_cast<std::size_t>(j)] &&
                prev[static_cast<std::size_t>(j - 1)] <= cur[static_cast<std::size_t>(j - 1)]) {
                best = prev[static_cast<std::size_t>(j - 1)];
                move = 0;
            } else if (prev[static_cast<std::size_t>(j)] <= cur[static_cast<std::size_t>(j - 1)]) {
                best = prev[static_cast<std::size_t>(j)] + 1;
                move = 1;
            } else {
                best = cur[static_cast<std::size_t>(j - 1)] + 1;
                move = 2;
            }
            cur[static_cast<std::size_t>(j)] = best;
            mv(i, j) = move;
        }
        std::swap(prev, cur);
    }
    std::vector<std::pair<std::int64_t, std::int64_t>> pairs;
    std::int64_t i = n, j = m;
    while (i > 0 || j > 0) {
        switch (mv(i, j)) {
            case 0:
                pairs.emplace_back(i, j);
                --i;
                --j;
                break;
            case 1: --i; break;
            default: --j; break;
        }
    }
    std::reverse(pairs.begin(), pairs.end());
    return Alignment(std::move(pairs), std::max(n, m));
}

EditCost interval_ed(const PaddedInput& input, const Interval& a, const Interval& b,
                     EdVariant variant) {
    if (a.width != b.width) throw std::invalid_argument("interval_ed: width mismatch");
    if (a.is_bottom() || b.is_bottom()) {
        // max distance is the width for both variants
        if (a.is_bottom() && b.is_bottom()) return EditCost{0};
        return EditCost{2 * a.width};
    }
    auto sa = input.interval_symbols(a);
    auto sb = input.interval_symbols(b);
    return edit_distance(sa, sb, variant);
}

}  // namespace edap
