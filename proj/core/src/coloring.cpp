#include "edap/coloring.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace edap {

Coloring::Coloring(std::int64_t n, std::int64_t step_t, std::int64_t real_colors)
    : n_(n), step_(step_t), real_colors_(real_colors) {
    if (n < 1) throw std::invalid_argument("coloring: n must be >= 1");
    mu_.assign(static_cast<std::size_t>(2 * n), {});
}

Coloring Coloring::trivial(std::int64_t n) {
    Coloring k(n, 0, 1);
    for (std::int64_t idx = 0; idx < 2 * n; ++idx)
        k.mu_[static_cast<std::size_t>(idx)] = {{kFirstRealColor, 1.0}};
    return k;
}

double Coloring::mass(std::int64_t idx, ColorId color) const {
    const auto& row = mu_[static_cast<std::size_t>(idx)];
    auto it = std::lower_bound(row.begin(), row.end(), color,
                               [](const auto& pr, ColorId c) { return pr.first < c; });
    return (it != row.end() && it->first == color) ? it->second : 0.0;
}

void Coloring::set_mass(std::int64_t idx, ColorId color, double value) {
    auto& row = mu_[static_cast<std::size_t>(idx)];
    auto it = std::lower_bound(row.begin(), row.end(), color,
                               [](const auto& pr, ColorId c) { return pr.first < c; });
    if (it != row.end() && it->first == color) {
        if (value == 0.0)
            row.erase(it);
        else
            it->second = value;
    } else if (value != 0.0) {
        row.insert(it, {color, value});
    }
    invalidate();
}

void Coloring::replace_distribution(std::int64_t idx,
                                    std::vector<std::pair<ColorId, double>> entries) {
    std::sort(entries.begin(), entries.end());
    std::erase_if(entries, [](const auto& pr) { return pr.second == 0.0; });
    mu_[static_cast<std::size_t>(idx)] = std::move(entries);
    invalidate();
}

double Coloring::interval_total(std::int64_t idx) const {
    double acc = 0.0;
    for (const auto& [c, v] : mu_[static_cast<std::size_t>(idx)]) acc += v;
    return acc;
}

void Coloring::invalidate() { caches_ready_ = false; }

void Coloring::ensure_caches() const {
    if (caches_ready_) return;
    const auto colors = static_cast<std::size_t>(color_count());
    parts_.assign(colors, {});
    color_totals_.assign(colors, 0.0);
    axis_color_mass_.assign(2 * colors, 0.0);
    std::vector<std::pair<std::int64_t, double>> u_entries[2];
    std::vector<std::vector<std::pair<std::int64_t, double>>> tree_entries[2];
    tree_entries[0].assign(colors, {});
    tree_entries[1].assign(colors, {});

    for (std::int64_t idx = 0; idx < 2 * n_; ++idx) {
        int axis = idx < n_ ? 0 : 1;
        std::int64_t pos = (idx % n_) + 1;
        for (const auto& [c, v] : mu_[static_cast<std::size_t>(idx)]) {
            auto cs = static_cast<std::size_t>(c);
            parts_[cs].push_back(idx);
            color_totals_[cs] += v;
            axis_color_mass_[static_cast<std::size_t>(axis) * colors + cs] += v;
            tree_entries[axis][cs].emplace_back(pos, v);
            if (c == kColorU) u_entries[axis].emplace_back(pos, v);
        }
    }
    for (int axis = 0; axis < 2; ++axis) {
        u_tree_[axis] = std::make_unique<PrefixSumTree>(n_, u_entries[axis]);
        color_trees_[axis].clear();
        color_trees_[axis].resize(colors);
        for (std::size_t c = 0; c < colors; ++c)
            color_trees_[axis][c] =
                std::make_unique<WeightedSampleTree>(n_, tree_entries[axis][c]);
    }
    caches_ready_ = true;
}

double Coloring::color_total(ColorId color) const {
    ensure_caches();
    return color_totals_[static_cast<std::size_t>(color)];
}

double Coloring::axis_color_mass(Axis axis, ColorId color) const {
    ensure_caches();
    auto colors = static_cast<std::size_t>(color_count());
    return axis_color_mass_[static_cast<std::size_t>(axis == Axis::Y ? 1 : 0) * colors +
                            static_cast<std::size_t>(color)];
}

double Coloring::non_bot_total() const {
    ensure_caches();
    double acc = 0.0;
    for (ColorId c = 0; c < color_count(); ++c)
        if (c != kColorBot) acc += color_totals_[static_cast<std::size_t>(c)];
    return acc;
}

const std::vector<std::int64_t>& Coloring::part(ColorId color) const {
    ensure_caches();
    return parts_[static_cast<std::size_t>(color)];
}

const PrefixSumTree& Coloring::u_tree(Axis axis) const {
    ensure_caches();
    return *u_tree_[axis == Axis::Y ? 1 : 0];
}

const WeightedSampleTree& Coloring::color_tree(Axis axis, ColorId color) const {
    ensure_caches();
    return *color_trees_[axis == Axis::Y ? 1 : 0][static_cast<std::size_t>(color)];
}

void Coloring::prune(double eps) {
    for (auto& row : mu_) {
        double dropped = 0.0;
        std::erase_if(row, [&](const auto& pr) {
            if (pr.second < eps) {
                dropped += pr.second;
                return true;
            }
            return false;
        });
        if (row.empty()) continue;
        double total = 0.0;
        for (const auto& [c, v] : row) total += v;
        if (total <= 0) continue;
        for (auto& [c, v] : row) v /= total;
    }
    invalidate();
}

bool Coloring::is_distribution(double tol) const {
    for (std::int64_t idx = 0; idx < 2 * n_; ++idx)
        if (std::fabs(interval_total(idx) - 1.0) > tol) return false;
    return true;
}

}  // namespace edap
