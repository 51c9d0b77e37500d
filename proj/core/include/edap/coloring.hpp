#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "edap/fastds.hpp"
#include "edap/types.hpp"

namespace edap {

using ColorId = std::int32_t;

inline constexpr ColorId kColorU = 0;
inline constexpr ColorId kColorBot = 1;
inline constexpr ColorId kFirstRealColor = 2;

// A fractional coloring: each interval of the width-w universe (starts
// 1..n on both axes) carries a distribution over the color set
// [lambda^t] + {u, bot}. Sparse per-interval storage plus lazily built
// per-axis mass trees for the sampling and ball machinery.
class Coloring {
public:
    Coloring() = default;
    Coloring(std::int64_t n, std::int64_t step_t, std::int64_t real_colors);
    Coloring(const Coloring& other)
        : n_(other.n_), step_(other.step_), real_colors_(other.real_colors_), mu_(other.mu_) {}
    Coloring& operator=(const Coloring& other) {
        n_ = other.n_;
        step_ = other.step_;
        real_colors_ = other.real_colors_;
        mu_ = other.mu_;
        invalidate();
        return *this;
    }
    Coloring(Coloring&&) = default;
    Coloring& operator=(Coloring&&) = default;

    // The Alg. 1 entry coloring: one real color with mass 1 everywhere.
    static Coloring trivial(std::int64_t n);

    std::int64_t n() const { return n_; }
    std::int64_t step() const { return step_; }
    std::int64_t real_colors() const { return real_colors_; }
    ColorId color_count() const { return static_cast<ColorId>(kFirstRealColor + real_colors_); }

    std::int64_t index_of(Axis axis, std::int64_t start) const {
        return (axis == Axis::Y ? n_ : 0) + (start - 1);
    }
    std::int64_t index_of(const Interval& iv) const { return index_of(iv.axis, iv.start); }
    Interval interval_at(std::int64_t idx, std::int64_t width) const {
        return Interval{idx < n_ ? Axis::X : Axis::Y, (idx % n_) + 1, width};
    }

    double mass(std::int64_t idx, ColorId color) const;
    const std::vector<std::pair<ColorId, double>>& entries(std::int64_t idx) const {
        return mu_[static_cast<std::size_t>(idx)];
    }

    // builder-side mutation; invalidates caches
    void set_mass(std::int64_t idx, ColorId color, double value);
    void replace_distribution(std::int64_t idx, std::vector<std::pair<ColorId, double>> entries);

    double interval_total(std::int64_t idx) const;
    double color_total(ColorId color) const;
    double axis_color_mass(Axis axis, ColorId color) const;
    double non_bot_total() const;

    // support of a color, sorted dense indices
    const std::vector<std::int64_t>& part(ColorId color) const;

    // u-mass over start positions of one axis, for Lambda balls
    const PrefixSumTree& u_tree(Axis axis) const;
    // per-axis mass of one color, for density subsampling
    const WeightedSampleTree& color_tree(Axis axis, ColorId color) const;

    // drop entries below eps and renormalize each interval to mass 1
    void prune(double eps);

    // distribution check: every interval's masses sum to 1 within tol
    bool is_distribution(double tol = 1e-9) const;

private:
    void invalidate();
    void ensure_caches() const;

    std::int64_t n_ = 0;
    std::int64_t step_ = 0;
    std::int64_t real_colors_ = 0;
    std::vector<std::vector<std::pair<ColorId, double>>> mu_;  // sorted by color id

    mutable bool caches_ready_ = false;
    mutable std::vector<std::vector<std::int64_t>> parts_;
    mutable std::vector<double> color_totals_;
    mutable std::vector<double> axis_color_mass_;  // [axis][color]
    mutable std::unique_ptr<PrefixSumTree> u_tree_[2];
    mutable std::vector<std::unique_ptr<WeightedSampleTree>> color_trees_[2];
};

}  // namespace edap
