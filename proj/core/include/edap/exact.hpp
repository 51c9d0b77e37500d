#pragma once

#include <optional>
#include <span>

#include "edap/alignment.hpp"
#include "edap/types.hpp"

namespace edap {

// IndelHalf is the paper's distance: half the number of insertions/deletions,
// substitutions not allowed. Levenshtein allows unit substitutions.
enum class EdVariant { Levenshtein, IndelHalf };

// Exact distances carry a denominator of 2 so IndelHalf stays rational with
// no float drift in the metric-axiom tests.
struct EditCost {
    std::int64_t half_units = 0;

    double value() const { return static_cast<double>(half_units) / 2.0; }
    friend auto operator<=>(const EditCost&, const EditCost&) = default;
};

EditCost edit_distance(std::span<const Symbol> a, std::span<const Symbol> b, EdVariant variant);

// Ukkonen-style banded computation: exact result when the distance is at
// most d_cap, nullopt (Exceeds) otherwise.
std::optional<EditCost> banded_distance(std::span<const Symbol> a, std::span<const Symbol> b,
                                        std::int64_t d_cap, EdVariant variant);

// A pi attaining the IndelHalf minimum, from DP traceback. Defined pairs are
// matched equal symbols.
Alignment optimal_alignment(std::span<const Symbol> a, std::span<const Symbol> b);

// Distance between two width-w windows of the padded input, honoring pad
// reads and the Bottom convention (max distance: w).
EditCost interval_ed(const PaddedInput& input, const Interval& a, const Interval& b,
                     EdVariant variant = EdVariant::IndelHalf);

}  // namespace edap
