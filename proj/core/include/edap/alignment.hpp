#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "edap/types.hpp"

namespace edap {

// A partial, injective, strictly monotone map from x-positions to
// y-positions. Stored sparsely as the sorted list of defined pairs; bottom is
// implicit. Positions outside [1, n] map to themselves by convention.
class Alignment {
public:
    Alignment() = default;
    Alignment(std::vector<std::pair<std::int64_t, std::int64_t>> pairs, std::int64_t n);

    static Alignment identity(std::int64_t n);

    std::int64_t n() const { return n_; }
    const std::vector<std::pair<std::int64_t, std::int64_t>>& pairs() const { return pairs_; }

    // pi(i): nullopt encodes bottom. Out-of-range i maps to itself.
    std::optional<std::int64_t> map(std::int64_t i) const;
    // pi^{-1}(j).
    std::optional<std::int64_t> inverse(std::int64_t j) const;

    // Left-min operator: min pi(j) over j >= i with pi(j) defined.
    std::optional<std::int64_t> left_min(std::int64_t i) const;

    std::size_t defined_count() const { return pairs_.size(); }

private:
    std::vector<std::pair<std::int64_t, std::int64_t>> pairs_;  // sorted by first
    std::int64_t n_ = 0;
};

// The extension pi-hat acting on intervals: an X interval at i maps to the Y
// interval at pi(i), a Y interval at j maps back through pi^{-1}. Undefined
// positions produce Bottom.
Interval extend_alignment(const Alignment& pi, const Interval& iv);

}  // namespace edap
