#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace edap {

using Symbol = std::uint32_t;

enum class Axis : std::uint8_t { X = 0, Y = 1, Bottom = 2 };

inline const char* axis_name(Axis a) {
    switch (a) {
        case Axis::X: return "X";
        case Axis::Y: return "Y";
        default: return "Bottom";
    }
}

// A fixed-width window into one of the two padded strings. `start` is
// 1-based and may lie outside [1, n]; positions outside [1, n] read as the
// pad sentinel. A Bottom interval behaves as a string of unique characters:
// every distance against it is maximal (width, for edit distance).
struct Interval {
    Axis axis = Axis::Bottom;
    std::int64_t start = 0;
    std::int64_t width = 0;

    static Interval bottom(std::int64_t w) { return Interval{Axis::Bottom, 0, w}; }
    bool is_bottom() const { return axis == Axis::Bottom; }

    Interval shifted(std::int64_t delta) const { return Interval{axis, start + delta, width}; }

    friend bool operator==(const Interval& a, const Interval& b) = default;
};

// Both input strings mapped to dense symbol ids and padded to a common
// power-of-gamma length. The sentinel is one past the largest alphabet id,
// so it can never collide with an input symbol.
struct PaddedInput {
    std::vector<Symbol> x;
    std::vector<Symbol> y;
    std::int64_t n = 0;
    std::int64_t original_len_x = 0;
    std::int64_t original_len_y = 0;
    std::size_t alphabet_size = 0;
    Symbol sentinel = 0;

    std::int64_t original_len() const { return std::max(original_len_x, original_len_y); }

    // 1-based read; anything outside [1, n] is the sentinel.
    Symbol at(Axis axis, std::int64_t pos) const {
        if (pos < 1 || pos > n) return sentinel;
        return axis == Axis::X ? x[static_cast<std::size_t>(pos - 1)]
                               : y[static_cast<std::size_t>(pos - 1)];
    }

    std::vector<Symbol> interval_symbols(const Interval& iv) const;
};

// Pads both sequences to the next power of `gamma` (times `tail_factor`,
// used by the paper-faithful profile). Throws std::invalid_argument on empty
// input.
PaddedInput pad_input(std::span<const unsigned char> x, std::span<const unsigned char> y,
                      std::int64_t gamma, double tail_factor = 1.0);

PaddedInput pad_input(const std::string& x, const std::string& y, std::int64_t gamma,
                      double tail_factor = 1.0);

// S_w: {0} plus the powers of 2 up to and including the largest <= w.
std::vector<std::int64_t> scale_costs(std::int64_t w);

// The cost ladder E_c = {c_i = (2c/alpha) * 3^i : i = 1..1/eta}. For c = 0
// this is a multiset of 1/eta zeros.
struct CostSet {
    double base_cost = 0;
    std::vector<double> costs;
};

CostSet cost_set(double c, double alpha, double eta);

}  // namespace edap
