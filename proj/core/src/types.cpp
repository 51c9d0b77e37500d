#include "edap/types.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace edap {

std::vector<Symbol> PaddedInput::interval_symbols(const Interval& iv) const {
    std::vector<Symbol> out;
    out.reserve(static_cast<std::size_t>(iv.width));
    if (iv.is_bottom()) {
        // unique symbols outside the alphabet and distinct from the sentinel
        for (std::int64_t k = 0; k < iv.width; ++k)
            out.push_back(sentinel + 1 + static_cast<Symbol>(k));
        return out;
    }
    for (std::int64_t k = 0; k < iv.width; ++k) out.push_back(at(iv.axis, iv.start + k));
    return out;
}

namespace {

std::int64_t next_power_of(std::int64_t base, std::int64_t at_least) {
    std::int64_t v = base;
    while (v < at_least) {
        if (v > (std::int64_t{1} << 56) / base) throw std::overflow_error("padding overflow");
        v *= base;
    }
    return v;
}

}  // namespace

PaddedInput pad_input(std::span<const unsigned char> x, std::span<const unsigned char> y,
                      std::int64_t gamma, double tail_factor) {
    if (x.empty() || y.empty()) throw std::invalid_argument("pad_input: empty input sequence");
    if (gamma < 2) throw std::invalid_argument("pad_input: gamma must be >= 2");
    if (tail_factor < 1.0) throw std::invalid_argument("pad_input: tail factor must be >= 1");

    // dense alphabet ids; sentinel is out of band by construction
    std::unordered_map<unsigned char, Symbol> ids;
    auto intern = [&](unsigned char c) {
        auto [it, inserted] = ids.emplace(c, static_cast<Symbol>(ids.size()));
        return it->second;
    };

    PaddedInput p;
    p.original_len_x = static_cast<std::int64_t>(x.size());
    p.original_len_y = static_cast<std::int64_t>(y.size());

    std::vector<Symbol> xs(x.size()), ys(y.size());
    for (std::size_t i = 0; i < x.size(); ++i) xs[i] = intern(x[i]);
    for (std::size_t i = 0; i < y.size(); ++i) ys[i] = intern(y[i]);

    p.alphabet_size = ids.size();
    p.sentinel = static_cast<Symbol>(ids.size());

    std::int64_t longest = std::max(p.original_len_x, p.original_len_y);
    std::int64_t target = static_cast<std::int64_t>(std::ceil(longest * tail_factor));
    p.n = next_power_of(gamma, std::max<std::int64_t>(target, gamma));

    xs.resize(static_cast<std::size_t>(p.n), p.sentinel);
    ys.resize(static_cast<std::size_t>(p.n), p.sentinel);
    p.x = std::move(xs);
    p.y = std::move(ys);
    return p;
}

PaddedInput pad_input(const std::string& x, const std::string& y, std::int64_t gamma,
                      double tail_factor) {
    return pad_input(
        std::span<const unsigned char>(reinterpret_cast<const unsigned char*>(x.data()), x.size()),
        std::span<const unsigned char>(reinterpret_cast<const unsigned char*>(y.data()), y.size()),
        gamma, tail_factor);
}

std::vector<std::int64_t> scale_costs(std::int64_t w) {
    if (w < 1) throw std::invalid_argument("scale_costs: width must be >= 1");
    std::vector<std::int64_t> s{0};
    for (std::int64_t c = 1; c <= w; c *= 2) {
        s.push_back(c);
        if (c > w / 2) break;
    }
    return s;
}

CostSet cost_set(double c, double alpha, double eta) {
    if (c < 0) throw std::invalid_argument("cost_set: negative base cost");
    double inv_eta = 1.0 / eta;
    auto count = static_cast<std::size_t>(std::llround(inv_eta));
    if (count == 0 || std::abs(inv_eta - static_cast<double>(count)) > 1e-9)
        throw std::invalid_argument("cost_set: 1/eta must be a positive integer");

    CostSet out;
    out.base_cost = c;
    out.costs.reserve(count);
    if (c == 0) {
        out.costs.assign(count, 0.0);
        return out;
    }
    // c_i = (2c/alpha) * 3^i, built by repeated multiplication so consecutive
    // ratios are exactly 3 in floating point
    double v = 2.0 * c / alpha * 3.0;
    for (std::size_t i = 1; i <= count; ++i) {
        out.costs.push_back(v);
        v *= 3.0;
    }
    return out;
}

}  // namespace edap
