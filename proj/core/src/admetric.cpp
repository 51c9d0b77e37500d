#include "edap/admetric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "edap/exact.hpp"

namespace edap {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool is_power_of_two(std::int64_t v) { return v > 0 && (v & (v - 1)) == 0; }

bool in_scale_set(double c, std::int64_t w) {
    if (c == 0) return true;
    if (c < 1 || c > static_cast<double>(w)) return false;
    auto ci = static_cast<std::int64_t>(std::llround(c));
    return static_cast<double>(ci) == c && is_power_of_two(ci);
}

std::uint64_t pair_key(const Interval& a, const Interval& b, std::int64_t t) {
    // 26-bit interval codes and a 12-bit scale tag pack exactly into 64 bits
    if (std::llabs(a.start) >= (1ll << 24) || std::llabs(b.start) >= (1ll << 24) ||
        t >= (1ll << 12))
        throw std::invalid_argument("ad: interval start or scale too large for memo key");
    auto enc = [](const Interval& iv) -> std::uint64_t {
        auto s = static_cast<std::uint64_t>(iv.start + (1ll << 24));
        return (static_cast<std::uint64_t>(iv.axis == Axis::Y) << 25) | s;
    };
    std::uint64_t ka = enc(a), kb = enc(b);
    if (ka > kb) std::swap(ka, kb);
    return (static_cast<std::uint64_t>(t) << 52) | (ka << 26) | kb;
}

}  // namespace

AdOracle::AdOracle(AdContext ctx) : ctx_(ctx) {
    if (ctx_.w < ctx_.gamma) throw std::invalid_argument("ad: width below gamma");
    if (!ctx_.exact_regime()) {
        if (ctx_.base == nullptr) throw std::invalid_argument("ad: base metric required");
        if (ctx_.base->width() != ctx_.w_prime())
            throw std::invalid_argument("ad: base metric width must be w/gamma");
        if (ctx_.w % (ctx_.gamma * ctx_.gamma) != 0)
            throw std::invalid_argument("ad: width must be a multiple of gamma^2");
        const std::int64_t T = ctx_.grid_T();
        prefix_.assign(static_cast<std::size_t>(2 * ctx_.gamma * (2 * T + 1)), {});
        prefix_epoch_.assign(prefix_.size(), 0);
        layer_a_.assign(static_cast<std::size_t>((T + 1) * (T + 1)), 0.0);
        layer_b_.assign(layer_a_.size(), 0.0);
    }
}

std::int64_t AdOracle::scale_t(double c) const {
    if (ctx_.exact_regime()) return 0;
    const std::int64_t t_large = ctx_.w_prime();
    if (c <= 0) return 1;
    double ratio = c / ctx_.tau_large;
    std::int64_t t = 1;
    while (t * ctx_.gamma <= static_cast<std::int64_t>(ratio) && t < t_large) t *= ctx_.gamma;
    return t;
}

double AdOracle::gamma_eval(const Interval& a, const Interval& b) {
    const std::int64_t g = ctx_.gamma;
    const std::int64_t m = g * g;
    const std::int64_t step = ctx_.w / m;
    const double gap = static_cast<double>(step);
    const double diag_coef = 1.0 / static_cast<double>(g);

    // DAG shortest path on the (m+1)x(m+1) grid
    std::vector<double> row(static_cast<std::size_t>(m + 1), kInf);
    std::vector<double> prev_row(static_cast<std::size_t>(m + 1), kInf);
    for (std::int64_t q = 0; q <= m; ++q)
        prev_row[static_cast<std::size_t>(q)] = gap * static_cast<double>(q);
    for (std::int64_t p = 1; p <= m; ++p) {
        for (std::int64_t q = 0; q <= m; ++q) {
            double best = prev_row[static_cast<std::size_t>(q)] + gap;
            if (q > 0) {
                best = std::min(best, row[static_cast<std::size_t>(q - 1)] + gap);
                double diag = prev_row[static_cast<std::size_t>(q - 1)];
                if (diag < kInf) {
                    ++base_queries_;
                    double d = ctx_.base->distance(
                        Interval{a.axis, a.start + step * (p - 1), ctx_.w_prime()},
                        Interval{b.axis, b.start + step * (q - 1), ctx_.w_prime()});
                    best = std::min(best, diag + diag_coef * d);
                }
            }
            row[static_cast<std::size_t>(q)] = best;
        }
        std::swap(row, prev_row);
    }
    return 4.0 * prev_row[static_cast<std::size_t>(m)] +
           2.0 * static_cast<double>(ctx_.w) / static_cast<double>(g);
}

double AdOracle::grid_eval(const Interval& a, const Interval& b, std::int64_t t) {
    const std::int64_t g = ctx_.gamma;
    const std::int64_t T = ctx_.grid_T();
    const std::int64_t wp = ctx_.w_prime();
    const double gap = static_cast<double>(t) / static_cast<double>(g);  // theta * w'
    const double cap = gap * static_cast<double>(T);                     // = t * gamma

    ++epoch_;
    cur_a_ = &a;
    cur_b_ = &b;
    cur_t_ = t;

    const std::int64_t side = T + 1;
    auto idx = [side](std::int64_t p, std::int64_t q) {
        return static_cast<std::size_t>(p * side + q);
    };

    auto diag_cost = [&](std::int64_t k, std::int64_t p, std::int64_t q) -> double {
        const std::int64_t len = 3 * T - p - q;
        if (len <= 0) return 0.0;  // empty Delta range
        const std::int64_t d = p - q;
        auto slot = static_cast<std::size_t>((k + g) * (2 * T + 1) + (d + T));
        auto& pre = prefix_[slot];
        if (prefix_epoch_[slot] != epoch_) {
            prefix_epoch_[slot] = epoch_;
            const std::int64_t lo = std::max<std::int64_t>(0, d) + 1;  // first s with s,s-d >= 1
            pre.assign(static_cast<std::size_t>(3 * T + 1), 0.0);
            double acc = 0.0;
            for (std::int64_t s = lo; s <= 3 * T; ++s) {
                ++base_queries_;
                std::int64_t sx = a.start + wp * k + (s * t) / g;
                std::int64_t sy = b.start + wp * k + ((s - d) * t) / g;
                acc += ctx_.base->distance(Interval{a.axis, sx, wp}, Interval{b.axis, sy, wp});
                pre[static_cast<std::size_t>(s)] = acc;
            }
        }
        // sum over s = p+1 .. 3T - q of base(s, s-d)
        double hi_sum = pre[static_cast<std::size_t>(3 * T - q)];
        double lo_sum = pre[static_cast<std::size_t>(p)];
        return (hi_sum - lo_sum) / static_cast<double>(T);
    };

    auto& cur = layer_a_;
    auto& next = layer_b_;
    std::fill(cur.begin(), cur.end(), kInf);
    cur[idx(0, 0)] = 0.0;

    for (std::int64_t k = -g; k <= g; ++k) {
        // within-layer gap edges (p,q) -> (p+1,q), (p,q+1)
        for (std::int64_t p = 0; p <= T; ++p)
            for (std::int64_t q = 0; q <= T; ++q) {
                double v = cur[idx(p, q)];
                if (p > 0) v = std::min(v, cur[idx(p - 1, q)] + gap);
                if (q > 0) v = std::min(v, cur[idx(p, q - 1)] + gap);
                cur[idx(p, q)] = v;
            }
        if (k == g) break;
        // diagonal edges to layer k+1
        for (std::int64_t p = 0; p <= T; ++p)
            for (std::int64_t q = 0; q <= T; ++q) {
                double v = cur[idx(p, q)];
                next[idx(p, q)] = (v >= cap) ? kInf : v + diag_cost(k, p, q);
            }
        std::swap(cur, next);
    }

    double best = kInf;
    for (std::int64_t p = 0; p <= T; ++p)
        for (std::int64_t q = 0; q <= T; ++q) {
            double v = cur[idx(p, q)] + gap * static_cast<double>(p > q ? p - q : q - p);
            if (v < best) best = v;
        }
    return std::min(best, cap);
}

double AdOracle::memoized(const Interval& a, const Interval& b, std::int64_t t) {
    auto key = pair_key(a, b, t);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    ++evals_;
    double value;
    if (t == 0) {
        value = interval_ed(*ctx_.input, a, b, EdVariant::IndelHalf).value();
    } else if (t == ctx_.w_prime()) {
        value = gamma_eval(a, b);
    } else {
        value = grid_eval(a, b, t);
    }
    memo_.emplace(key, value);
    return value;
}

double AdOracle::gamma_distance(const Interval& a, const Interval& b) {
    if (ctx_.exact_regime()) throw std::invalid_argument("ad: gamma grid needs w >= gamma^2");
    return memoized(a, b, ctx_.w_prime());
}

double AdOracle::ad_not_large(const Interval& a, const Interval& b, std::int64_t t) {
    if (ctx_.exact_regime()) throw std::invalid_argument("ad: grid needs w >= gamma^2");
    // t must be a power of gamma and at most w/gamma^2
    std::int64_t v = 1;
    while (v < t) v *= ctx_.gamma;
    if (v != t || t > ctx_.w / (ctx_.gamma * ctx_.gamma))
        throw std::invalid_argument("ad: t must be a power of gamma at most w/gamma^2");
    return memoized(a, b, t);
}

double AdOracle::ad_wc(const Interval& a, const Interval& b, double c) {
    if (!in_scale_set(c, ctx_.w)) throw std::invalid_argument("ad: cost not in S_w");
    if (a.is_bottom() || b.is_bottom()) {
        if (a.is_bottom() && b.is_bottom()) return 0.0;
        return static_cast<double>(ctx_.w);  // max distance against bottom
    }
    if (ctx_.exact_regime()) return memoized(a, b, 0);
    return memoized(a, b, scale_t(c));
}

double AdOracle::ad_w(const Interval& a, const Interval& b) {
    double total = 0.0;
    for (std::int64_t c : scale_costs(ctx_.w)) {
        if (c == 0) continue;  // the indicator sum only counts positive scales
        if (ad_wc(a, b, static_cast<double>(c)) > static_cast<double>(c))
            total += static_cast<double>(c);
    }
    return total;
}

}  // namespace edap
