#pragma once

#include <cstdint>
#include <memory>
#include <unordered_map>
#include <vector>

#include "edap/oracle.hpp"
#include "edap/types.hpp"

namespace edap {

// Single-scale alignment distances on width-w intervals, computed by grid
// shortest paths over a width-(w/gamma) base metric. ad_{w,c} dispatches on
// the rounded scale t: the gamma grid for the large regime (t = w/gamma),
// the V_{k,p,q} grid otherwise, and exact edit distance below gamma^2 where
// the grids have no room.
struct AdContext {
    const PaddedInput* input = nullptr;
    std::int64_t w = 0;
    std::int64_t gamma = 0;
    double tau_large = 1.0 / 128;
    const ScaleMetric* base = nullptr;  // distG_{w/gamma}; unused when w < gamma^2

    std::int64_t w_prime() const { return w / gamma; }
    std::int64_t grid_T() const { return gamma * gamma; }
    bool exact_regime() const { return w < gamma * gamma; }
};

class AdOracle {
public:
    explicit AdOracle(AdContext ctx);

    const AdContext& context() const { return ctx_; }

    // Scale selection: round c/tau_large down to a power of gamma (1 when
    // below), capped at w/gamma which selects the large-distance grid.
    std::int64_t scale_t(double c) const;

    // Gamma metric: 4 * grid shortest path + 2w/gamma. A pseudo-metric
    // (Gamma(I,I) = 2w/gamma) that always dominates ed.
    double gamma_distance(const Interval& a, const Interval& b);

    // Not-large regime: V_{k,p,q} grid shortest path capped at w' * theta * T
    // = t * gamma. Requires t a power of gamma, t <= w/gamma^2.
    double ad_not_large(const Interval& a, const Interval& b, std::int64_t t);

    // The per-cost metric; c must lie in S_w.
    double ad_wc(const Interval& a, const Interval& b, double c);

    // Aggregate sum_{c in S_w} c * [ad_{w,c} > c]; not a metric, diagnostics
    // only.
    double ad_w(const Interval& a, const Interval& b);

    std::uint64_t eval_count() const { return evals_; }
    std::uint64_t base_query_count() const { return base_queries_; }

private:
    double grid_eval(const Interval& a, const Interval& b, std::int64_t t);
    double gamma_eval(const Interval& a, const Interval& b);
    double memoized(const Interval& a, const Interval& b, std::int64_t t);

    AdContext ctx_;
    std::unordered_map<std::uint64_t, double> memo_;
    // per-eval scratch: lazy diagonal prefix sums and DP layers
    std::vector<std::vector<double>> prefix_;
    std::vector<std::uint32_t> prefix_epoch_;
    std::uint32_t epoch_ = 0;
    std::vector<double> layer_a_, layer_b_;
    std::uint64_t evals_ = 0;
    std::uint64_t base_queries_ = 0;
    const Interval* cur_a_ = nullptr;
    const Interval* cur_b_ = nullptr;
    std::int64_t cur_t_ = 0;
};

}  // namespace edap
