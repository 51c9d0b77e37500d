#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "edap/admetric.hpp"
#include "edap/alignment.hpp"
#include "edap/coloring.hpp"
#include "edap/profile.hpp"
#include "edap/rng.hpp"
#include "edap/softmath.hpp"
#include "edap/types.hpp"

namespace edap {

// Smallest contiguous window around the center holding zeta u-colored mass
// on each side (center mass counted on both sides). Boundary intervals whose
// full mass does not fit are excluded.
struct LambdaBall {
    Interval center;
    double zeta = 0;
    std::int64_t lo = 0;
    std::int64_t hi = 0;  // start positions, inclusive, on the center's axis
};

// Density domain: the whole interval universe or one contiguous axis range.
struct IntervalSet {
    bool all = true;
    Axis axis = Axis::X;
    std::int64_t lo = 0;
    std::int64_t hi = -1;

    static IntervalSet whole() { return IntervalSet{}; }
    static IntervalSet range(Axis axis, std::int64_t lo, std::int64_t hi) {
        return IntervalSet{false, axis, lo, hi};
    }
    static IntervalSet ball(const LambdaBall& b) {
        return IntervalSet{false, b.center.axis, b.lo, b.hi};
    }
};

struct MatchStats {
    std::uint64_t anchors = 0;
    std::uint64_t pivots = 0;
    std::uint64_t cluster_guard_rejects = 0;
    std::uint64_t edges_emitted = 0;
    std::uint64_t degenerate_normalizations = 0;
    std::uint64_t depth_guard_hits = 0;
    std::uint64_t colorings_recursed = 0;
};

// Sparse potential scores (interval, color) -> nonnegative value, plus the
// per-axis per-color layout the palette computation feeds to heavy-range
// queries.
class PotentialTable {
public:
    PotentialTable(std::int64_t n, std::int64_t real_colors);

    std::int64_t n() const { return n_; }
    std::int64_t real_colors() const { return real_colors_; }

    void add(std::int64_t idx, ColorId color, double value);
    double value(std::int64_t idx, ColorId color) const;
    double interval_total(std::int64_t idx) const;  // sum over real colors
    double total() const { return grand_total_; }

    // entries of one axis as (position, color, value) triples
    const std::vector<std::tuple<std::int64_t, ColorId, double>>& axis_entries(Axis a) const {
        return entries_[a == Axis::Y ? 1 : 0];
    }

private:
    std::int64_t n_ = 0;
    std::int64_t real_colors_ = 0;
    std::vector<std::vector<std::pair<ColorId, double>>> vals_;
    std::vector<double> totals_;
    std::vector<std::tuple<std::int64_t, ColorId, double>> entries_[2];
    double grand_total_ = 0;
};

// Per-radius theta mass accumulated by interval; the amendment step only
// needs Lambda-ball sums of it.
struct ThetaTable {
    std::vector<double> zetas;
    std::vector<std::vector<double>> per_zeta;  // [zeta index][dense interval index]
    double total = 0;

    ThetaTable(std::vector<double> radii, std::int64_t n);
    void add(std::int64_t idx, std::size_t zeta_index, double value);
};

struct TraceOptions {
    std::ostream* out = nullptr;
    const Alignment* reference_pi = nullptr;  // enables the corruption column
    double corruption_F = 2.0;
};

// Shared state of one MatchIntervals run (fixed width and base cost).
struct MatchContext {
    const PaddedInput* input = nullptr;
    const ParamProfile* profile = nullptr;
    AdOracle* ad = nullptr;
    double c = 0;
    CostSet ec;
    std::int64_t n = 0;  // padded length; universe has 2n intervals
    MatchStats* stats = nullptr;

    double n_alpha() const;       // n^alpha
    double q_exponent() const;    // ceil(1/epsilon)
    double theta_rd_floor(std::int64_t level, std::int64_t lambda_pow_t) const;
    double soft_quantile_level(std::span<const double> x, std::int64_t level) const;
};

// Operations (Algs. 2-9). Exposed individually for unit tests; the driver is
// match_intervals below.

LambdaBall lambda_ball(const Coloring& k, const Interval& center, double zeta);

double approx_density(const MatchContext& ctx, const Interval& I, const IntervalSet& S,
                      double d_min, double threshold_cost, const Coloring& kp, ColorId chi,
                      Rng& rng);

double approx_relative_density(const MatchContext& ctx, const Interval& I, const IntervalSet& S,
                               double rd_min, double threshold_cost, const Coloring& kp,
                               ColorId chi, Rng& rng, double* d_global_cache = nullptr);

struct ClusterFamily {
    bool empty = true;
    double c_hat = 0;
    std::vector<std::pair<double, std::int64_t>> by_distance;  // (ad value, dense index)
    std::vector<double> thresholds;                            // c_hat + j*c per j
    std::vector<std::size_t> prefix_len;                       // cluster j = first prefix_len[j]

    std::span<const std::pair<double, std::int64_t>> members(std::size_t j) const {
        return std::span(by_distance.data(), prefix_len[j]);
    }
};

ClusterFamily cluster_anchor(const MatchContext& ctx, const Interval& anchor, const Coloring& kp,
                             ColorId chi_p, Rng& rng);

void assign_phi(const MatchContext& ctx, ColorId chi_out, const ClusterFamily& family,
                std::size_t j, const Coloring& kp, ColorId chi_p, std::int64_t lambda_pow_t,
                PotentialTable& phi, Rng& rng);

// Returns the theta scores given to this pivot, one per radius in Z_l.
std::vector<double> assign_theta(const MatchContext& ctx, const Interval& pivot, ColorId chi_p,
                                 std::int64_t multiplicity, const Coloring& k, const Coloring& kp,
                                 std::int64_t level, std::int64_t lambda_pow_t, ThetaTable& theta,
                                 Rng& rng);

Coloring amend_coloring(const MatchContext& ctx, const Coloring& k, std::int64_t level,
                        const PotentialTable& phi, const ThetaTable& theta,
                        std::int64_t lambda_pow_t);

Coloring init_coloring(const Coloring& kp, std::int64_t t, std::int64_t lambda);

Coloring adjust_u(const MatchContext& ctx, Coloring k);

// Z_l: {0} at level 0, else beta^l times powers of two up to n (thinned by
// zl_stride).
std::vector<double> level_radii(const ParamProfile& profile, std::int64_t n, std::int64_t level);

// The recursive driver (Alg. MatchIntervals): emits the scale-c edge set.
std::vector<std::pair<Interval, Interval>> match_intervals(
    const PaddedInput& input, const ParamProfile& profile, AdOracle& ad, double c,
    const Coloring& kp, std::int64_t t, Rng rng, MatchStats* stats = nullptr,
    const TraceOptions& trace = {});

}  // namespace edap
