#pragma once

#include <cstdint>
#include <memory>
#include <unordered_map>
#include <vector>

#include "edap/exact.hpp"
#include "edap/graph.hpp"
#include "edap/profile.hpp"
#include "edap/rng.hpp"
#include "edap/types.hpp"

namespace edap {

// Queryable distance on width-w intervals. Implementations: exact edit
// distance, graph shortest-path (exact mode), landmark embedding, and the
// width-1 character metric.
class ScaleMetric {
public:
    virtual ~ScaleMetric() = default;
    virtual std::int64_t width() const = 0;
    virtual double distance(const Interval& a, const Interval& b) const = 0;
};

// distG_1: two positions are at distance 0 iff they hold the same character.
class CharMetric final : public ScaleMetric {
public:
    explicit CharMetric(const PaddedInput& input) : input_(&input) {}
    std::int64_t width() const override { return 1; }
    double distance(const Interval& a, const Interval& b) const override;

private:
    const PaddedInput* input_;
};

// Exact interval edit distance (IndelHalf), memoized. The reference base
// metric of the differential tests. The memo is not synchronized: share one
// instance across threads only for read-heavy workloads after warmup, or
// keep one per thread.
class ExactEdMetric final : public ScaleMetric {
public:
    ExactEdMetric(const PaddedInput& input, std::int64_t width)
        : input_(&input), width_(width) {}
    std::int64_t width() const override { return width_; }
    double distance(const Interval& a, const Interval& b) const override;

private:
    const PaddedInput* input_;
    std::int64_t width_;
    mutable std::unordered_map<std::uint64_t, double> memo_;
};

// Graph-backed oracle over a MatchGraph. ExactApsp answers true shortest
// paths; LandmarkEmbed answers alpha * (l_inf distance between
// landmark-distance coordinate vectors), which is a metric sandwiched in
// [tau, alpha * tau] (the lower side with high probability).
class OracleMetric : public ScaleMetric {
public:
    virtual OracleMode mode() const = 0;
    // raw graph nodes by dense index (diagnostics, tests)
    virtual double distance_by_index(std::int64_t u, std::int64_t v) const = 0;
    virtual const IntervalUniverse& universe() const = 0;
};

struct OracleBuildOptions {
    std::int64_t alpha = 3;         // landmark mode approximation factor, odd >= 3
    std::int64_t reps = 0;          // landmark sets per scale; 0 => 2 log2 N
    std::int64_t eager_apsp_limit = 12500;  // full APSP below this node count
    bool eager = false;             // force eager APSP fill
};

std::unique_ptr<OracleMetric> build_oracle(std::shared_ptr<const MatchGraph> graph,
                                           OracleMode mode, const OracleBuildOptions& opts,
                                           Rng rng);

// Dijkstra from one source; distances to every node. Shared by oracle
// implementations and by the differential tests.
std::vector<double> dijkstra(const MatchGraph& g, std::int64_t source);

}  // namespace edap
