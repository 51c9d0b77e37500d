#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <vector>

#include "edap/types.hpp"

namespace edap {

// Dense indexing of the width-w interval universe. Starts run over
// [1 - w, n + 1] on both axes: anything further out reads as all-pad and is
// clamped onto the boundary node carrying the identical string.
class IntervalUniverse {
public:
    IntervalUniverse() = default;
    IntervalUniverse(std::int64_t n, std::int64_t width)
        : n_(n), width_(width), lo_(1 - width), hi_(n + 1) {}

    std::int64_t n() const { return n_; }
    std::int64_t width() const { return width_; }
    std::int64_t lo() const { return lo_; }
    std::int64_t hi() const { return hi_; }
    std::int64_t axis_size() const { return hi_ - lo_ + 1; }
    std::int64_t size() const { return 2 * axis_size(); }

    std::int64_t clamp_start(std::int64_t s) const {
        return s < lo_ ? lo_ : (s > hi_ ? hi_ : s);
    }

    std::int64_t index(Axis axis, std::int64_t start) const;
    std::int64_t index(const Interval& iv) const { return index(iv.axis, iv.start); }
    Interval interval_at(std::int64_t idx) const;

private:
    std::int64_t n_ = 0;
    std::int64_t width_ = 0;
    std::int64_t lo_ = 0;
    std::int64_t hi_ = 0;
};

struct GraphEdge {
    std::int64_t u = 0;
    std::int64_t v = 0;
    double weight = 0;
    double scale = 0;  // cost scale c the edge came from; -1 for chain edges
};

// Weighted undirected interval graph: per-scale matching edges (weight
// C_m * c, min kept on duplicates) plus the unit chain along each axis.
class MatchGraph {
public:
    MatchGraph() = default;
    explicit MatchGraph(IntervalUniverse uni) : uni_(uni) {}

    const IntervalUniverse& universe() const { return uni_; }
    const std::vector<GraphEdge>& edges() const { return edges_; }
    std::int64_t node_count() const { return uni_.size(); }

    void add_edge(const Interval& a, const Interval& b, double weight, double scale);

    // Adjacency in CSR form; built lazily and cached.
    const std::vector<std::int64_t>& adj_offsets() const;
    const std::vector<std::pair<std::int64_t, float>>& adj_entries() const;

    void dump(std::ostream& out) const;
    static MatchGraph load(std::istream& in, std::int64_t n, std::int64_t width);

private:
    void ensure_adjacency() const;

    IntervalUniverse uni_;
    std::vector<GraphEdge> edges_;
    std::map<std::pair<std::int64_t, std::int64_t>, std::size_t> edge_slot_;
    mutable std::vector<std::int64_t> offsets_;
    mutable std::vector<std::pair<std::int64_t, float>> entries_;
    mutable bool adj_ready_ = false;
};

// Per-scale edge sets (interval endpoints) -> G_w with weights C_m * c and
// the unit chains. Duplicate edges keep the minimum weight. Edges whose
// endpoints have the wrong width throw.
//
// When the padded input is supplied, aligned pad-boundary windows whose
// symbols literally coincide (checked through the common prefix/suffix) get
// zero-weight edges. The matching universe stops at starts in [1, n], so
// these are the only nodes whose equality no anchor can certify; without
// them identical borders sit at positive graph distance and the zero level
// never percolates up the widths.
MatchGraph assemble_graph(const std::map<double, std::vector<std::pair<Interval, Interval>>>&
                              scale_graphs,
                          std::int64_t w, std::int64_t n, double c_m,
                          const PaddedInput* input = nullptr);

}  // namespace edap
