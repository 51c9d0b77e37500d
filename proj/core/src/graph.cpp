#include "edap/graph.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace edap {

std::int64_t IntervalUniverse::index(Axis axis, std::int64_t start) const {
    if (axis == Axis::Bottom) throw std::invalid_argument("universe: bottom is not a node");
    std::int64_t s = clamp_start(start);
    std::int64_t base = axis == Axis::X ? 0 : axis_size();
    return base + (s - lo_);
}

Interval IntervalUniverse::interval_at(std::int64_t idx) const {
    if (idx < 0 || idx >= size()) throw std::out_of_range("universe: bad node index");
    Axis axis = idx < axis_size() ? Axis::X : Axis::Y;
    std::int64_t off = idx % axis_size();
    return Interval{axis, lo_ + off, width_};
}

void MatchGraph::add_edge(const Interval& a, const Interval& b, double weight, double scale) {
    if (a.width != uni_.width() || b.width != uni_.width())
        throw std::invalid_argument("match graph: edge width mismatch");
    std::int64_t u = uni_.index(a), v = uni_.index(b);
    if (u == v) return;
    auto key = std::minmax(u, v);
    auto it = edge_slot_.find(key);
    if (it != edge_slot_.end()) {
        // duplicate pair: keep the minimum-weight edge
        if (weight < edges_[it->second].weight) {
            edges_[it->second].weight = weight;
            edges_[it->second].scale = scale;
            adj_ready_ = false;
        }
        return;
    }
    edge_slot_.emplace(key, edges_.size());
    edges_.push_back(GraphEdge{key.first, key.second, weight, scale});
    adj_ready_ = false;
}

void MatchGraph::ensure_adjacency() const {
    if (adj_ready_) return;
    const std::int64_t nn = node_count();
    std::vector<std::int64_t> degree(static_cast<std::size_t>(nn), 0);
    for (const auto& e : edges_) {
        ++degree[static_cast<std::size_t>(e.u)];
        ++degree[static_cast<std::size_t>(e.v)];
    }
    offsets_.assign(static_cast<std::size_t>(nn + 1), 0);
    for (std::int64_t i = 0; i < nn; ++i)
        offsets_[static_cast<std::size_t>(i + 1)] =
            offsets_[static_cast<std::size_t>(i)] + degree[static_cast<std::size_t>(i)];
    entries_.assign(static_cast<std::size_t>(offsets_[static_cast<std::size_t>(nn)]), {});
    std::vector<std::int64_t> cursor(offsets_.begin(), offsets_.end() - 1);
    for (const auto& e : edges_) {
        entries_[static_cast<std::size_t>(cursor[static_cast<std::size_t>(e.u)]++)] = {
            e.v, static_cast<float>(e.weight)};
        entries_[static_cast<std::size_t>(cursor[static_cast<std::size_t>(e.v)]++)] = {
            e.u, static_cast<float>(e.weight)};
    }
    adj_ready_ = true;
}

const std::vector<std::int64_t>& MatchGraph::adj_offsets() const {
    ensure_adjacency();
    return offsets_;
}

const std::vector<std::pair<std::int64_t, float>>& MatchGraph::adj_entries() const {
    ensure_adjacency();
    return entries_;
}

void MatchGraph::dump(std::ostream& out) const {
    for (const auto& e : edges_) {
        Interval a = uni_.interval_at(e.u), b = uni_.interval_at(e.v);
        out << axis_name(a.axis) << ' ' << a.start << ' ' << axis_name(b.axis) << ' ' << b.start
            << ' ' << e.weight << ' ' << e.scale << '\n';
    }
}

MatchGraph MatchGraph::load(std::istream& in, std::int64_t n, std::int64_t width) {
    MatchGraph g{IntervalUniverse(n, width)};
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string ax1, ax2;
        std::int64_t s1, s2;
        double weight, scale;
        if (!(ss >> ax1 >> s1 >> ax2 >> s2 >> weight >> scale))
            throw std::invalid_argument("match graph: malformed edge line '" + line + "'");
        auto parse_axis = [](const std::string& s) {
            if (s == "X") return Axis::X;
            if (s == "Y") return Axis::Y;
            throw std::invalid_argument("match graph: bad axis '" + s + "'");
        };
        g.add_edge(Interval{parse_axis(ax1), s1, width}, Interval{parse_axis(ax2), s2, width},
                   weight, scale);
    }
    return g;
}

MatchGraph assemble_graph(
    const std::map<double, std::vector<std::pair<Interval, Interval>>>& scale_graphs,
    std::int64_t w, std::int64_t n, double c_m, const PaddedInput* input) {
    MatchGraph g{IntervalUniverse(n, w)};
    for (const auto& [c, edges] : scale_graphs)
        for (const auto& [a, b] : edges) g.add_edge(a, b, c_m * c, c);
    const auto& uni = g.universe();
    for (Axis axis : {Axis::X, Axis::Y})
        for (std::int64_t s = uni.lo(); s < uni.hi(); ++s)
            g.add_edge(Interval{axis, s, w}, Interval{axis, s + 1, w}, 1.0, -1.0);

    if (input != nullptr) {
        // common prefix / suffix of the real content
        std::int64_t lcp = 0;
        while (lcp < n && input->x[static_cast<std::size_t>(lcp)] ==
                              input->y[static_cast<std::size_t>(lcp)])
            ++lcp;
        std::int64_t lcs = 0;
        while (lcs < n && input->x[static_cast<std::size_t>(n - 1 - lcs)] ==
                              input->y[static_cast<std::size_t>(n - 1 - lcs)])
            ++lcs;
        // left boundary: the window covers s..s+w-1 and reads real symbols
        // only at 1..s+w-1
        for (std::int64_t s = uni.lo(); s <= 0; ++s) {
            std::int64_t real = w + s - 1;
            if (real <= lcp)
                g.add_edge(Interval{Axis::X, s, w}, Interval{Axis::Y, s, w}, 0.0, -2.0);
        }
        // right boundary: real symbols at s..n only
        for (std::int64_t s = std::max<std::int64_t>(uni.lo(), n - w + 2); s <= uni.hi(); ++s) {
            std::int64_t real = n - s + 1;
            if (real <= lcs)
                g.add_edge(Interval{Axis::X, s, w}, Interval{Axis::Y, s, w}, 0.0, -2.0);
        }
        // the four all-pad corner nodes hold the same string
        Interval xl{Axis::X, uni.lo(), w}, yl{Axis::Y, uni.lo(), w};
        Interval xr{Axis::X, uni.hi(), w}, yr{Axis::Y, uni.hi(), w};
        if (w + uni.lo() - 1 <= 0) {
            g.add_edge(xl, xr, 0.0, -2.0);
            g.add_edge(xl, yr, 0.0, -2.0);
            g.add_edge(yl, xr, 0.0, -2.0);
        }
    }
    return g;
}

}  // namespace edap
