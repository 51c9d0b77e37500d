#include "edap/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <future>
#include <limits>
#include <mutex>
#include <queue>
#include <stdexcept>
#include <thread>
#include <unordered_map>

namespace edap {

double CharMetric::distance(const Interval& a, const Interval& b) const {
    if (a.width != 1 || b.width != 1) throw std::invalid_argument("CharMetric: width must be 1");
    if (a.is_bottom() || b.is_bottom()) return (a.is_bottom() && b.is_bottom()) ? 0.0 : 1.0;
    return input_->at(a.axis, a.start) == input_->at(b.axis, b.start) ? 0.0 : 1.0;
}

double ExactEdMetric::distance(const Interval& a, const Interval& b) const {
    if (a.width != width_ || b.width != width_)
        throw std::invalid_argument("ExactEdMetric: width mismatch");
    if (a.is_bottom() || b.is_bottom())
        return interval_ed(*input_, a, b, EdVariant::IndelHalf).value();
    // 32-bit codes packed side by side; starts beyond 2^30 would alias
    if (std::llabs(a.start) >= (1ll << 30) || std::llabs(b.start) >= (1ll << 30))
        return interval_ed(*input_, a, b, EdVariant::IndelHalf).value();
    auto enc = [](const Interval& iv) {
        return (static_cast<std::uint64_t>(iv.axis == Axis::Y) << 31) |
               static_cast<std::uint64_t>(iv.start + (1ll << 30));
    };
    std::uint64_t ka = enc(a), kb = enc(b);
    if (ka > kb) std::swap(ka, kb);
    std::uint64_t key = (ka << 32) | kb;
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    double v = interval_ed(*input_, a, b, EdVariant::IndelHalf).value();
    memo_.emplace(key, v);
    return v;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> dijkstra_multi(const MatchGraph& g, const std::vector<std::int64_t>& sources) {
    const auto& offsets = g.adj_offsets();
    const auto& entries = g.adj_entries();
    std::vector<double> dist(static_cast<std::size_t>(g.node_count()), kInf);
    using Item = std::pair<double, std::int64_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    for (auto s : sources) {
        dist[static_cast<std::size_t>(s)] = 0.0;
        pq.emplace(0.0, s);
    }
    while (!pq.empty()) {
        auto [d, u] = pq.top();
        pq.pop();
        if (d > dist[static_cast<std::size_t>(u)]) continue;
        for (std::int64_t e = offsets[static_cast<std::size_t>(u)];
             e < offsets[static_cast<std::size_t>(u + 1)]; ++e) {
            auto [v, w] = entries[static_cast<std::size_t>(e)];
            double nd = d + static_cast<double>(w);
            if (nd < dist[static_cast<std::size_t>(v)]) {
                dist[static_cast<std::size_t>(v)] = nd;
                pq.emplace(nd, v);
            }
        }
    }
    return dist;
}

unsigned worker_count() {
    return std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
}

class ExactApspOracle final : public OracleMetric {
public:
    ExactApspOracle(std::shared_ptr<const MatchGraph> g, bool eager)
        : graph_(std::move(g)), uni_(graph_->universe()) {
        graph_->adj_offsets();  // freeze adjacency before any threading
        if (eager) fill_all();
    }

    std::int64_t width() const override { return uni_.width(); }
    OracleMode mode() const override { return OracleMode::ExactApsp; }
    const IntervalUniverse& universe() const override { return uni_; }

    double distance(const Interval& a, const Interval& b) const override {
        if (a.is_bottom() || b.is_bottom())
            throw std::invalid_argument("oracle: bottom is not a graph node");
        if (a.width != uni_.width() || b.width != uni_.width())
            throw std::invalid_argument("oracle: width mismatch");
        return distance_by_index(uni_.index(a), uni_.index(b));
    }

    double distance_by_index(std::int64_t u, std::int64_t v) const override {
        if (u == v) return 0.0;
        if (eager_) {
            auto [lo, hi] = std::minmax(u, v);
            return static_cast<double>(tri_[tri_index(hi, lo)]);
        }
        std::lock_guard<std::mutex> lock(mu_);
        auto it = cache_.find(u);
        if (it == cache_.end()) {
            auto row = dijkstra_multi(*graph_, {u});
            it = cache_.emplace(u, std::vector<float>(row.begin(), row.end())).first;
        }
        return static_cast<double>(it->second[static_cast<std::size_t>(v)]);
    }

private:
    static std::size_t tri_index(std::int64_t i, std::int64_t j) {
        return static_cast<std::size_t>(i) * (static_cast<std::size_t>(i) + 1) / 2 +
               static_cast<std::size_t>(j);
    }

    void fill_all() {
        const std::int64_t nn = graph_->node_count();
        tri_.assign(tri_index(nn - 1, nn - 1) + 1, 0.0f);
        std::atomic<std::int64_t> next{0};
        auto worker = [&]() {
            for (;;) {
                std::int64_t s = next.fetch_add(1);
                if (s >= nn) return;
                auto row = dijkstra_multi(*graph_, {s});
                for (std::int64_t v = 0; v <= s; ++v)
                    tri_[tri_index(s, v)] = static_cast<float>(row[static_cast<std::size_t>(v)]);
            }
        };
        std::vector<std::future<void>> futs;
        for (unsigned t = 0; t < worker_count(); ++t)
            futs.push_back(std::async(std::launch::async, worker));
        for (auto& f : futs) f.get();
        eager_ = true;
    }

    std::shared_ptr<const MatchGraph> graph_;
    IntervalUniverse uni_;
    bool eager_ = false;
    std::vector<float> tri_;
    mutable std::mutex mu_;
    mutable std::unordered_map<std::int64_t, std::vector<float>> cache_;
};

// Landmark l_inf embedding plus a truncated exact near-metric. Query:
//   max( alpha * max_coord |f(u) - f(v)| , min(tau(u,v), 3*alpha) )
// Both parts are (pseudo)metrics dominated by alpha * tau, so the max is as
// well; the near part makes domination deterministic for tau <= 3*alpha and
// the embedding carries pairs beyond that with high probability.
class LandmarkOracle final : public OracleMetric {
public:
    LandmarkOracle(std::shared_ptr<const MatchGraph> g, std::int64_t alpha, std::int64_t reps,
                   Rng rng)
        : graph_(std::move(g)), uni_(graph_->universe()), alpha_(alpha) {
        if (alpha_ < 3 || alpha_ % 2 == 0)
            throw std::invalid_argument("landmark oracle: alpha must be an odd integer >= 3");
        graph_->adj_offsets();
        const std::int64_t nn = graph_->node_count();
        const double nd = static_cast<double>(nn);
        if (reps <= 0)
            reps = std::max<std::int64_t>(6, static_cast<std::int64_t>(std::ceil(1.5 * std::log2(nd))));

        // one landmark set per (dyadic inclusion probability, repetition)
        auto scales = static_cast<std::int64_t>(std::ceil(std::log2(std::max(nd, 2.0))));
        std::vector<std::vector<std::int64_t>> source_sets;
        for (std::int64_t j = 1; j <= scales; ++j) {
            double p = std::pow(2.0, -static_cast<double>(j));
            auto expected = static_cast<std::int64_t>(std::llround(p * nd));
            if (expected < 1) expected = 1;
            for (std::int64_t r = 0; r < reps; ++r) {
                std::vector<std::int64_t> set;
                std::int64_t count = std::min<std::int64_t>(expected, nn);
                std::unordered_map<std::int64_t, bool> seen;
                while (static_cast<std::int64_t>(set.size()) < count) {
                    auto cand =
                        static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(nn)));
                    if (!seen.emplace(cand, true).second) continue;
                    set.push_back(cand);
                }
                source_sets.push_back(std::move(set));
            }
        }
        coords_.resize(source_sets.size());
        std::atomic<std::size_t> next{0};
        auto worker = [&]() {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= source_sets.size()) return;
                auto row = dijkstra_multi(*graph_, source_sets[i]);
                coords_[i].assign(row.begin(), row.end());
            }
        };
        std::vector<std::future<void>> futs;
        for (unsigned t = 0; t < worker_count(); ++t)
            futs.push_back(std::async(std::launch::async, worker));
        for (auto& f : futs) f.get();

        build_near_tables();
    }

    std::int64_t width() const override { return uni_.width(); }
    OracleMode mode() const override { return OracleMode::LandmarkEmbed; }
    const IntervalUniverse& universe() const override { return uni_; }
    std::size_t coordinate_count() const { return coords_.size(); }

    double distance(const Interval& a, const Interval& b) const override {
        if (a.is_bottom() || b.is_bottom())
            throw std::invalid_argument("oracle: bottom is not a graph node");
        if (a.width != uni_.width() || b.width != uni_.width())
            throw std::invalid_argument("oracle: width mismatch");
        return distance_by_index(uni_.index(a), uni_.index(b));
    }

    double distance_by_index(std::int64_t u, std::int64_t v) const override {
        if (u == v) return 0.0;
        double best = 0.0;
        for (const auto& f : coords_) {
            double d = std::fabs(static_cast<double>(f[static_cast<std::size_t>(u)]) -
                                 static_cast<double>(f[static_cast<std::size_t>(v)]));
            if (d > best) best = d;
        }
        return std::max(static_cast<double>(alpha_) * best, near_distance(u, v));
    }

private:
    // min(tau, 3*alpha) on the quotient by zero-weight edges: exact, cheap
    // (cross edges heavier than the truncation radius are never expanded),
    // and a metric in its own right.
    void build_near_tables() {
        const std::int64_t nn = graph_->node_count();
        near_radius_ = 3.0 * static_cast<double>(alpha_);
        parent_.resize(static_cast<std::size_t>(nn));
        for (std::int64_t i = 0; i < nn; ++i) parent_[static_cast<std::size_t>(i)] = i;
        for (const auto& e : graph_->edges())
            if (e.weight <= 0.0) unite(e.u, e.v);
        // flatten so queries never mutate (concurrent reads)
        root_of_.resize(static_cast<std::size_t>(nn));
        for (std::int64_t i = 0; i < nn; ++i) root_of_[static_cast<std::size_t>(i)] = walk(i);

        // quotient adjacency with positive weights only
        std::unordered_map<std::int64_t, std::vector<std::pair<std::int64_t, float>>> qadj;
        for (const auto& e : graph_->edges()) {
            if (e.weight <= 0.0) continue;
            std::int64_t ru = root_of_[static_cast<std::size_t>(e.u)];
            std::int64_t rv = root_of_[static_cast<std::size_t>(e.v)];
            if (ru == rv) continue;
            qadj[ru].emplace_back(rv, static_cast<float>(e.weight));
            qadj[rv].emplace_back(ru, static_cast<float>(e.weight));
        }
        for (auto& [root, edges] : qadj) {
            (void)root;
            std::sort(edges.begin(), edges.end());
        }
        // truncated Dijkstra from every class root
        for (const auto& [root, edges] : qadj) {
            (void)edges;
            std::priority_queue<std::pair<double, std::int64_t>,
                                std::vector<std::pair<double, std::int64_t>>, std::greater<>>
                pq;
            std::unordered_map<std::int64_t, double> dist;
            dist[root] = 0.0;
            pq.emplace(0.0, root);
            auto& table = near_[root];
            while (!pq.empty()) {
                auto [d, x] = pq.top();
                pq.pop();
                auto it = dist.find(x);
                if (it == dist.end() || d > it->second) continue;
                table.emplace_back(x, static_cast<float>(d));
                auto adj_it = qadj.find(x);
                if (adj_it == qadj.end()) continue;
                for (const auto& [y, w] : adj_it->second) {
                    double ndist = d + static_cast<double>(w);
                    if (ndist > near_radius_) continue;
                    auto dit = dist.find(y);
                    if (dit == dist.end() || ndist < dit->second) {
                        dist[y] = ndist;
                        pq.emplace(ndist, y);
                    }
                }
            }
            std::sort(table.begin(), table.end());
        }
    }

    std::int64_t walk(std::int64_t x) {
        while (parent_[static_cast<std::size_t>(x)] != x) {
            parent_[static_cast<std::size_t>(x)] =
                parent_[static_cast<std::size_t>(parent_[static_cast<std::size_t>(x)])];
            x = parent_[static_cast<std::size_t>(x)];
        }
        return x;
    }

    void unite(std::int64_t a, std::int64_t b) {
        a = walk(a);
        b = walk(b);
        if (a != b) parent_[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    }

    double near_distance(std::int64_t u, std::int64_t v) const {
        std::int64_t ru = root_of_[static_cast<std::size_t>(u)];
        std::int64_t rv = root_of_[static_cast<std::size_t>(v)];
        if (ru == rv) return 0.0;
        auto it = near_.find(ru);
        if (it != near_.end()) {
            auto& table = it->second;
            auto pos = std::lower_bound(table.begin(), table.end(), std::make_pair(rv, -1.0f));
            if (pos != table.end() && pos->first == rv) return static_cast<double>(pos->second);
        }
        return near_radius_;
    }

    std::shared_ptr<const MatchGraph> graph_;
    IntervalUniverse uni_;
    std::int64_t alpha_;
    std::vector<std::vector<float>> coords_;
    double near_radius_ = 0;
    std::vector<std::int64_t> parent_;   // build-time union-find scratch
    std::vector<std::int64_t> root_of_;  // flattened class roots, read-only after build
    std::unordered_map<std::int64_t, std::vector<std::pair<std::int64_t, float>>> near_;
};

}  // namespace

std::vector<double> dijkstra(const MatchGraph& g, std::int64_t source) {
    return dijkstra_multi(g, {source});
}

std::unique_ptr<OracleMetric> build_oracle(std::shared_ptr<const MatchGraph> graph,
                                           OracleMode mode, const OracleBuildOptions& opts,
                                           Rng rng) {
    if (mode == OracleMode::ExactApsp) {
        bool eager = opts.eager && graph->node_count() <= opts.eager_apsp_limit;
        return std::make_unique<ExactApspOracle>(std::move(graph), eager);
    }
    return std::make_unique<LandmarkOracle>(std::move(graph), opts.alpha, opts.reps, rng);
}

}  // namespace edap
