#include "doctest.h"

#include <stdexcept>
#include "edap/graph.hpp"
#include "edap/oracle.hpp"

#include <sstream>

using namespace edap;

namespace {

std::shared_ptr<MatchGraph> chain_graph(std::int64_t n, std::int64_t w) {
    return std::make_shared<MatchGraph>(assemble_graph({}, w, n, 3.0));
}

}  // namespace

TEST_CASE("char metric is the width-1 base") {
    auto p = pad_input(std::string("abca"), std::string("abca"), 2);
    CharMetric m(p);
    CHECK(m.distance(Interval{Axis::X, 1, 1}, Interval{Axis::Y, 1, 1}) == 0.0);
    CHECK(m.distance(Interval{Axis::X, 1, 1}, Interval{Axis::Y, 2, 1}) == 1.0);
    // pad positions compare equal to each other
    CHECK(m.distance(Interval{Axis::X, 900, 1}, Interval{Axis::Y, 800, 1}) == 0.0);
}

TEST_CASE("assemble_graph builds the chain and keeps minimum duplicate weight") {
    std::map<double, std::vector<std::pair<Interval, Interval>>> scales;
    Interval a{Axis::X, 1, 4}, b{Axis::Y, 1, 4};
    scales[2.0] = {{a, b}};
    scales[4.0] = {{a, b}};
    auto g = assemble_graph(scales, 4, 16, 3.0);

    // pure chain distance when no cross edge is on the path
    OracleBuildOptions opts;
    opts.eager = true;
    auto oracle = build_oracle(std::make_shared<MatchGraph>(g), OracleMode::ExactApsp, opts, Rng(1));
    CHECK(oracle->distance(Interval{Axis::X, 3, 4}, Interval{Axis::X, 9, 4}) == doctest::Approx(6.0));
    // duplicate pair keeps weight C_m * 2 = 6, not 12
    CHECK(oracle->distance(a, b) == doctest::Approx(6.0));

    bool found = false;
    for (const auto& e : g.edges())
        if (e.scale == 2.0) {
            CHECK(e.weight == doctest::Approx(6.0));
            found = true;
        }
    CHECK(found);

    // width mismatch is an error
    std::map<double, std::vector<std::pair<Interval, Interval>>> bad;
    bad[1.0] = {{Interval{Axis::X, 1, 8}, Interval{Axis::Y, 1, 4}}};
    CHECK_THROWS_AS(assemble_graph(bad, 4, 16, 3.0), std::invalid_argument);
}

TEST_CASE("graph dump/load round-trips") {
    std::map<double, std::vector<std::pair<Interval, Interval>>> scales;
    scales[2.0] = {{Interval{Axis::X, 3, 4}, Interval{Axis::Y, 7, 4}}};
    scales[0.0] = {{Interval{Axis::X, 5, 4}, Interval{Axis::Y, 5, 4}}};
    auto g = assemble_graph(scales, 4, 16, 3.0);

    std::stringstream ss;
    g.dump(ss);
    auto loaded = MatchGraph::load(ss, 16, 4);
    CHECK(loaded.edges().size() == g.edges().size());
    std::stringstream again;
    loaded.dump(again);
    std::stringstream first;
    g.dump(first);
    CHECK(again.str() == first.str());
}

TEST_CASE("exact oracle equals chain metric and handles clamped pads") {
    auto g = chain_graph(32, 4);
    OracleBuildOptions opts;
    opts.eager = true;
    auto oracle = build_oracle(g, OracleMode::ExactApsp, opts, Rng(2));
    CHECK(oracle->distance(Interval{Axis::X, 2, 4}, Interval{Axis::X, 12, 4}) == doctest::Approx(10.0));
    // all-pad starts collapse onto the same node
    CHECK(oracle->distance(Interval{Axis::X, 70, 4}, Interval{Axis::X, 90, 4}) == 0.0);
    CHECK(oracle->distance(Interval{Axis::X, 5, 4}, Interval{Axis::X, 5, 4}) == 0.0);
    CHECK_THROWS_AS(oracle->distance(Interval::bottom(4), Interval{Axis::X, 1, 4}),
                    std::invalid_argument);
}

TEST_CASE("landmark oracle: sandwich and metric axioms on fuzzed graphs") {
    Rng rng(77);
    for (int trial = 0; trial < 4; ++trial) {
        std::int64_t n = 48 + static_cast<std::int64_t>(rng.below(160));
        std::map<double, std::vector<std::pair<Interval, Interval>>> scales;
        auto costs = scale_costs(4);
        for (int e = 0; e < 60; ++e) {
            Interval a{rng.bernoulli(0.5) ? Axis::X : Axis::Y,
                       1 + static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(n))), 4};
            Interval b{rng.bernoulli(0.5) ? Axis::X : Axis::Y,
                       1 + static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(n))), 4};
            scales[static_cast<double>(costs[rng.below(costs.size())])].push_back({a, b});
        }
        auto g = std::make_shared<MatchGraph>(assemble_graph(scales, 4, n, 8.0));
        OracleBuildOptions opts;
        opts.alpha = 3;
        opts.reps = 40;
        auto oracle = build_oracle(g, OracleMode::LandmarkEmbed, opts, rng.split(trial));

        const std::int64_t nn = g->node_count();
        for (int s = 0; s < 6; ++s) {
            auto src = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(nn)));
            auto tau = dijkstra(*g, src);
            for (int t = 0; t < 40; ++t) {
                auto dst = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(nn)));
                double q = oracle->distance_by_index(src, dst);
                CHECK(q >= tau[static_cast<std::size_t>(dst)] - 1e-9);
                CHECK(q <= 3.0 * tau[static_cast<std::size_t>(dst)] + 1e-9);
                CHECK(q == oracle->distance_by_index(dst, src));
            }
        }
        for (int t = 0; t < 100; ++t) {
            auto u = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(nn)));
            auto v = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(nn)));
            auto w = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(nn)));
            CHECK(oracle->distance_by_index(u, w) <=
                  oracle->distance_by_index(u, v) + oracle->distance_by_index(v, w) + 1e-9);
        }
    }
}

TEST_CASE("landmark oracle rejects bad alpha") {
    auto g = chain_graph(16, 4);
    OracleBuildOptions opts;
    opts.alpha = 2;
    CHECK_THROWS_AS(build_oracle(g, OracleMode::LandmarkEmbed, opts, Rng(3)),
                    std::invalid_argument);
}

TEST_CASE("oracle determinism after build") {
    auto g = chain_graph(64, 4);
    OracleBuildOptions opts;
    opts.alpha = 3;
    opts.reps = 8;
    auto a = build_oracle(g, OracleMode::LandmarkEmbed, opts, Rng(42));
    auto b = build_oracle(g, OracleMode::LandmarkEmbed, opts, Rng(42));
    Rng rng(5);
    for (int i = 0; i < 200; ++i) {
        auto u = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(g->node_count())));
        auto v = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(g->node_count())));
        CHECK(a->distance_by_index(u, v) == b->distance_by_index(u, v));
    }
}
