#include "doctest.h"

#include <stdexcept>
#include "edap/exact.hpp"
#include "edap/pipeline.hpp"

#include <sstream>

using namespace edap;

namespace {

ParamProfile tiny_profile() {
    ParamProfile p = ParamProfile::practical();
    p.colorings_per_step = 1;
    p.max_steps = 1;
    p.max_levels = 2;
    p.pivot_rate_scale = 1.0 / 16.0;
    p.density_sample_budget = 64;
    return p;
}

std::string rand_str(Rng& rng, std::int64_t n, int alphabet) {
    std::string s;
    for (std::int64_t i = 0; i < n; ++i) s.push_back(static_cast<char>('a' + rng.below(alphabet)));
    return s;
}

}  // namespace

TEST_CASE("identical strings estimate zero in exact mode with fixed index") {
    Rng rng(7);
    auto x = rand_str(rng, 64, 3);
    PipelineOptions opts;
    opts.oracle_mode = OracleMode::ExactApsp;
    opts.final_index_random = false;
    opts.seed = 1;

    // all ad distances vanish and anchors certify zero-weight 2-hop paths at
    // every scale; with a trimmed anchor budget the final pair itself can
    // miss its anchor and fall back to the adjacent border path of cost 2
    ParamProfile rich = ParamProfile::practical();
    rich.colorings_per_step = 2;
    rich.max_steps = 4;
    auto result = estimate_edit_distance(x, x, rich, opts);
    CHECK(result.estimate == 0.0);

    for (std::uint64_t seed : {2, 3, 4}) {
        opts.seed = seed;
        auto r = estimate_edit_distance(x, x, rich, opts);
        CHECK(r.estimate <= 2.0);
    }
}

TEST_CASE("single substitution dominates the true distance") {
    Rng rng(11);
    auto x = rand_str(rng, 64, 3);
    auto y = x;
    y[20] = y[20] == 'a' ? 'b' : 'a';
    PipelineOptions opts;
    opts.oracle_mode = OracleMode::ExactApsp;
    opts.final_index_random = false;
    auto result = estimate_edit_distance(x, y, tiny_profile(), opts);
    CHECK(result.estimate >= 1.0 - 1e-9);
}

TEST_CASE("domination on fuzzed pairs with fixed index and exact mode") {
    Rng rng(13);
    for (int t = 0; t < 8; ++t) {
        auto x = rand_str(rng, 48 + rng.below(40), 2);
        auto y = rand_str(rng, 48 + rng.below(40), 2);
        std::vector<Symbol> xs(x.begin(), x.end()), ys(y.begin(), y.end());
        double exact = edit_distance(xs, ys, EdVariant::IndelHalf).value();
        PipelineOptions opts;
        opts.oracle_mode = OracleMode::ExactApsp;
        opts.final_index_random = false;
        opts.seed = 100 + t;
        auto result = estimate_edit_distance(x, y, tiny_profile(), opts);
        CHECK(result.estimate >= exact - 1e-9);
    }
}

TEST_CASE("chain bound on consecutive intervals") {
    Rng rng(17);
    auto x = rand_str(rng, 64, 3);
    auto y = rand_str(rng, 64, 3);
    auto profile = tiny_profile();
    PipelineOptions opts;
    opts.oracle_mode = OracleMode::ExactApsp;
    opts.final_index_random = false;
    opts.collect_edges = true;
    auto result = estimate_edit_distance(x, y, profile, opts);

    // rebuild the top-width oracle from the captured artifacts; consecutive
    // intervals must sit within 10/eps of each other
    REQUIRE(!result.captured.empty());
    const auto& top = result.captured.back();
    std::map<double, std::vector<std::pair<Interval, Interval>>> scales = top.scale_edges;
    auto graph = std::make_shared<MatchGraph>(
        assemble_graph(scales, top.width, result.padded_n, profile.c_m()));
    OracleBuildOptions bo;
    bo.eager = true;
    auto oracle = build_oracle(graph, OracleMode::ExactApsp, bo, Rng(1));
    double bound = 10.0 / profile.epsilon;
    for (std::int64_t i = 1; i < 20; ++i) {
        double d = oracle->distance(Interval{Axis::X, i, top.width},
                                    Interval{Axis::X, i + 1, top.width});
        CHECK(d <= bound + 1e-9);
    }
}

TEST_CASE("determinism under fixed seed") {
    Rng rng(19);
    auto x = rand_str(rng, 64, 4);
    auto y = rand_str(rng, 64, 4);
    PipelineOptions opts;
    opts.oracle_mode = OracleMode::ExactApsp;
    opts.final_index_random = true;
    opts.seed = 12345;
    auto r1 = estimate_edit_distance(x, y, tiny_profile(), opts);
    auto r2 = estimate_edit_distance(x, y, tiny_profile(), opts);
    CHECK(r1.estimate == r2.estimate);
    CHECK(r1.final_index == r2.final_index);

    // inner threading must not change the outcome
    opts.threads = 4;
    auto r3 = estimate_edit_distance(x, y, tiny_profile(), opts);
    CHECK(r3.estimate == r1.estimate);
}

TEST_CASE("profile inconsistencies fail before any work") {
    auto bad = tiny_profile();
    bad.eta = 0.3;
    PipelineOptions opts;
    CHECK_THROWS_AS(estimate_edit_distance("abc", "abd", bad, opts), std::invalid_argument);
}

TEST_CASE("run report is JSON and round-trips losslessly") {
    Rng rng(23);
    auto x = rand_str(rng, 32, 3);
    PipelineOptions opts;
    opts.oracle_mode = OracleMode::ExactApsp;
    opts.report_samples = 4;
    auto result = estimate_edit_distance(x, x, tiny_profile(), opts);
    auto j = run_report(result);
    auto text = j.dump();
    auto parsed = nlohmann::json::parse(text);
    CHECK(parsed == j);
    CHECK(parsed["widths"].size() == result.widths.size());
    CHECK(parsed["estimate"].get<double>() == result.estimate);
}
