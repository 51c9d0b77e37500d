#include <benchmark/benchmark.h>

#include <memory>
#include <string>

#include "edap/admetric.hpp"
#include "edap/exact.hpp"
#include "edap/fastds.hpp"
#include "edap/oracle.hpp"
#include "edap/pipeline.hpp"

namespace {

std::string random_string(edap::Rng& rng, std::int64_t n, int alphabet) {
    std::string s;
    for (std::int64_t i = 0; i < n; ++i)
        s.push_back(static_cast<char>('a' + rng.below(alphabet)));
    return s;
}

void BM_edit_distance(benchmark::State& state) {
    edap::Rng rng(1);
    auto n = state.range(0);
    auto a = random_string(rng, n, 4);
    auto b = random_string(rng, n, 4);
    std::vector<edap::Symbol> xs(a.begin(), a.end()), ys(b.begin(), b.end());
    for (auto _ : state)
        benchmark::DoNotOptimize(edap::edit_distance(xs, ys, edap::EdVariant::IndelHalf));
    state.SetComplexityN(n);
}
BENCHMARK(BM_edit_distance)->Range(64, 2048)->Complexity();

void BM_banded_distance(benchmark::State& state) {
    edap::Rng rng(2);
    auto n = state.range(0);
    auto a = random_string(rng, n, 4);
    auto b = a;
    for (int i = 0; i < 8; ++i) b[rng.below(b.size())] = static_cast<char>('a' + rng.below(4));
    std::vector<edap::Symbol> xs(a.begin(), a.end()), ys(b.begin(), b.end());
    for (auto _ : state)
        benchmark::DoNotOptimize(edap::banded_distance(xs, ys, 16, edap::EdVariant::IndelHalf));
}
BENCHMARK(BM_banded_distance)->Range(256, 8192);

void BM_subsample(benchmark::State& state) {
    edap::Rng rng(3);
    auto n = state.range(0);
    std::vector<std::pair<std::int64_t, double>> entries;
    for (std::int64_t i = 1; i <= n; ++i) entries.emplace_back(i, rng.uniform());
    edap::WeightedSampleTree tree(n, entries);
    edap::Rng draw(4);
    for (auto _ : state) benchmark::DoNotOptimize(tree.subsample(0.02, draw));
}
BENCHMARK(BM_subsample)->Range(1024, 65536);

void BM_heavy_pairs(benchmark::State& state) {
    edap::Rng rng(5);
    auto n = state.range(0);
    std::vector<std::tuple<std::int64_t, std::int64_t, double>> entries;
    for (std::int64_t c = 1; c <= n; ++c)
        if (rng.bernoulli(0.3)) entries.emplace_back(1 + rng.below(8), c, rng.uniform());
    edap::DyadicHeavyIndex index(8, n, entries);
    std::vector<std::pair<std::int64_t, std::int64_t>> ranges;
    for (std::int64_t i = 1; i <= n; ++i)
        ranges.emplace_back(std::max<std::int64_t>(1, i - 8), std::min(n, i + 8));
    for (auto _ : state) benchmark::DoNotOptimize(index.heavy_pairs(ranges, 1.5));
}
BENCHMARK(BM_heavy_pairs)->Range(1024, 16384);

void BM_ad_eval(benchmark::State& state) {
    edap::Rng rng(6);
    auto x = random_string(rng, 256, 4);
    auto y = random_string(rng, 256, 4);
    auto padded = edap::pad_input(x, y, 4);
    edap::ExactEdMetric base(padded, state.range(0) / 4);
    edap::AdContext ctx;
    ctx.input = &padded;
    ctx.w = state.range(0);
    ctx.gamma = 4;
    ctx.tau_large = 1.0 / 128;
    ctx.base = &base;
    edap::AdOracle ad(ctx);
    std::int64_t i = 1;
    for (auto _ : state) {
        edap::Interval a{edap::Axis::X, (i * 37) % 256 + 1, state.range(0)};
        edap::Interval b{edap::Axis::Y, (i * 61) % 256 + 1, state.range(0)};
        benchmark::DoNotOptimize(ad.ad_wc(a, b, 2.0));
        ++i;
    }
}
BENCHMARK(BM_ad_eval)->Arg(16)->Arg(64);

void BM_oracle_query(benchmark::State& state) {
    auto graph = std::make_shared<edap::MatchGraph>(edap::assemble_graph({}, 4, state.range(0), 8.0));
    edap::OracleBuildOptions opts;
    opts.alpha = 5;
    opts.reps = 8;
    auto oracle = edap::build_oracle(graph, edap::OracleMode::LandmarkEmbed, opts, edap::Rng(7));
    std::int64_t nn = graph->node_count();
    std::int64_t i = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(oracle->distance_by_index((i * 31) % nn, (i * 97) % nn));
        ++i;
    }
}
BENCHMARK(BM_oracle_query)->Range(256, 4096);

void BM_pipeline(benchmark::State& state) {
    edap::Rng rng(8);
    auto n = state.range(0);
    auto x = random_string(rng, n, 4);
    auto y = x;
    for (int i = 0; i < n / 64; ++i)
        y[rng.below(y.size())] = static_cast<char>('a' + rng.below(4));
    auto profile = edap::ParamProfile::practical();
    profile.colorings_per_step = 1;
    profile.max_steps = 1;
    profile.max_levels = 2;
    profile.pivot_rate_scale = 1.0 / 16.0;
    edap::PipelineOptions opts;
    opts.oracle_mode = edap::OracleMode::LandmarkEmbed;
    for (auto _ : state)
        benchmark::DoNotOptimize(edap::estimate_edit_distance(x, y, profile, opts));
    state.SetComplexityN(n);
}
BENCHMARK(BM_pipeline)->Arg(64)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond)->Complexity();

}  // namespace

BENCHMARK_MAIN();
