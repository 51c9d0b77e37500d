#include "edap/pipeline.hpp"

#include <atomic>
#include <chrono>
#include <future>
#include <memory>
#include <thread>

#include "edap/exact.hpp"
#include "edap/graph.hpp"
#include "edap/oracle.hpp"

namespace edap {

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void merge_stats(MatchStats& into, const MatchStats& from) {
    into.anchors += from.anchors;
    into.pivots += from.pivots;
    into.cluster_guard_rejects += from.cluster_guard_rejects;
    into.edges_emitted += from.edges_emitted;
    into.degenerate_normalizations += from.degenerate_normalizations;
    into.depth_guard_hits += from.depth_guard_hits;
    into.colorings_recursed += from.colorings_recursed;
}

}  // namespace

PipelineResult estimate_edit_distance(const std::string& x, const std::string& y,
                                      const ParamProfile& profile, const PipelineOptions& opts) {
    profile.validate();
    auto t0 = std::chrono::steady_clock::now();

    auto padded = std::make_shared<PaddedInput>(pad_input(x, y, profile.gamma,
                                                          profile.pad_tail_factor));
    const std::int64_t n = padded->n;
    Rng root(opts.seed);

    PipelineResult result;
    result.padded_n = n;
    result.padded = padded;

    CharMetric dist_g1(*padded);  // the width-1 base metric of Alg. 1
    std::shared_ptr<OracleMetric> prev_oracle;

    TraceOptions trace_opts;
    trace_opts.out = opts.trace;
    trace_opts.reference_pi = opts.reference_pi;

    for (std::int64_t w = profile.gamma;; w *= profile.gamma) {
        auto wt0 = std::chrono::steady_clock::now();
        AdContext ctx;
        ctx.input = padded.get();
        ctx.w = w;
        ctx.gamma = profile.gamma;
        ctx.tau_large = profile.tau_large;
        ctx.base = ctx.exact_regime() ? static_cast<const ScaleMetric*>(&dist_g1)
                                      : static_cast<const ScaleMetric*>(prev_oracle.get());

        const auto costs = scale_costs(w);
        std::vector<std::vector<std::pair<Interval, Interval>>> edges_per_cost(costs.size());
        std::vector<MatchStats> stats_per_cost(costs.size());
        std::uint64_t ad_evals = 0, base_queries = 0;

        auto run_cost = [&](std::size_t ci, AdOracle& ad) {
            std::int64_t c = costs[ci];
            Coloring trivial = Coloring::trivial(n);
            Rng run_rng = root.split2(static_cast<std::uint64_t>(w), static_cast<std::uint64_t>(c));
            edges_per_cost[ci] =
                match_intervals(*padded, profile, ad, static_cast<double>(c), trivial, 1, run_rng,
                                &stats_per_cost[ci], trace_opts);
        };

        const auto threads =
            static_cast<std::size_t>(std::max<std::int64_t>(1, std::min<std::int64_t>(
                                                                   opts.threads,
                                                                   static_cast<std::int64_t>(
                                                                       costs.size()))));
        if (threads <= 1) {
            AdOracle ad(ctx);  // one memo shared across every scale of this width
            for (std::size_t ci = 0; ci < costs.size(); ++ci) run_cost(ci, ad);
            ad_evals = ad.eval_count();
            base_queries = ad.base_query_count();
        } else {
            std::atomic<std::size_t> next{0};
            std::atomic<std::uint64_t> evals{0}, queries{0};
            auto worker = [&]() {
                AdOracle ad(ctx);  // per-thread memo; the base oracle is shared and const
                for (;;) {
                    std::size_t ci = next.fetch_add(1);
                    if (ci >= costs.size()) break;
                    run_cost(ci, ad);
                }
                evals += ad.eval_count();
                queries += ad.base_query_count();
            };
            std::vector<std::future<void>> futs;
            for (std::size_t t = 0; t < threads; ++t)
                futs.push_back(std::async(std::launch::async, worker));
            for (auto& f : futs) f.get();
            ad_evals = evals.load();
            base_queries = queries.load();
        }

        std::map<double, std::vector<std::pair<Interval, Interval>>> scale_graphs;
        for (std::size_t ci = 0; ci < costs.size(); ++ci) {
            scale_graphs[static_cast<double>(costs[ci])] = std::move(edges_per_cost[ci]);
            merge_stats(result.match_stats, stats_per_cost[ci]);
        }

        WidthReport report;
        report.width = w;
        report.ad_evals = ad_evals;
        report.base_queries = base_queries;
        for (const auto& [c, edges] : scale_graphs)
            report.match_edges += static_cast<std::int64_t>(edges.size());

        if (opts.collect_edges) {
            CapturedWidth cap;
            cap.width = w;
            cap.base_oracle = ctx.exact_regime() ? nullptr : prev_oracle;
            cap.scale_edges = scale_graphs;
            result.captured.push_back(std::move(cap));
        }

        auto graph = std::make_shared<MatchGraph>(
            assemble_graph(scale_graphs, w, n, profile.c_m(), padded.get()));
        report.nodes = graph->node_count();

        OracleBuildOptions build_opts;
        build_opts.alpha = profile.oracle_alpha();
        build_opts.reps = profile.landmark_reps;
        build_opts.eager = (w < n);  // the next width hammers this oracle with base queries
        std::shared_ptr<OracleMetric> oracle =
            build_oracle(graph, opts.oracle_mode, build_opts,
                         root.split2(static_cast<std::uint64_t>(w), 0x0eac1eull));

        if (opts.report_samples > 0) {
            Rng sample_rng = root.split2(static_cast<std::uint64_t>(w), 0x5a3e11ull);
            for (std::int64_t s = 0; s < opts.report_samples; ++s) {
                Interval a{Axis::X,
                           1 + static_cast<std::int64_t>(
                                   sample_rng.below(static_cast<std::uint64_t>(n))),
                           w};
                Interval b{Axis::Y,
                           1 + static_cast<std::int64_t>(
                                   sample_rng.below(static_cast<std::uint64_t>(n))),
                           w};
                double exact = interval_ed(*padded, a, b, EdVariant::IndelHalf).value();
                double approx = oracle->distance(a, b);
                report.sampled_ratios.push_back(exact > 0 ? approx / exact : approx);
            }
        }

        report.seconds = seconds_since(wt0);
        result.widths.push_back(std::move(report));

        prev_oracle = std::move(oracle);  // drops the w/gamma oracle unless captured
        if (w == n) break;
    }

    std::int64_t final_i = 1;
    if (opts.final_index_random)
        final_i = 1 + static_cast<std::int64_t>(
                          root.split(0xf17a1ull).below(static_cast<std::uint64_t>(n)));
    result.final_index = final_i;
    result.estimate =
        prev_oracle->distance(Interval{Axis::X, final_i, n}, Interval{Axis::Y, final_i, n});
    result.total_seconds = seconds_since(t0);
    return result;
}

nlohmann::json run_report(const PipelineResult& result) {
    nlohmann::json j;
    j["estimate"] = result.estimate;
    j["final_index"] = result.final_index;
    j["padded_n"] = result.padded_n;
    j["total_seconds"] = result.total_seconds;
    j["stats"] = {{"anchors", result.match_stats.anchors},
                  {"pivots", result.match_stats.pivots},
                  {"cluster_guard_rejects", result.match_stats.cluster_guard_rejects},
                  {"edges_emitted", result.match_stats.edges_emitted},
                  {"degenerate_normalizations", result.match_stats.degenerate_normalizations},
                  {"depth_guard_hits", result.match_stats.depth_guard_hits},
                  {"colorings_recursed", result.match_stats.colorings_recursed}};
    j["widths"] = nlohmann::json::array();
    for (const auto& w : result.widths) {
        nlohmann::json wj;
        wj["width"] = w.width;
        wj["match_edges"] = w.match_edges;
        wj["nodes"] = w.nodes;
        wj["seconds"] = w.seconds;
        wj["ad_evals"] = w.ad_evals;
        wj["base_queries"] = w.base_queries;
        wj["sampled_ratios"] = w.sampled_ratios;
        j["widths"].push_back(wj);
    }
    return j;
}

}  // namespace edap
