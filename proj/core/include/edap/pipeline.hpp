#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "edap/alignment.hpp"
#include "edap/matching.hpp"
#include "edap/profile.hpp"
#include "json.hpp"

namespace edap {

struct PipelineOptions {
    OracleMode oracle_mode = OracleMode::ExactApsp;
    bool final_index_random = false;  // tests pin i = 1 so domination is deterministic
    std::uint64_t seed = 1;
    std::ostream* trace = nullptr;
    const Alignment* reference_pi = nullptr;  // enables corruption in the trace
    std::int64_t report_samples = 0;          // per-width distG/ed ratio samples
    std::int64_t threads = 1;                 // parallelism across the per-width cost scales
    bool collect_edges = false;               // keep per-scale edges + base oracles
};

// Captured per-width artifacts for edge re-verification.
struct CapturedWidth {
    std::int64_t width = 0;
    std::shared_ptr<const OracleMetric> base_oracle;  // null in the exact regime
    std::map<double, std::vector<std::pair<Interval, Interval>>> scale_edges;
};

struct WidthReport {
    std::int64_t width = 0;
    std::int64_t match_edges = 0;
    std::int64_t nodes = 0;
    double seconds = 0;
    std::uint64_t ad_evals = 0;
    std::uint64_t base_queries = 0;
    std::vector<double> sampled_ratios;
};

struct PipelineResult {
    double estimate = 0;
    std::int64_t final_index = 1;
    std::int64_t padded_n = 0;
    double total_seconds = 0;
    MatchStats match_stats;
    std::vector<WidthReport> widths;
    std::shared_ptr<const PaddedInput> padded;
    std::vector<CapturedWidth> captured;  // populated when collect_edges is set
};

// Algorithm 1: build distG_w bottom-up over widths gamma, gamma^2, ..., n;
// the estimate is distG_n(X_{i,n}, Y_{i,n}) at the chosen final index.
PipelineResult estimate_edit_distance(const std::string& x, const std::string& y,
                                      const ParamProfile& profile, const PipelineOptions& opts);

nlohmann::json run_report(const PipelineResult& result);

}  // namespace edap
