#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "edap/corpus.hpp"
#include "edap/pipeline.hpp"
#include "edap/profile.hpp"
#include "json.hpp"

namespace edap {

struct BenchOptions {
    ParamProfile profile;
    OracleMode oracle_mode = OracleMode::ExactApsp;
    bool final_index_random = true;
    std::uint64_t seed = 1;
    std::int64_t exact_cap = 0;  // 0 => full DP, else banded with this cap
    std::int64_t threads = 1;           // worker pool over corpus pairs
    std::int64_t pipeline_threads = 1;  // parallelism inside each pipeline run
};

struct BenchRow {
    std::int64_t index = 0;
    std::int64_t n = 0;
    double exact = 0;  // IndelHalf ground truth
    bool exact_capped = false;
    double estimate = 0;
    double ratio = 0;  // estimate / max(exact, 1)
    std::int64_t planted = 0;
    double exact_seconds = 0;
    double pipeline_seconds = 0;
};

struct BenchReport {
    std::vector<BenchRow> rows;
    double median_ratio = 0;
    double p95_ratio = 0;
    double runtime_slope = 0;  // log-log slope of pipeline time vs n
};

BenchReport run_bench(const std::vector<CorpusPair>& pairs, const BenchOptions& opts);

// CSV with a versioned header comment; JSON mirrors the CSV contents.
void write_bench_csv(std::ostream& out, const BenchReport& report);
nlohmann::json bench_json(const BenchReport& report);

}  // namespace edap
