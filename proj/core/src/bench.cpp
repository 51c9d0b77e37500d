#include "edap/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <future>
#include <ostream>

#include "edap/exact.hpp"

namespace edap {

namespace {

std::vector<Symbol> to_symbols(const std::string& s) {
    std::vector<Symbol> out(s.size());
    for (std::size_t i = 0; i < s.size(); ++i)
        out[i] = static_cast<Symbol>(static_cast<unsigned char>(s[i]));
    return out;
}

double quantile(std::vector<double> values, double q) {
    if (values.empty()) return 0.0;
    std::sort(values.begin(), values.end());
    double pos = q * static_cast<double>(values.size() - 1);
    auto lo = static_cast<std::size_t>(pos);
    auto hi = std::min(lo + 1, values.size() - 1);
    double frac = pos - static_cast<double>(lo);
    return values[lo] * (1.0 - frac) + values[hi] * frac;
}

BenchRow bench_one(const CorpusPair& pair, std::int64_t index, const BenchOptions& opts) {
    BenchRow row;
    row.index = index;
    row.n = static_cast<std::int64_t>(std::max(pair.x.size(), pair.y.size()));
    row.planted = pair.planted;

    auto xs = to_symbols(pair.x);
    auto ys = to_symbols(pair.y);
    auto e0 = std::chrono::steady_clock::now();
    if (opts.exact_cap > 0) {
        auto banded = banded_distance(xs, ys, opts.exact_cap, EdVariant::IndelHalf);
        if (banded) {
            row.exact = banded->value();
        } else {
            row.exact = static_cast<double>(opts.exact_cap);
            row.exact_capped = true;
        }
    } else {
        row.exact = edit_distance(xs, ys, EdVariant::IndelHalf).value();
    }
    row.exact_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - e0).count();

    PipelineOptions popts;
    popts.oracle_mode = opts.oracle_mode;
    popts.final_index_random = opts.final_index_random;
    popts.seed = Rng(opts.seed).split(static_cast<std::uint64_t>(index)).next();
    popts.threads = opts.pipeline_threads;
    auto result = estimate_edit_distance(pair.x, pair.y, opts.profile, popts);
    row.estimate = result.estimate;
    row.pipeline_seconds = result.total_seconds;
    row.ratio = row.estimate / std::max(row.exact, 1.0);
    return row;
}

}  // namespace

BenchReport run_bench(const std::vector<CorpusPair>& pairs, const BenchOptions& opts) {
    BenchReport report;
    report.rows.resize(pairs.size());
    const std::int64_t threads = std::max<std::int64_t>(1, opts.threads);

    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= pairs.size()) return;
            report.rows[i] = bench_one(pairs[i], static_cast<std::int64_t>(i), opts);
        }
    };
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::future<void>> futs;
        for (std::int64_t t = 0; t < threads; ++t)
            futs.push_back(std::async(std::launch::async, worker));
        for (auto& f : futs) f.get();
    }

    std::vector<double> ratios;
    ratios.reserve(report.rows.size());
    for (const auto& r : report.rows) ratios.push_back(r.ratio);
    report.median_ratio = quantile(ratios, 0.5);
    report.p95_ratio = quantile(ratios, 0.95);

    // log-log least squares of pipeline seconds against n
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::int64_t cnt = 0;
    for (const auto& r : report.rows) {
        if (r.pipeline_seconds <= 0 || r.n <= 1) continue;
        double lx = std::log(static_cast<double>(r.n));
        double ly = std::log(r.pipeline_seconds);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++cnt;
    }
    double denom = static_cast<double>(cnt) * sxx - sx * sx;
    report.runtime_slope = (cnt >= 2 && std::fabs(denom) > 1e-12)
                               ? (static_cast<double>(cnt) * sxy - sx * sy) / denom
                               : 0.0;
    return report;
}

void write_bench_csv(std::ostream& out, const BenchReport& report) {
    out << "# edap-bench-csv v1\n";
    out << "index,n,planted,exact,exact_capped,estimate,ratio,exact_seconds,pipeline_seconds\n";
    out.precision(12);
    for (const auto& r : report.rows)
        out << r.index << ',' << r.n << ',' << r.planted << ',' << r.exact << ','
            << (r.exact_capped ? 1 : 0) << ',' << r.estimate << ',' << r.ratio << ','
            << r.exact_seconds << ',' << r.pipeline_seconds << '\n';
    out << "# median_ratio=" << report.median_ratio << " p95_ratio=" << report.p95_ratio
        << " runtime_slope=" << report.runtime_slope << '\n';
}

nlohmann::json bench_json(const BenchReport& report) {
    nlohmann::json j;
    j["version"] = "edap-bench-csv v1";
    j["median_ratio"] = report.median_ratio;
    j["p95_ratio"] = report.p95_ratio;
    j["runtime_slope"] = report.runtime_slope;
    j["rows"] = nlohmann::json::array();
    for (const auto& r : report.rows)
        j["rows"].push_back({{"index", r.index},
                             {"n", r.n},
                             {"planted", r.planted},
                             {"exact", r.exact},
                             {"exact_capped", r.exact_capped},
                             {"estimate", r.estimate},
                             {"ratio", r.ratio},
                             {"exact_seconds", r.exact_seconds},
                             {"pipeline_seconds", r.pipeline_seconds}});
    return j;
}

}  // namespace edap
