#include "doctest.h"

#include <stdexcept>
#include "edap/bench.hpp"
#include "edap/corpus.hpp"
#include "edap/verify.hpp"

#include <sstream>

using namespace edap;

TEST_CASE("corpus generation is deterministic and self-describing") {
    CorpusSpec spec;
    spec.n = 64;
    spec.alphabet_size = 4;
    spec.model = CorpusModel::PlantedEdits;
    spec.rate = 0.1;
    spec.seed = 99;
    spec.pairs = 3;

    auto a = generate_corpus(spec);
    auto b = generate_corpus(spec);
    REQUIRE(a.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(a[i].x == b[i].x);
        CHECK(a[i].y == b[i].y);
        CHECK(a[i].planted == b[i].planted);
        CHECK(a[i].planted == 6);  // rate 0.1 of 64, rounded
    }

    // rate 0 gives identical pairs
    spec.rate = 0.0;
    for (const auto& p : generate_corpus(spec)) {
        CHECK(p.x == p.y);
        CHECK(p.planted == 0);
    }
}

TEST_CASE("corpus file round-trips byte-exactly") {
    CorpusSpec spec;
    spec.n = 32;
    spec.alphabet_size = 250;  // exercise non-printable bytes
    spec.model = CorpusModel::UniformRandomPair;
    spec.seed = 7;
    spec.pairs = 4;
    auto pairs = generate_corpus(spec);

    std::stringstream file;
    write_corpus(file, pairs);
    auto text = file.str();
    auto parsed = read_corpus(file);
    REQUIRE(parsed.size() == pairs.size());
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        CHECK(parsed[i].x == pairs[i].x);
        CHECK(parsed[i].y == pairs[i].y);
        CHECK(parsed[i].planted == pairs[i].planted);
    }
    std::stringstream again;
    write_corpus(again, parsed);
    CHECK(again.str() == text);
}

TEST_CASE("block shuffle keeps the multiset of blocks") {
    CorpusSpec spec;
    spec.n = 64;
    spec.alphabet_size = 4;
    spec.model = CorpusModel::BlockShuffle;
    spec.blocks = 8;
    spec.seed = 3;
    auto p = generate_corpus(spec)[0];
    CHECK(p.x.size() == p.y.size());
    std::string xs = p.x, ys = p.y;
    std::sort(xs.begin(), xs.end());
    std::sort(ys.begin(), ys.end());
    CHECK(xs == ys);
}

TEST_CASE("bench rows carry the documented ratio definition") {
    CorpusSpec spec;
    spec.n = 48;
    spec.alphabet_size = 4;
    spec.model = CorpusModel::PlantedEdits;
    spec.rate = 0.05;
    spec.seed = 5;
    spec.pairs = 3;
    auto pairs = generate_corpus(spec);

    BenchOptions opts;
    opts.profile = ParamProfile::practical();
    opts.profile.colorings_per_step = 1;
    opts.profile.max_steps = 1;
    opts.profile.max_levels = 2;
    opts.profile.pivot_rate_scale = 1.0 / 16.0;
    opts.oracle_mode = OracleMode::ExactApsp;
    opts.seed = 11;
    auto report = run_bench(pairs, opts);
    REQUIRE(report.rows.size() == 3);
    for (const auto& r : report.rows)
        CHECK(r.ratio == doctest::Approx(r.estimate / std::max(r.exact, 1.0)));

    // identical seeds give identical results, and threads do not change
    // them (timing columns are the only nondeterministic fields)
    opts.threads = 3;
    auto report2 = run_bench(pairs, opts);
    REQUIRE(report2.rows.size() == report.rows.size());
    for (std::size_t i = 0; i < report.rows.size(); ++i) {
        CHECK(report2.rows[i].estimate == report.rows[i].estimate);
        CHECK(report2.rows[i].exact == report.rows[i].exact);
        CHECK(report2.rows[i].ratio == report.rows[i].ratio);
    }
    CHECK(report2.median_ratio == report.median_ratio);

    auto j = bench_json(report);
    CHECK(j["rows"].size() == 3);
    CHECK(j["median_ratio"].get<double>() == doctest::Approx(report.median_ratio));
}

TEST_CASE("verify wiring: empty list trivially passes with a warning") {
    std::stringstream out;
    VerifyOptions opts;
    CHECK(run_suites({}, opts, out) == 0);
    CHECK(out.str().find("warning") != std::string::npos);
}

TEST_CASE("verify wiring: unknown suite is an error") {
    VerifyOptions opts;
    CHECK_THROWS_AS(run_suite("no-such-suite", opts), std::invalid_argument);
}

TEST_CASE("a broken injected oracle fails the sandwich suite") {
    // fixture: claims half the true distance, violating domination
    VerifyOptions opts;
    opts.quick = true;
    opts.oracle_override = [](std::shared_ptr<const MatchGraph> graph, std::int64_t alpha,
                              Rng rng) -> std::unique_ptr<OracleMetric> {
        class Broken final : public OracleMetric {
        public:
            Broken(std::shared_ptr<const MatchGraph> g, std::int64_t alpha)
                : graph_(std::move(g)), uni_(graph_->universe()), alpha_(alpha) {
                OracleBuildOptions bo;
                bo.eager = graph_->node_count() <= 3000;
                inner_ = build_oracle(graph_, OracleMode::ExactApsp, bo, Rng(1));
            }
            std::int64_t width() const override { return uni_.width(); }
            OracleMode mode() const override { return OracleMode::ExactApsp; }
            const IntervalUniverse& universe() const override { return uni_; }
            double distance(const Interval& a, const Interval& b) const override {
                return 0.5 * inner_->distance(a, b);
            }
            double distance_by_index(std::int64_t u, std::int64_t v) const override {
                return 0.5 * inner_->distance_by_index(u, v);
            }

        private:
            std::shared_ptr<const MatchGraph> graph_;
            IntervalUniverse uni_;
            std::int64_t alpha_;
            std::unique_ptr<OracleMetric> inner_;
        };
        (void)rng;
        return std::make_unique<Broken>(std::move(graph), alpha);
    };
    auto result = run_suite("oracle-sandwich", opts);
    CHECK(!result.pass);
}

TEST_CASE("quick verify passes for the statistical and structural suites") {
    VerifyOptions opts;
    opts.quick = true;
    for (const char* name : {"fastds-differential", "softmath-facts"}) {
        auto result = run_suite(name, opts);
        if (!result.pass)
            for (const auto& line : result.lines) MESSAGE(line);
        CHECK(result.pass);
    }
}
