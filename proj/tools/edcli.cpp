// Command-line harness: corpus generation, benchmark runs, and the
// verification suites. Exit codes: 0 ok, 1 verification failure, 2 usage
// error.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "edap/bench.hpp"
#include "edap/corpus.hpp"
#include "edap/pipeline.hpp"
#include "edap/profile.hpp"
#include "edap/verify.hpp"

namespace {

struct CommonFlags {
    std::string profile_path;
    std::uint64_t seed = 1;
    std::string oracle_mode = "exact";
    double epsilon = 0;
    std::int64_t gamma = 0;
    std::string final_index = "random";
    std::string out_path;
};

edap::ParamProfile resolve_profile(const CommonFlags& flags) {
    edap::ParamProfile profile = edap::ParamProfile::practical();
    if (!flags.profile_path.empty())
        profile = edap::load_profile_file(flags.profile_path, profile);
    if (flags.epsilon > 0) profile.epsilon = flags.epsilon;
    if (flags.gamma > 0) profile.gamma = flags.gamma;
    profile.validate();
    return profile;
}

edap::OracleMode resolve_mode(const std::string& name) {
    if (name == "exact") return edap::OracleMode::ExactApsp;
    if (name == "landmark") return edap::OracleMode::LandmarkEmbed;
    throw CLI::ValidationError("--oracle-mode must be exact or landmark");
}

std::ostream& open_out(const std::string& path, std::ofstream& file) {
    if (path.empty() || path == "-") return std::cout;
    file.open(path);
    if (!file) throw CLI::ValidationError("cannot open output file " + path);
    return file;
}

void add_common(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--profile", flags.profile_path, "parameter profile file (key=value)");
    cmd->add_option("--seed", flags.seed, "random seed");
    cmd->add_option("--oracle-mode", flags.oracle_mode, "exact | landmark")
        ->check(CLI::IsMember({"exact", "landmark"}));
    cmd->add_option("--epsilon", flags.epsilon, "override profile epsilon");
    cmd->add_option("--gamma", flags.gamma, "override profile gamma");
    cmd->add_option("--final-index", flags.final_index, "random | first")
        ->check(CLI::IsMember({"random", "first"}));
    cmd->add_option("--out", flags.out_path, "output path (default stdout)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"near-linear edit distance approximation pipeline"};
    app.require_subcommand(1);

    CommonFlags flags;

    // generate ---------------------------------------------------------------
    auto* gen = app.add_subcommand("generate", "emit a benchmark corpus file");
    edap::CorpusSpec spec;
    std::string model_name = "planted-edits";
    gen->add_option("--n", spec.n, "string length");
    gen->add_option("--alphabet", spec.alphabet_size, "alphabet size");
    gen->add_option("--model", model_name, "uniform-random-pair | planted-edits | block-shuffle");
    gen->add_option("--rate", spec.rate, "planted edit rate");
    gen->add_option("--blocks", spec.blocks, "block count for block-shuffle");
    gen->add_option("--pairs", spec.pairs, "number of pairs");
    add_common(gen, flags);

    // bench ------------------------------------------------------------------
    auto* bench = app.add_subcommand("bench", "run the pipeline over a corpus");
    std::string corpus_path;
    std::string format = "csv";
    std::int64_t exact_cap = 0;
    std::int64_t threads = 1;
    std::int64_t pipeline_threads = 1;
    bench->add_option("corpus", corpus_path, "corpus file from `generate`")->required();
    bench->add_option("--format", format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
    bench->add_option("--exact-cap", exact_cap, "banded exact cap (0 = full DP)");
    bench->add_option("--threads", threads, "worker pool size over pairs");
    bench->add_option("--pipeline-threads", pipeline_threads, "threads inside one pipeline run");
    add_common(bench, flags);

    // estimate ----------------------------------------------------------------
    auto* est = app.add_subcommand("estimate", "estimate the distance of one pair");
    std::string x_str, y_str;
    bool emit_report = false;
    est->add_option("x", x_str, "first string")->required();
    est->add_option("y", y_str, "second string")->required();
    est->add_flag("--report", emit_report, "emit the full JSON run report");
    add_common(est, flags);

    // verify -----------------------------------------------------------------
    auto* verify = app.add_subcommand("verify", "run acceptance suites");
    std::vector<std::string> suites;
    bool quick = false;
    verify->add_option("--suites", suites,
                       "suite names (or 'all'); empty trivially passes with a warning");
    verify->add_flag("--quick", quick, "reduced trial counts");
    verify->add_flag("--list", "list suite names and exit");
    add_common(verify, flags);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        std::ofstream file;
        if (gen->parsed()) {
            spec.model = edap::parse_corpus_model(model_name);
            spec.seed = flags.seed;
            auto pairs = edap::generate_corpus(spec);
            edap::write_corpus(open_out(flags.out_path, file), pairs);
            return 0;
        }
        if (bench->parsed()) {
            std::ifstream in(corpus_path);
            if (!in) {
                std::cerr << "cannot open corpus " << corpus_path << "\n";
                return 2;
            }
            auto pairs = edap::read_corpus(in);
            edap::BenchOptions opts;
            opts.profile = resolve_profile(flags);
            opts.oracle_mode = resolve_mode(flags.oracle_mode);
            opts.final_index_random = flags.final_index == "random";
            opts.seed = flags.seed;
            opts.exact_cap = exact_cap;
            opts.threads = threads;
            opts.pipeline_threads = pipeline_threads;
            auto report = edap::run_bench(pairs, opts);
            auto& out = open_out(flags.out_path, file);
            if (format == "json")
                out << edap::bench_json(report).dump(2) << '\n';
            else
                edap::write_bench_csv(out, report);
            return 0;
        }
        if (est->parsed()) {
            edap::PipelineOptions opts;
            opts.oracle_mode = resolve_mode(flags.oracle_mode);
            opts.final_index_random = flags.final_index == "random";
            opts.seed = flags.seed;
            auto result =
                edap::estimate_edit_distance(x_str, y_str, resolve_profile(flags), opts);
            auto& out = open_out(flags.out_path, file);
            if (emit_report)
                out << edap::run_report(result).dump(2) << '\n';
            else
                out << result.estimate << '\n';
            return 0;
        }
        if (verify->parsed()) {
            if (verify->count("--list") > 0) {
                for (const auto& name : edap::verify_suite_names()) std::cout << name << '\n';
                return 0;
            }
            edap::VerifyOptions opts;
            opts.seed = flags.seed;
            opts.quick = quick;
            auto& out = open_out(flags.out_path, file);
            return edap::run_suites(suites, opts, out);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
