#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "edap/oracle.hpp"
#include "edap/profile.hpp"

namespace edap {

struct SuiteResult {
    std::string name;
    bool pass = false;
    double seconds = 0;
    std::vector<std::string> lines;  // human-readable findings / measurements
};

using OracleFactory = std::function<std::unique_ptr<OracleMetric>(
    std::shared_ptr<const MatchGraph>, std::int64_t alpha, Rng)>;

struct VerifyOptions {
    std::uint64_t seed = 1;
    bool quick = false;  // reduced trial counts (CI wiring, not the acceptance gate)
    OracleFactory oracle_override;  // test fixture hook for the sandwich suite
};

// Frozen regression gate for the empirical-ratio suite, derived from the
// baseline calibration runs (see README).
double bench_ratio_regression_threshold();

const std::vector<std::string>& verify_suite_names();

SuiteResult run_suite(const std::string& name, const VerifyOptions& opts);

// Runs the listed suites (all when empty, with a warning line), printing one
// pass/fail line per suite. Returns 0 when everything passed, 1 otherwise.
int run_suites(std::vector<std::string> names, const VerifyOptions& opts, std::ostream& out);

}  // namespace edap
