#pragma once

#include <vector>

#include "edap/admetric.hpp"
#include "edap/alignment.hpp"
#include "edap/coloring.hpp"

namespace edap {

// Diagnostic ledger: mass of (interval, color) pairs whose coloring
// disagrees with the reference alignment beyond distortion F, or whose
// matched partner lacks a 2-hop path in the scale graph.
struct CorruptionResult {
    std::vector<double> xi;  // per dense interval index
    double total = 0;
};

CorruptionResult corruption(const Coloring& k, const Alignment& pi, double F,
                            const std::vector<std::pair<Interval, Interval>>& edges, double c,
                            AdOracle& ad);

}  // namespace edap
