#include "edap/softmath.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace edap {

double dd(std::span<const double> p, std::span<const double> q, double F) {
    if (p.size() != q.size()) throw std::invalid_argument("dd: dimension mismatch");
    double acc = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i)
        if (p[i] > F * q[i]) acc += std::fabs(p[i]);
    return acc;
}

double dd_scalar(double p, double q, double F) { return p > F * q ? std::fabs(p) : 0.0; }

double soft_threshold(double x, double q, double delta, double gamma) {
    if (q < 1 || delta <= 0 || delta >= 1 || gamma <= 0)
        throw std::invalid_argument("soft_threshold: bad parameters");
    if (x >= gamma) return x;
    if (x < delta * gamma) return 0.0;
    return gamma * std::pow(x / gamma, q);
}

namespace {

double coefficient(std::int64_t i, std::int64_t d, double delta, double s, double F) {
    double sd = s * static_cast<double>(d);
    double id = static_cast<double>(i);
    if (id >= sd) return 1.0;
    if (id < (s - delta) * static_cast<double>(d)) return 0.0;
    return std::pow(F, id - sd);
}

}  // namespace

double soft_quantile(std::span<const double> x, double delta, double s, double F) {
    if (F < 1) throw std::invalid_argument("soft_quantile: F must be >= 1");
    const auto d = static_cast<std::int64_t>(x.size());
    if (d == 0) return 0.0;
    std::vector<double> sorted(x.begin(), x.end());
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    // a_i is nondecreasing in i and min over a size-i suffix of the sorted
    // order maximizes the min among size-i subsets, so scanning suffixes of
    // the sorted order finds the optimum.
    double best = 0.0;
    for (std::int64_t i = 1; i <= d; ++i) {
        double a = coefficient(i, d, delta, s, F);
        double v = a * sorted[static_cast<std::size_t>(i - 1)];
        if (v > best) best = v;
    }
    return best;
}

double soft_quantile_bruteforce(std::span<const double> x, double delta, double s, double F) {
    const auto d = static_cast<std::int64_t>(x.size());
    if (d == 0) return 0.0;
    if (d > 20) throw std::invalid_argument("soft_quantile_bruteforce: dimension too large");
    double best = 0.0;
    for (std::uint64_t mask = 1; mask < (1ull << d); ++mask) {
        double mn = std::numeric_limits<double>::infinity();
        std::int64_t count = 0;
        for (std::int64_t i = 0; i < d; ++i)
            if (mask & (1ull << i)) {
                mn = std::min(mn, x[static_cast<std::size_t>(i)]);
                ++count;
            }
        best = std::max(best, coefficient(count, d, delta, s, F) * mn);
    }
    return best;
}

}  // namespace edap
