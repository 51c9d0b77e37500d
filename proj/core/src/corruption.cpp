#include "edap/corruption.hpp"

#include <algorithm>
#include <unordered_set>

namespace edap {

namespace {

// hop distance <= 2: identical nodes, a direct edge, or a shared neighbor
bool within_two_hops(const std::vector<std::vector<std::int64_t>>& adj, std::int64_t u,
                     std::int64_t v) {
    if (u == v) return true;
    const auto& nu = adj[static_cast<std::size_t>(u)];
    const auto& nv = adj[static_cast<std::size_t>(v)];
    if (std::binary_search(nu.begin(), nu.end(), v)) return true;
    // sorted intersection test
    auto a = nu.begin();
    auto b = nv.begin();
    while (a != nu.end() && b != nv.end()) {
        if (*a == *b) return true;
        if (*a < *b)
            ++a;
        else
            ++b;
    }
    return false;
}

}  // namespace

CorruptionResult corruption(const Coloring& k, const Alignment& pi, double F,
                            const std::vector<std::pair<Interval, Interval>>& edges, double c,
                            AdOracle& ad) {
    const std::int64_t n = k.n();
    const std::int64_t w = ad.context().w;

    std::vector<std::vector<std::int64_t>> adj(static_cast<std::size_t>(2 * n));
    for (const auto& [a, b] : edges) {
        std::int64_t u = k.index_of(a), v = k.index_of(b);
        adj[static_cast<std::size_t>(u)].push_back(v);
        adj[static_cast<std::size_t>(v)].push_back(u);
    }
    for (auto& row : adj) std::sort(row.begin(), row.end());

    CorruptionResult out;
    out.xi.assign(static_cast<std::size_t>(2 * n), 0.0);

    for (std::int64_t idx = 0; idx < 2 * n; ++idx) {
        Interval I = k.interval_at(idx, w);
        Interval image = extend_alignment(pi, I);
        double xi = 0.0;
        if (image.is_bottom()) {
            xi = k.interval_total(idx);  // every pair corrupted
        } else if (ad.ad_wc(I, image, c) > c) {
            xi = k.interval_total(idx);
        } else {
            std::int64_t image_idx = k.index_of(image);
            for (const auto& [chi, mass] : k.entries(idx)) {
                if (mass <= 0) continue;
                if (chi == kColorBot) {
                    if (!within_two_hops(adj, idx, image_idx)) xi += mass;
                } else {
                    if (mass > F * k.mass(image_idx, chi)) xi += mass;
                }
            }
        }
        out.xi[static_cast<std::size_t>(idx)] = xi;
        out.total += xi;
    }
    return out;
}

}  // namespace edap
