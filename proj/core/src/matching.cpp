#include "edap/matching.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <set>
#include <stdexcept>

#include "edap/corruption.hpp"
#include "json.hpp"

namespace edap {

namespace {
constexpr double kTiny = 1e-12;
}

// ---------------------------------------------------------------------------
// PotentialTable / ThetaTable

PotentialTable::PotentialTable(std::int64_t n, std::int64_t real_colors)
    : n_(n), real_colors_(real_colors) {
    vals_.assign(static_cast<std::size_t>(2 * n), {});
    totals_.assign(static_cast<std::size_t>(2 * n), 0.0);
}

void PotentialTable::add(std::int64_t idx, ColorId color, double value) {
    if (value <= 0) return;
    auto& row = vals_[static_cast<std::size_t>(idx)];
    auto it = std::lower_bound(row.begin(), row.end(), color,
                               [](const auto& pr, ColorId c) { return pr.first < c; });
    if (it != row.end() && it->first == color)
        it->second += value;
    else
        row.insert(it, {color, value});
    totals_[static_cast<std::size_t>(idx)] += value;
    grand_total_ += value;
    int axis = idx < n_ ? 0 : 1;
    entries_[axis].emplace_back((idx % n_) + 1, color, value);
}

double PotentialTable::value(std::int64_t idx, ColorId color) const {
    const auto& row = vals_[static_cast<std::size_t>(idx)];
    auto it = std::lower_bound(row.begin(), row.end(), color,
                               [](const auto& pr, ColorId c) { return pr.first < c; });
    return (it != row.end() && it->first == color) ? it->second : 0.0;
}

double PotentialTable::interval_total(std::int64_t idx) const {
    return totals_[static_cast<std::size_t>(idx)];
}

ThetaTable::ThetaTable(std::vector<double> radii, std::int64_t n) : zetas(std::move(radii)) {
    per_zeta.assign(zetas.size(), std::vector<double>(static_cast<std::size_t>(2 * n), 0.0));
}

void ThetaTable::add(std::int64_t idx, std::size_t zeta_index, double value) {
    if (value <= 0) return;
    per_zeta[zeta_index][static_cast<std::size_t>(idx)] += value;
    total += value;
}

// ---------------------------------------------------------------------------
// MatchContext helpers

double MatchContext::n_alpha() const {
    return std::pow(static_cast<double>(n), profile->alpha);
}

double MatchContext::q_exponent() const {
    return static_cast<double>(profile->t_exponent_q());
}

double MatchContext::theta_rd_floor(std::int64_t level, std::int64_t lambda_pow_t) const {
    double beta_l = std::pow(static_cast<double>(profile->beta), static_cast<double>(level));
    double floor_v = profile->rd_floor_mult * static_cast<double>(n) /
                     (beta_l * static_cast<double>(lambda_pow_t));
    return std::max(1.0, floor_v);
}

double MatchContext::soft_quantile_level(std::span<const double> x, std::int64_t level) const {
    double eps = profile->epsilon;
    double F = std::max(1.0, profile->q_f_mult *
                                 std::pow(static_cast<double>(n), profile->alpha * profile->alpha));
    return soft_quantile(x, eps / 4.0, 1.0 - static_cast<double>(level) * eps / 2.0, F);
}

// ---------------------------------------------------------------------------
// Lambda balls

LambdaBall lambda_ball(const Coloring& k, const Interval& center, double zeta) {
    if (center.is_bottom()) throw std::invalid_argument("lambda_ball: bottom center");
    if (zeta < 0) throw std::invalid_argument("lambda_ball: negative zeta");
    std::int64_t pos = center.start;
    LambdaBall ball{center, zeta, pos, pos};
    if (zeta == 0) return ball;  // by definition the singleton

    const auto& tree = k.u_tree(center.axis);
    if (auto b = tree.ball_boundary(pos, zeta, Direction::Left)) {
        // include the boundary interval only when its full mass fits inside zeta
        ball.lo = (b->sum_inclusive <= zeta + kTiny || b->index == pos) ? b->index : b->index + 1;
    } else {
        ball.lo = 1;  // the whole left side holds less than zeta
    }
    if (auto b = tree.ball_boundary(pos, zeta, Direction::Right)) {
        ball.hi = (b->sum_inclusive <= zeta + kTiny || b->index == pos) ? b->index : b->index - 1;
    } else {
        ball.hi = tree.size();
    }
    if (ball.lo > pos) ball.lo = pos;
    if (ball.hi < pos) ball.hi = pos;
    return ball;
}

// ---------------------------------------------------------------------------
// Density estimation

namespace {

double set_color_mass(const Coloring& kp, const IntervalSet& S, ColorId chi) {
    if (S.all) return kp.color_total(chi);
    if (S.lo > S.hi) return 0.0;
    return kp.color_tree(S.axis, chi).range_sum(std::max<std::int64_t>(1, S.lo),
                                                std::min(kp.n(), S.hi));
}

}  // namespace

double approx_density(const MatchContext& ctx, const Interval& I, const IntervalSet& S,
                      double d_min, double threshold_cost, const Coloring& kp, ColorId chi,
                      Rng& rng) {
    if (d_min <= 0) throw std::invalid_argument("approx_density: d_min must be positive");
    const std::int64_t w = ctx.ad->context().w;

    if (ctx.profile->density_exact_mode) {
        double den = 0.0;
        auto consider = [&](std::int64_t idx) {
            double m = kp.mass(idx, chi);
            if (m <= 0) return;
            Interval J = kp.interval_at(idx, w);
            if (ctx.ad->ad_wc(I, J, ctx.c) <= threshold_cost) den += m;
        };
        if (S.all) {
            for (std::int64_t idx : kp.part(chi)) consider(idx);
        } else {
            for (std::int64_t idx : kp.part(chi)) {
                Interval J = kp.interval_at(idx, w);
                if (J.axis == S.axis && J.start >= S.lo && J.start <= S.hi) consider(idx);
            }
        }
        return std::max(den, d_min);
    }

    double mass_total = set_color_mass(kp, S, chi);
    if (mass_total <= 0) return d_min;
    double rate = ctx.profile->density_rate_mult *
                  std::log(static_cast<double>(std::max<std::int64_t>(ctx.n, 3))) / d_min;
    double budget = static_cast<double>(ctx.profile->density_sample_budget);
    if (rate * mass_total > budget) rate = budget / mass_total;
    if (rate <= 0) return d_min;

    double est = 0.0;
    auto run_axis = [&](Axis axis, std::optional<std::pair<std::int64_t, std::int64_t>> range) {
        const auto& tree = kp.color_tree(axis, chi);
        if (tree.total() <= 0) return;
        for (std::int64_t pos : tree.subsample(rate, rng, range)) {
            double m = tree.value_at(pos);
            if (m <= 0) continue;
            Interval J{axis, pos, w};
            if (ctx.ad->ad_wc(I, J, ctx.c) <= threshold_cost)
                est += (rate * m >= 1.0) ? m : 1.0 / rate;
        }
    };
    if (S.all) {
        run_axis(Axis::X, std::nullopt);
        run_axis(Axis::Y, std::nullopt);
    } else {
        run_axis(S.axis, std::make_pair(std::max<std::int64_t>(1, S.lo), std::min(ctx.n, S.hi)));
    }
    return std::max(est, d_min);
}

double approx_relative_density(const MatchContext& ctx, const Interval& I, const IntervalSet& S,
                               double rd_min, double threshold_cost, const Coloring& kp,
                               ColorId chi, Rng& rng, double* d_global_cache) {
    if (rd_min < 1) throw std::invalid_argument("approx_relative_density: rd_min must be >= 1");
    double mu_self = kp.mass(kp.index_of(I), chi);
    double d_floor = std::max(mu_self, kTiny);
    double d_hat = approx_density(ctx, I, S, d_floor, threshold_cost, kp, chi, rng);
    double D_hat;
    if (d_global_cache != nullptr && *d_global_cache >= 0) {
        D_hat = *d_global_cache;
    } else {
        D_hat = approx_density(ctx, I, IntervalSet::whole(), rd_min * d_floor, threshold_cost, kp,
                               chi, rng);
        if (d_global_cache != nullptr) *d_global_cache = D_hat;
    }
    return std::max(D_hat / d_hat, rd_min);
}

// ---------------------------------------------------------------------------
// Clustering

ClusterFamily cluster_anchor(const MatchContext& ctx, const Interval& anchor, const Coloring& kp,
                             ColorId chi_p, Rng& rng) {
    if (chi_p == kColorBot) throw std::invalid_argument("cluster_anchor: bottom color");
    ClusterFamily family;
    const auto& costs = ctx.ec.costs;
    family.c_hat = costs.empty() ? 0.0 : costs[rng.below(costs.size())];

    const std::int64_t w = ctx.ad->context().w;
    const auto& part = kp.part(chi_p);
    family.by_distance.reserve(part.size());
    for (std::int64_t idx : part) {
        Interval J = kp.interval_at(idx, w);
        family.by_distance.emplace_back(ctx.ad->ad_wc(anchor, J, ctx.c), idx);
    }
    std::sort(family.by_distance.begin(), family.by_distance.end());

    auto mass_below = [&](double thr) {
        double acc = 0.0;
        for (const auto& [d, idx] : family.by_distance) {
            if (d > thr) break;
            acc += kp.mass(idx, chi_p);
        }
        return acc;
    };
    double denom = mass_below(family.c_hat / 3.0);
    double numer = mass_below(3.0 * family.c_hat);
    if (denom <= 0 || numer / denom > ctx.n_alpha()) {
        if (ctx.stats) ++ctx.stats->cluster_guard_rejects;
        return family;  // empty
    }

    family.empty = false;
    const std::int64_t jmax = ctx.profile->j_max();
    for (std::int64_t j = 0; j <= jmax; ++j) {
        double thr = family.c_hat + static_cast<double>(j) * ctx.c;
        family.thresholds.push_back(thr);
        auto it = std::upper_bound(
            family.by_distance.begin(), family.by_distance.end(), thr,
            [](double v, const auto& pr) { return v < pr.first; });
        family.prefix_len.push_back(static_cast<std::size_t>(it - family.by_distance.begin()));
    }
    return family;
}

void assign_phi(const MatchContext& ctx, ColorId chi_out, const ClusterFamily& family,
                std::size_t j, const Coloring& kp, ColorId chi_p, std::int64_t lambda_pow_t,
                PotentialTable& phi, Rng& rng) {
    if (family.empty) return;
    auto members = family.members(j);
    if (members.empty()) return;
    double mass_cluster = 0.0;
    for (const auto& [d, idx] : members) mass_cluster += kp.mass(idx, chi_p);
    if (mass_cluster <= 0) return;

    const double d_floor = std::max(ctx.profile->density_floor_frac * mass_cluster, kTiny);
    const double coef = std::pow(static_cast<double>(ctx.n),
                                 -ctx.profile->alpha * static_cast<double>(j)) *
                        static_cast<double>(ctx.n) / static_cast<double>(lambda_pow_t);
    const std::int64_t w = ctx.ad->context().w;

    for (const auto& [d, idx] : members) {
        double mu_i = kp.mass(idx, chi_p);
        if (mu_i <= 0) continue;
        double d_hat;
        if (ctx.profile->phi_density_mode == PhiDensityMode::PerInterval) {
            Interval I = kp.interval_at(idx, w);
            d_hat = approx_density(ctx, I, IntervalSet::whole(), d_floor, family.thresholds[j], kp,
                                   chi_p, rng);
        } else {
            // the cluster guard certifies member densities track the anchor's
            // within n^alpha, and the anchor's density at this cost restricted
            // to the part is exactly the cluster mass
            d_hat = std::max(mass_cluster, d_floor);
        }
        phi.add(idx, chi_out, coef * mu_i / d_hat);
    }
}

// ---------------------------------------------------------------------------
// Theta potential

std::vector<double> assign_theta(const MatchContext& ctx, const Interval& pivot, ColorId chi_p,
                                 std::int64_t multiplicity, const Coloring& k, const Coloring& kp,
                                 std::int64_t level, std::int64_t lambda_pow_t, ThetaTable& theta,
                                 Rng& rng) {
    std::vector<double> scores(theta.zetas.size(), 0.0);
    if (multiplicity <= 0 || chi_p == kColorBot) return scores;
    const double rd_m = ctx.theta_rd_floor(level, lambda_pow_t);
    const double beta_l =
        std::pow(static_cast<double>(ctx.profile->beta), static_cast<double>(level));
    const double guard =
        ctx.profile->theta_guard_mult * static_cast<double>(ctx.profile->lambda) * beta_l;
    const double q = ctx.q_exponent();
    const double delta_T = 1.0 / static_cast<double>(ctx.profile->beta);
    const std::int64_t pivot_idx = k.index_of(pivot);

    std::vector<double> d_global(ctx.ec.costs.size(), -1.0);
    std::vector<double> gamma_vec(ctx.ec.costs.size(), 0.0);

    for (std::size_t zi = 0; zi < theta.zetas.size(); ++zi) {
        double zeta = theta.zetas[zi];
        LambdaBall ball = lambda_ball(k, pivot, zeta);
        IntervalSet S = IntervalSet::ball(ball);
        double local = set_color_mass(kp, S, chi_p);
        double sigma;
        if (local > guard) {
            sigma = 1.0;
        } else {
            for (std::size_t ci = 0; ci < ctx.ec.costs.size(); ++ci) {
                double relden = approx_relative_density(ctx, pivot, S, rd_m, ctx.ec.costs[ci], kp,
                                                        chi_p, rng, &d_global[ci]);
                gamma_vec[ci] = std::min(rd_m / relden, 1.0);
            }
            std::vector<double> transformed(gamma_vec.size());
            for (std::size_t ci = 0; ci < gamma_vec.size(); ++ci)
                transformed[ci] = soft_threshold(gamma_vec[ci], q, delta_T, 1.0);
            sigma = ctx.soft_quantile_level(transformed, level);
        }
        scores[zi] = static_cast<double>(multiplicity) * sigma;
        theta.add(pivot_idx, zi, scores[zi]);
    }
    return scores;
}

// ---------------------------------------------------------------------------
// Coloring amendment

std::vector<double> level_radii(const ParamProfile& profile, std::int64_t n, std::int64_t level) {
    if (level == 0) return {0.0};
    double beta_l = std::pow(static_cast<double>(profile.beta), static_cast<double>(level));
    std::vector<double> out;
    auto emax = static_cast<std::int64_t>(std::ceil(std::log2(static_cast<double>(std::max<std::int64_t>(n, 2)))));
    for (std::int64_t e = 0; e <= emax; e += profile.zl_stride)
        out.push_back(beta_l * std::pow(2.0, static_cast<double>(e)));
    return out;
}

Coloring amend_coloring(const MatchContext& ctx, const Coloring& k, std::int64_t level,
                        const PotentialTable& phi, const ThetaTable& theta,
                        std::int64_t lambda_pow_t) {
    const std::int64_t n = ctx.n;
    const auto beta = static_cast<double>(ctx.profile->beta);
    const double beta_l = std::pow(beta, static_cast<double>(level));
    const double q = ctx.q_exponent();
    const double k_norm = std::max(
        1.0, static_cast<double>(ctx.profile->k_oversample) * ctx.profile->pivot_rate_scale);
    const double tc_floor = std::pow(beta, -3.0);
    const double tu_floor = ctx.profile->t_u_floor;
    const double delta_T = 1.0 / beta;

    // accumulated palette contributions per interval
    std::vector<std::vector<std::pair<ColorId, double>>> palette(
        static_cast<std::size_t>(2 * n));

    if (level == 0) {
        // already-matched marking: potentials project onto bot and u
        for (std::int64_t idx = 0; idx < 2 * n; ++idx) {
            double mu_u = k.mass(idx, kColorU);
            if (mu_u <= 0) continue;
            double phi_sum = phi.interval_total(idx);
            double v_bot = soft_threshold(mu_u * phi_sum, q, delta_T, tc_floor);
            double theta0 = theta.per_zeta.empty() ? 0.0
                                                   : theta.per_zeta[0][static_cast<std::size_t>(idx)];
            double v_u = soft_threshold(mu_u * theta0 / k_norm, q, delta_T, tu_floor);
            if (v_bot > 0) palette[static_cast<std::size_t>(idx)].emplace_back(kColorBot, v_bot);
            if (v_u > 0) palette[static_cast<std::size_t>(idx)].emplace_back(kColorU, v_u);
        }
    } else {
        // Lambda balls per axis and radius, then palette scores via
        // heavy-range detection over the phi matrix
        for (int axis_i = 0; axis_i < 2; ++axis_i) {
            Axis axis = axis_i == 0 ? Axis::X : Axis::Y;
            const auto& entries = phi.axis_entries(axis);
            std::unique_ptr<DyadicHeavyIndex> heavy;
            if (!entries.empty()) {
                std::vector<std::tuple<std::int64_t, std::int64_t, double>> triples;
                triples.reserve(entries.size());
                for (const auto& [pos, color, val] : entries)
                    triples.emplace_back(static_cast<std::int64_t>(color - kFirstRealColor) + 1,
                                         pos, val);
                heavy = std::make_unique<DyadicHeavyIndex>(lambda_pow_t, n, triples);
            }

            for (std::size_t zi = 0; zi < theta.zetas.size(); ++zi) {
                const double zeta = theta.zetas[zi];
                const double coef = beta_l / (zeta * zeta);  // beta^{2l} / (zeta^2 beta^l)
                const double coef_u = beta_l * beta_l / (zeta * zeta);

                // balls for every start position on this axis (monotone by
                // construction; clamped defensively)
                std::vector<std::pair<std::int64_t, std::int64_t>> balls(
                    static_cast<std::size_t>(n));
                for (std::int64_t pos = 1; pos <= n; ++pos) {
                    LambdaBall b = lambda_ball(k, Interval{axis, pos, ctx.ad->context().w}, zeta);
                    balls[static_cast<std::size_t>(pos - 1)] = {b.lo, b.hi};
                    if (pos > 1) {
                        auto& prev = balls[static_cast<std::size_t>(pos - 2)];
                        auto& cur = balls[static_cast<std::size_t>(pos - 1)];
                        cur.first = std::max(cur.first, prev.first);
                        cur.second = std::max(cur.second, prev.second);
                    }
                }

                // real-color palettes
                if (heavy && phi.total() > 0 &&
                    coef * phi.total() >= tc_floor / beta) {
                    double hp_thresh = (tc_floor / beta) * zeta * zeta / (beta_l * beta_l);
                    for (const auto& [qi, row] : heavy->heavy_pairs(balls, hp_thresh)) {
                        std::int64_t idx = (axis == Axis::Y ? n : 0) + qi;
                        double mu_u = k.mass(idx, kColorU);
                        if (mu_u <= 0) continue;
                        auto [lo, hi] = balls[static_cast<std::size_t>(qi)];
                        double phi_ball = heavy->range_sum(row, lo, hi);
                        double arg = mu_u * coef * phi_ball;
                        double v = soft_threshold(arg, q, delta_T, tc_floor);
                        if (v > 0)
                            palette[static_cast<std::size_t>(idx)].emplace_back(
                                static_cast<ColorId>(kFirstRealColor + row - 1), v);
                    }
                }

                // u palette from theta mass in the ball
                if (theta.total > 0 && coef_u >= delta_T * tu_floor) {
                    std::vector<std::pair<std::int64_t, double>> theta_entries;
                    const auto& tz = theta.per_zeta[zi];
                    for (std::int64_t pos = 1; pos <= n; ++pos) {
                        double v = tz[static_cast<std::size_t>((axis == Axis::Y ? n : 0) + pos - 1)];
                        if (v > 0) theta_entries.emplace_back(pos, v);
                    }
                    if (!theta_entries.empty()) {
                        PrefixSumTree ttree(n, theta_entries);
                        for (std::int64_t pos = 1; pos <= n; ++pos) {
                            std::int64_t idx = (axis == Axis::Y ? n : 0) + pos - 1;
                            double mu_u = k.mass(idx, kColorU);
                            if (mu_u <= 0) continue;
                            auto [lo, hi] = balls[static_cast<std::size_t>(pos - 1)];
                            double tmass = ttree.range_sum(lo, hi);
                            if (tmass <= 0) continue;
                            double arg = coef_u * mu_u * std::min(tmass / k_norm, 1.0);
                            double v = soft_threshold(arg, q, delta_T, tu_floor);
                            if (v > 0)
                                palette[static_cast<std::size_t>(idx)].emplace_back(kColorU, v);
                        }
                    }
                }
            }
        }
    }

    // normalization: mu_hat = mu(*!= u) + mu(u) * normalize(mu(*!= u) + palette)
    Coloring out(n, k.step(), k.real_colors());
    for (std::int64_t idx = 0; idx < 2 * n; ++idx) {
        const auto& row = k.entries(idx);
        double mu_u = 0.0;
        std::vector<std::pair<ColorId, double>> base;  // mu(*, != u)
        for (const auto& [c, v] : row) {
            if (c == kColorU)
                mu_u = v;
            else
                base.emplace_back(c, v);
        }
        if (mu_u <= 0) {
            out.replace_distribution(idx, std::vector<std::pair<ColorId, double>>(row));
            continue;
        }
        std::vector<std::pair<ColorId, double>> v_vec = base;
        for (const auto& [c, v] : palette[static_cast<std::size_t>(idx)])
            v_vec.emplace_back(c, v);
        std::sort(v_vec.begin(), v_vec.end());
        // merge duplicate colors
        std::vector<std::pair<ColorId, double>> merged;
        for (const auto& [c, v] : v_vec) {
            if (!merged.empty() && merged.back().first == c)
                merged.back().second += v;
            else
                merged.emplace_back(c, v);
        }
        double denom = 0.0;
        for (const auto& [c, v] : merged) denom += v;
        if (denom <= 0) {
            // degenerate: keep the u-mass unchanged
            if (ctx.stats) ++ctx.stats->degenerate_normalizations;
            out.replace_distribution(idx, std::vector<std::pair<ColorId, double>>(row));
            continue;
        }
        std::vector<std::pair<ColorId, double>> result = base;
        for (const auto& [c, v] : merged) {
            double add = mu_u * v / denom;
            auto it = std::find_if(result.begin(), result.end(),
                                   [c2 = c](const auto& pr) { return pr.first == c2; });
            if (it != result.end())
                it->second += add;
            else
                result.emplace_back(c, add);
        }
        out.replace_distribution(idx, std::move(result));
    }
    return out;
}

Coloring init_coloring(const Coloring& kp, std::int64_t t, std::int64_t lambda) {
    std::int64_t real = 1;
    for (std::int64_t i = 0; i < t; ++i) real *= lambda;
    Coloring k(kp.n(), t, real);
    for (std::int64_t idx = 0; idx < 2 * kp.n(); ++idx) {
        double bot = kp.mass(idx, kColorBot);
        double rest = kp.interval_total(idx) - bot;
        std::vector<std::pair<ColorId, double>> row;
        if (bot > 0) row.emplace_back(kColorBot, bot);
        if (rest > 0) row.emplace_back(kColorU, rest);
        std::sort(row.begin(), row.end());
        k.replace_distribution(idx, std::move(row));
    }
    return k;
}

Coloring adjust_u(const MatchContext& ctx, Coloring k) {
    double ux = k.axis_color_mass(Axis::X, kColorU);
    double uy = k.axis_color_mass(Axis::Y, kColorU);
    const auto beta = static_cast<double>(ctx.profile->beta);
    bool unbalanced = false;
    if (ux > 0 || uy > 0) {
        if (ux <= 0 || uy <= 0)
            unbalanced = true;
        else {
            double ratio = ux / uy;
            unbalanced = ratio < 1.0 / beta || ratio > beta;
        }
    }
    const double q = ctx.q_exponent();
    Coloring out(k.n(), k.step(), k.real_colors());
    for (std::int64_t idx = 0; idx < 2 * k.n(); ++idx) {
        std::vector<std::pair<ColorId, double>> row(k.entries(idx));
        if (unbalanced) {
            // fold u into bot wholesale
            double mu_u = 0.0;
            std::erase_if(row, [&](const auto& pr) {
                if (pr.first == kColorU) {
                    mu_u = pr.second;
                    return true;
                }
                return false;
            });
            if (mu_u > 0) {
                auto it = std::find_if(row.begin(), row.end(),
                                       [](const auto& pr) { return pr.first == kColorBot; });
                if (it != row.end())
                    it->second += mu_u;
                else
                    row.emplace_back(kColorBot, mu_u);
            }
        }
        // renormalize with T^u applied to the u coordinate
        double denom = 0.0;
        for (auto& [c, v] : row) {
            if (c == kColorU) v = soft_threshold(v, q, 1.0 / beta, ctx.profile->t_u_floor);
            denom += v;
        }
        if (denom <= 0) {
            if (ctx.stats) ++ctx.stats->degenerate_normalizations;
            out.replace_distribution(idx, std::vector<std::pair<ColorId, double>>(k.entries(idx)));
            continue;
        }
        for (auto& [c, v] : row) v /= denom;
        std::sort(row.begin(), row.end());
        out.replace_distribution(idx, std::move(row));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Main driver

namespace {

struct MatchRun {
    MatchContext ctx;
    const Coloring* root_kp;
    std::set<std::pair<std::int64_t, std::int64_t>> edge_seen;
    std::vector<std::pair<Interval, Interval>> edges;
    TraceOptions trace;

    void emit_edge(std::int64_t u, std::int64_t v) {
        if (u == v) return;
        auto key = std::minmax(u, v);
        if (!edge_seen.insert(key).second) return;
        const std::int64_t w = ctx.ad->context().w;
        edges.emplace_back(ctx_interval(key.first, w), ctx_interval(key.second, w));
        if (ctx.stats) ++ctx.stats->edges_emitted;
    }

    Interval ctx_interval(std::int64_t idx, std::int64_t w) const {
        return Interval{idx < ctx.n ? Axis::X : Axis::Y, (idx % ctx.n) + 1, w};
    }

    void trace_line(std::int64_t t, std::int64_t ci, std::int64_t level, const Coloring& k,
                    const PotentialTable* phi, const ThetaTable* theta) {
        if (trace.out == nullptr) return;
        nlohmann::json j;
        j["step"] = t;
        j["coloring"] = ci;
        j["level"] = level;
        j["u_mass_x"] = k.axis_color_mass(Axis::X, kColorU);
        j["u_mass_y"] = k.axis_color_mass(Axis::Y, kColorU);
        j["bot_mass"] = k.color_total(kColorBot);
        std::vector<std::int64_t> part_sizes;
        for (ColorId c = kFirstRealColor; c < k.color_count(); ++c)
            part_sizes.push_back(static_cast<std::int64_t>(k.part(c).size()));
        j["part_sizes"] = part_sizes;
        if (phi) j["phi_total"] = phi->total();
        if (theta) j["theta_total"] = theta->total;
        j["edges"] = edges.size();
        if (trace.reference_pi != nullptr) {
            auto corr = corruption(k, *trace.reference_pi, trace.corruption_F, edges, ctx.c,
                                   *ctx.ad);
            j["corruption"] = corr.total;
        }
        (*trace.out) << j.dump() << '\n';
    }

    void run(const Coloring& kp, std::int64_t t, Rng rng) {
        if (t > ctx.profile->max_steps) {
            if (ctx.stats) ++ctx.stats->depth_guard_hits;
            return;
        }
        std::int64_t lambda_pow_t = 1;
        for (std::int64_t i = 0; i < t; ++i) lambda_pow_t *= ctx.profile->lambda;

        const std::int64_t m = ctx.profile->colorings_per_step;
        const auto beta = static_cast<double>(ctx.profile->beta);
        std::int64_t level_cap = static_cast<std::int64_t>(
            std::ceil(std::log(static_cast<double>(2 * ctx.n)) / std::log(beta))) + 1;
        if (ctx.profile->max_levels > 0)
            level_cap = std::min(level_cap, ctx.profile->max_levels);

        // On the final step the recursion below is cut off, so the coloring
        // refinement of levels >= 1 (and the pivot/amend machinery feeding
        // it) can never influence the emitted edges; only the level-0
        // clustering pass matters.
        const bool last_step = (t == ctx.profile->max_steps);
        if (last_step) level_cap = 0;

        for (std::int64_t ci = 0; ci < m; ++ci) {
            Rng rng_k = rng.split2(static_cast<std::uint64_t>(t), static_cast<std::uint64_t>(ci));
            Coloring kappa = init_coloring(kp, t, ctx.profile->lambda);

            for (std::int64_t level = 0; level <= level_cap; ++level) {
                if (level > 0) {
                    double beta_l = std::pow(beta, static_cast<double>(level));
                    double ux = kappa.axis_color_mass(Axis::X, kColorU);
                    double uy = kappa.axis_color_mass(Axis::Y, kColorU);
                    if (std::min(ux, uy) < beta_l) break;
                }
                PotentialTable phi(ctx.n, lambda_pow_t);
                ThetaTable theta(level_radii(*ctx.profile, ctx.n, level), ctx.n);

                // anchors: one per output color
                for (std::int64_t chi_i = 0; chi_i < lambda_pow_t; ++chi_i) {
                    Rng rng_a = rng_k.split3(static_cast<std::uint64_t>(level), 1,
                                             static_cast<std::uint64_t>(chi_i));
                    auto idx = static_cast<std::int64_t>(rng_a.below(
                        static_cast<std::uint64_t>(2 * ctx.n)));
                    ColorId chi_p = sample_color(kp, idx, rng_a);
                    if (chi_p == kColorBot || chi_p < 0) continue;
                    Interval anchor = ctx_interval(idx, ctx.ad->context().w);
                    ClusterFamily family = cluster_anchor(ctx, anchor, kp, chi_p, rng_a);
                    if (family.empty) continue;
                    if (ctx.stats) ++ctx.stats->anchors;
                    if (!last_step)
                        for (std::size_t j = 0; j < family.prefix_len.size(); ++j)
                            assign_phi(ctx, static_cast<ColorId>(kFirstRealColor + chi_i), family,
                                       j, kp, chi_p, lambda_pow_t, phi, rng_a);
                    if (level == 0) {
                        // graph edges only at the base level
                        for (const auto& [d, midx] : family.members(family.prefix_len.size() - 1))
                            emit_edge(idx, midx);
                    }
                }
                if (last_step) break;  // potentials would feed a step that never runs

                // pivots: independent subsampling of (interval, color) pairs
                double beta_l = std::pow(beta, static_cast<double>(level));
                Rng rng_p = rng_k.split2(static_cast<std::uint64_t>(level), 2);
                for (std::int64_t idx = 0; idx < 2 * ctx.n; ++idx) {
                    for (const auto& [chi_p, mass] : kp.entries(idx)) {
                        if (chi_p == kColorBot || mass <= 0) continue;
                        double p = std::min(1.0, mass * ctx.profile->pivot_rate_scale / beta_l);
                        Rng rng_pair = rng_p.split2(static_cast<std::uint64_t>(idx),
                                                    static_cast<std::uint64_t>(chi_p));
                        std::int64_t mult =
                            binomial_sample(rng_pair, ctx.profile->k_oversample, p);
                        if (mult <= 0) continue;
                        if (ctx.stats) ++ctx.stats->pivots;
                        assign_theta(ctx, ctx_interval(idx, ctx.ad->context().w), chi_p, mult,
                                     kappa, kp, level, lambda_pow_t, theta, rng_pair);
                    }
                }

                kappa = amend_coloring(ctx, kappa, level, phi, theta, lambda_pow_t);
                kappa.prune(ctx.profile->mass_prune_eps);
                trace_line(t, ci, level, kappa, &phi, &theta);
            }

            kappa = adjust_u(ctx, kappa);
            kappa.prune(ctx.profile->mass_prune_eps);
            if (kappa.non_bot_total() > 0) {
                if (ctx.stats) ++ctx.stats->colorings_recursed;
                run(kappa, t + 1, rng_k.split(0xabcdef));
            }
        }
    }

    static ColorId sample_color(const Coloring& kp, std::int64_t idx, Rng& rng) {
        const auto& row = kp.entries(idx);
        if (row.empty()) return -1;
        double total = 0.0;
        for (const auto& [c, v] : row) total += v;
        if (total <= 0) return -1;
        double r = rng.uniform() * total;
        for (const auto& [c, v] : row) {
            if (r < v) return c;
            r -= v;
        }
        return row.back().first;
    }
};

}  // namespace

std::vector<std::pair<Interval, Interval>> match_intervals(
    const PaddedInput& input, const ParamProfile& profile, AdOracle& ad, double c,
    const Coloring& kp, std::int64_t t, Rng rng, MatchStats* stats, const TraceOptions& trace) {
    MatchRun run;
    run.ctx.input = &input;
    run.ctx.profile = &profile;
    run.ctx.ad = &ad;
    run.ctx.c = c;
    run.ctx.ec = cost_set(c, profile.alpha, profile.eta);
    run.ctx.n = input.n;
    run.ctx.stats = stats;
    run.root_kp = &kp;
    run.trace = trace;
    run.run(kp, t, rng);
    return std::move(run.edges);
}

}  // namespace edap
