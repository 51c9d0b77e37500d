#include "edap/profile.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

namespace edap {

std::int64_t ParamProfile::ec_size() const {
    double inv = 1.0 / eta;
    auto r = static_cast<std::int64_t>(std::llround(inv));
    if (r < 1 || std::abs(inv - static_cast<double>(r)) > 1e-9)
        throw std::invalid_argument("profile: 1/eta must be a positive integer");
    return r;
}

std::int64_t ParamProfile::j_max() const {
    return static_cast<std::int64_t>(std::ceil(j_max_const / alpha));
}

double ParamProfile::c_m() const {
    if (c_m_override > 0) return c_m_override;
    // largest cluster threshold is max(E_c) + j_max * c = ((2/alpha) 3^{1/eta} + j_max) c
    double top = 2.0 / alpha * std::pow(3.0, static_cast<double>(ec_size()));
    return top + static_cast<double>(j_max()) + 1.0;
}

std::int64_t ParamProfile::oracle_alpha() const {
    double target = oracle_approx > 0 ? oracle_approx : 10.0 / epsilon;
    auto lower = static_cast<std::int64_t>(std::floor(target));
    if (lower % 2 == 0) lower -= 1;
    std::int64_t upper = lower + 2;
    std::int64_t pick = (target - static_cast<double>(lower) <=
                         static_cast<double>(upper) - target)
                            ? lower
                            : upper;
    return std::max<std::int64_t>(3, pick);
}

std::int64_t ParamProfile::t_exponent_q() const {
    return static_cast<std::int64_t>(std::ceil(1.0 / epsilon));
}

namespace {

bool is_power_of_two(std::int64_t v) { return v > 0 && (v & (v - 1)) == 0; }

}  // namespace

void ParamProfile::validate() const {
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw std::invalid_argument("profile: epsilon must lie in (0,1)");
    if (gamma < 2 || lambda < 2 || beta < 2)
        throw std::invalid_argument("profile: gamma/lambda/beta must be >= 2");
    if (!is_power_of_two(gamma))
        throw std::invalid_argument("profile: gamma must be a power of two so S_w covers widths");
    (void)ec_size();
    if (alpha <= 0 || alpha > 2) throw std::invalid_argument("profile: alpha out of range");
    if (k_oversample < 1) throw std::invalid_argument("profile: k_oversample must be >= 1");
    if (colorings_per_step < 1)
        throw std::invalid_argument("profile: colorings_per_step must be >= 1");
    if (max_steps < 1) throw std::invalid_argument("profile: max_steps must be >= 1");
    if (tau_large <= 0) throw std::invalid_argument("profile: tau_large must be positive");
    if (zl_stride < 1) throw std::invalid_argument("profile: zl_stride must be >= 1");
    if (pivot_rate_scale <= 0 || pivot_rate_scale > 1)
        throw std::invalid_argument("profile: pivot_rate_scale must lie in (0,1]");
    if (density_sample_budget < 8)
        throw std::invalid_argument("profile: density_sample_budget too small");
    // Cap rule: the not-large grid caps values at t*gamma >= c/tau_large, and
    // that cap must clear every edge-emission threshold C_m * c, otherwise
    // capped distances can admit edges whose true cost is unbounded.
    if (1.0 / tau_large <= c_m())
        throw std::invalid_argument(
            "profile: need 1/tau_large > C_m so the ad cap clears emission thresholds");
}

ParamProfile ParamProfile::practical() { return ParamProfile{}; }

ParamProfile ParamProfile::paper_faithful(double epsilon, std::int64_t n) {
    ParamProfile p;
    p.epsilon = epsilon;
    double nd = static_cast<double>(std::max<std::int64_t>(n, 2));
    auto pow_n = [&](double e) {
        return std::max<std::int64_t>(2, static_cast<std::int64_t>(std::llround(std::pow(nd, e))));
    };
    p.gamma = pow_n(p.gamma_exponent_const * epsilon);
    // round gamma up to a power of two so padded widths stay in S_w
    while (!is_power_of_two(p.gamma)) ++p.gamma;
    p.lambda = pow_n(epsilon);
    p.beta = pow_n(epsilon);
    p.alpha = std::pow(epsilon, 5.0 / epsilon);
    p.eta = p.alpha * p.alpha * epsilon * epsilon;
    p.eta = 1.0 / std::ceil(1.0 / p.eta);  // 1/eta must be integral
    p.j_max_const = 2.0;
    p.k_oversample = p.beta * p.beta * p.beta;
    p.colorings_per_step = static_cast<std::int64_t>(std::ceil(std::log2(nd)));
    p.max_steps = static_cast<std::int64_t>(std::ceil(1.0 / epsilon)) + 2;
    p.theta_guard_mult = std::pow(static_cast<double>(p.beta), 6.0);
    p.rd_floor_mult = std::pow(nd, 3.0 * p.alpha);
    p.density_floor_frac = std::pow(nd, -2.0 * p.alpha);
    p.density_sample_budget = std::numeric_limits<std::int64_t>::max() / 4;
    p.zl_stride = 1;
    p.pivot_rate_scale = 1.0;
    p.pad_tail_factor = std::max(1.0, std::ceil(std::log2(nd)));
    p.phi_density_mode = PhiDensityMode::PerInterval;
    double cm = p.c_m();
    if (!std::isfinite(cm)) cm = 1e30;  // the asymptotic constants overflow doubles
    p.tau_large = 1.0 / (4.0 * cm);
    return p;
}

namespace {

struct Field {
    std::function<void(ParamProfile&, const std::string&)> set;
    std::function<std::string(const ParamProfile&)> get;
};

template <typename T>
T parse_num(const std::string& v) {
    std::istringstream ss(v);
    T out;
    ss >> out;
    if (ss.fail()) throw std::invalid_argument("profile: bad numeric value '" + v + "'");
    return out;
}

const std::map<std::string, Field>& fields() {
    static const std::map<std::string, Field> table = [] {
        std::map<std::string, Field> f;
        auto num = [&](const std::string& key, auto member) {
            using M = std::remove_reference_t<decltype(std::declval<ParamProfile>().*member)>;
            f[key] = Field{
                [member](ParamProfile& p, const std::string& v) { p.*member = parse_num<M>(v); },
                [member](const ParamProfile& p) {
                    std::ostringstream ss;
                    ss.precision(17);
                    ss << p.*member;
                    return ss.str();
                }};
        };
        num("epsilon", &ParamProfile::epsilon);
        num("gamma", &ParamProfile::gamma);
        num("lambda", &ParamProfile::lambda);
        num("beta", &ParamProfile::beta);
        num("k_oversample", &ParamProfile::k_oversample);
        num("alpha", &ParamProfile::alpha);
        num("eta", &ParamProfile::eta);
        num("j_max_const", &ParamProfile::j_max_const);
        num("c_m_override", &ParamProfile::c_m_override);
        num("tau_large", &ParamProfile::tau_large);
        num("colorings_per_step", &ParamProfile::colorings_per_step);
        num("oracle_approx", &ParamProfile::oracle_approx);
        num("max_steps", &ParamProfile::max_steps);
        num("gamma_exponent_const", &ParamProfile::gamma_exponent_const);
        num("density_rate_mult", &ParamProfile::density_rate_mult);
        num("density_floor_frac", &ParamProfile::density_floor_frac);
        num("rd_floor_mult", &ParamProfile::rd_floor_mult);
        num("theta_guard_mult", &ParamProfile::theta_guard_mult);
        num("density_sample_budget", &ParamProfile::density_sample_budget);
        num("zl_stride", &ParamProfile::zl_stride);
        num("pivot_rate_scale", &ParamProfile::pivot_rate_scale);
        num("t_u_floor", &ParamProfile::t_u_floor);
        num("q_f_mult", &ParamProfile::q_f_mult);
        num("pad_tail_factor", &ParamProfile::pad_tail_factor);
        num("landmark_reps", &ParamProfile::landmark_reps);
        num("max_levels", &ParamProfile::max_levels);
        num("mass_prune_eps", &ParamProfile::mass_prune_eps);
        f["density_exact_mode"] = Field{
            [](ParamProfile& p, const std::string& v) { p.density_exact_mode = (v == "1" || v == "true"); },
            [](const ParamProfile& p) { return p.density_exact_mode ? "true" : "false"; }};
        f["trace_enabled"] = Field{
            [](ParamProfile& p, const std::string& v) { p.trace_enabled = (v == "1" || v == "true"); },
            [](const ParamProfile& p) { return p.trace_enabled ? "true" : "false"; }};
        f["phi_density_mode"] = Field{
            [](ParamProfile& p, const std::string& v) {
                if (v == "per_interval")
                    p.phi_density_mode = PhiDensityMode::PerInterval;
                else if (v == "anchor_shared")
                    p.phi_density_mode = PhiDensityMode::AnchorShared;
                else
                    throw std::invalid_argument("profile: bad phi_density_mode '" + v + "'");
            },
            [](const ParamProfile& p) {
                return std::string(p.phi_density_mode == PhiDensityMode::PerInterval
                                       ? "per_interval"
                                       : "anchor_shared");
            }};
        return f;
    }();
    return table;
}

}  // namespace

ParamProfile load_profile(std::istream& in, ParamProfile base) {
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("profile: line " + std::to_string(lineno) +
                                        " is not key=value");
        auto trim = [](std::string s) {
            auto b = s.find_first_not_of(" \t\r");
            auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        auto it = fields().find(key);
        if (it == fields().end())
            throw std::invalid_argument("profile: unknown key '" + key + "'");
        it->second.set(base, val);
    }
    return base;
}

ParamProfile load_profile_file(const std::string& path, ParamProfile base) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("profile: cannot open '" + path + "'");
    return load_profile(in, base);
}

void save_profile(std::ostream& out, const ParamProfile& p) {
    for (const auto& [key, field] : fields()) out << key << " = " << field.get(p) << "\n";
}

}  // namespace edap
