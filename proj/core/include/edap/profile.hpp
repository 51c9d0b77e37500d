#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

namespace edap {

enum class OracleMode { ExactApsp, LandmarkEmbed };

enum class PhiDensityMode { PerInterval, AnchorShared };

// All tunable constants of the pipeline in one place. Two presets ship:
//   practical()      - small integer gamma/lambda/beta and tamed floors, the
//                      configuration every runnable test and benchmark uses;
//   paper_faithful() - constants taken literally from the asymptotic
//                      analysis; valid to construct and inspect, far too
//                      large to execute beyond toy sizes.
struct ParamProfile {
    double epsilon = 0.5;

    std::int64_t gamma = 4;   // width ratio between pipeline iterations
    std::int64_t lambda = 4;  // color-count base: step t uses lambda^t colors
    std::int64_t beta = 16;   // level base: level l works at u-mass scale beta^l

    std::int64_t k_oversample = 2;  // pivot oversampling rounds
    double alpha = 0.25;            // cluster guard exponent (n^alpha)
    double eta = 0.5;               // |E_c| = 1/eta
    double j_max_const = 0.5;       // j_max = ceil(j_max_const / alpha)
    double c_m_override = 0;        // 0 => derived from alpha/eta/j_max
    double tau_large = 1.0 / 128;   // scale divisor picking t from c
    std::int64_t colorings_per_step = 3;  // m
    double oracle_approx = 0;             // 0 => 10/epsilon
    std::int64_t max_steps = 2;

    // gamma = n^{zeta * epsilon} in the paper-faithful preset; the paper
    // never fixes zeta.
    double gamma_exponent_const = 0.5;

    // Desk-scale knobs. The asymptotic constants they replace are noted.
    double density_rate_mult = 0.5;   // scales the Theta(log n / d_min) rate
    double density_floor_frac = 0.25; // relative floor inside assign_phi (n^{-2alpha})
    double rd_floor_mult = 1.0;       // replaces n^{3alpha} in the relden floor
    double theta_guard_mult = 16.0;   // replaces beta^6 in the theta mass guard
    std::int64_t density_sample_budget = 96;  // cap on survivors per density call
    std::int64_t zl_stride = 3;       // keep every stride-th dyadic radius in Z_l
    double pivot_rate_scale = 1.0 / 32.0;  // thins pivot sampling; theta renormalized
    double t_u_floor = 0.25;          // Omega_eps(1) floor of the T^u transform
    double q_f_mult = 1.0;            // multiplier on n^{alpha^2} inside Q_l
    double pad_tail_factor = 1.0;     // extra padding factor (paper: O(log n))
    bool density_exact_mode = false;  // deterministic full-scan estimator
    PhiDensityMode phi_density_mode = PhiDensityMode::AnchorShared;
    std::int64_t landmark_reps = 0;   // 0 => ceil(2 log2 N) sets per scale
    std::int64_t max_levels = 0;      // 0 => log_beta n bound only
    double mass_prune_eps = 1e-9;     // drop color entries below this mass

    bool trace_enabled = false;

    // Derived quantities -----------------------------------------------------

    std::int64_t ec_size() const;       // 1/eta, validated integral
    std::int64_t j_max() const;         // ceil(j_max_const / alpha)
    double c_m() const;                 // max emission threshold / c, plus slack
    std::int64_t oracle_alpha() const;  // odd integer >= 3 near 10/epsilon
    std::int64_t t_exponent_q() const;  // ceil(1/epsilon), exponent of T transforms

    // Throws std::invalid_argument when internally inconsistent (eta not a
    // unit fraction, gamma not a power of two, cap rule violated, ...).
    void validate() const;

    static ParamProfile practical();
    static ParamProfile paper_faithful(double epsilon, std::int64_t n);
};

// Flat key=value config file I/O. Unknown keys are an error; missing keys
// keep the preset default.
ParamProfile load_profile(std::istream& in, ParamProfile base = ParamProfile::practical());
ParamProfile load_profile_file(const std::string& path,
                               ParamProfile base = ParamProfile::practical());
void save_profile(std::ostream& out, const ParamProfile& p);

}  // namespace edap
