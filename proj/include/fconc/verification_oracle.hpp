#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fconc/config.hpp"
#include "fconc/f_distribution.hpp"

namespace fconc {

// ---------------------------------------------------------------------------
// Quadrature ground truth
// ---------------------------------------------------------------------------

/// I_x(a, b) by tanh-sinh quadrature of the defining integral. The interval
/// is split around the bulk of the beta density and the integral over [0, x]
/// is divided by the integral over [0, 1]; nothing from the special-function
/// module is used. Requires a >= 1/2, b > 0.
///
/// Throws ConvergenceError when cfg.quad_max_level halvings do not bring two
/// successive estimates within cfg.quad_tolerance.
double quad_inc_beta(double x, double a, double b, const EvalConfig& cfg = {});

/// P(a, x) by tanh-sinh quadrature, normalized with std::lgamma.
double quad_lower_gamma(double a, double x, const EvalConfig& cfg = {});

// ---------------------------------------------------------------------------
// Checks
// ---------------------------------------------------------------------------

struct BetaSample {
    double x;
    double a;
    double b;
};

/// Deterministic sample: a and b log-uniform on their ranges, x half uniform
/// on (0, 1) and half concentrated around the bulk of the density.
std::vector<BetaSample> random_beta_samples(std::uint64_t seed, std::size_t n, double lo, double hi);

struct CheckResult {
    std::string name;
    std::int64_t samples = 0;
    double max_residual = 0.0;
    double tolerance = 0.0;
    bool passed = false;
    /// Outside the scope of the property being checked; reported, never failed.
    bool observational = false;
    std::string detail;
};

struct VerificationReport {
    std::uint64_t seed = 0;
    std::string profile;
    std::vector<CheckResult> checks;

    bool overall() const;
    /// First failing check, or nullptr.
    const CheckResult* first_failure() const;
};

/// I_x(a, b+1) - I_x(a, b) = x^a (1-x)^b / (b B(a, b)).
CheckResult check_recurrence(std::span<const BetaSample> sample, double tol,
                             const EvalConfig& cfg = {});

/// I_x(a, b) + I_{1-x}(b, a) = 1.
CheckResult check_symmetry(std::span<const BetaSample> sample, double tol,
                           const EvalConfig& cfg = {});

/// I_x(1, b) = 1 - (1 - x)^b. Uses the x and b of each sample.
CheckResult check_closed_form_a1(std::span<const BetaSample> sample, double tol,
                                 const EvalConfig& cfg = {});

/// reg_inc_beta against quad_inc_beta.
CheckResult check_oracle_agreement(std::span<const BetaSample> sample, double tol,
                                   const EvalConfig& cfg = {});

/// b -> I_{q(a,b,kappa)}(a, b) strictly decreasing as d2 steps through
/// [d2_lo, d2_hi] for each d1: every consecutive difference must be below
/// -strict_margin. For kappa > 1 the result is observational only.
CheckResult check_monotone_b(Kappa k, std::span<const std::int64_t> d1_values, std::int64_t d2_lo,
                             std::int64_t d2_hi, double strict_margin = 1e-14,
                             const EvalConfig& cfg = {});

/// |I_{q(a,b,kappa)}(a,b) - P(a, kappa a)| strictly shrinking along the
/// b ladder and at most final_tol at its last rung, for every (a, kappa).
CheckResult check_limit(std::span<const double> a_values, std::span<const double> kappas,
                        std::span<const double> b_ladder, double final_tol = 1e-3,
                        const EvalConfig& cfg = {});

/// prob_leq_kappa_mean strictly increasing along a strictly increasing
/// kappa ladder, for every sampled parameter pair.
CheckResult check_kappa_monotone(std::span<const FParams> params, std::span<const double> ladder,
                                 const EvalConfig& cfg = {});

/// P(X <= E[X]) > 1/2 on every sampled parameter pair.
CheckResult check_half_bound(std::span<const FParams> params, const EvalConfig& cfg = {});

enum class Profile { quick, full };

struct SuiteOptions {
    Profile profile = Profile::quick;
    std::uint64_t seed = 20240601;
    /// Replaces every residual tolerance when positive.
    double tolerance_override = 0.0;
};

/// Runs every check above with the sample sizes of the chosen profile
/// (about 100 points per check for quick, 1000 for full).
VerificationReport run_verification(const SuiteOptions& opts, const EvalConfig& cfg = {});

}  // namespace fconc
