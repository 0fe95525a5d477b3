#pragma once

#include "fconc/config.hpp"

namespace fconc {

/// A point of the unit interval carried together with its complement.
///
/// Callers that know 1 - x in closed form (the F-probe threshold does)
/// pass it here so no precision is lost to cancellation near x = 1.
struct UnitPoint {
    double x;
    double complement;

    static UnitPoint of(double x) { return {x, 1.0 - x}; }
};

/// ln Gamma(x) for x > 0.
double ln_gamma(double x);

/// ln Gamma(x) - [(x - 1/2) ln x - x + ln(2 pi)/2], the remainder of
/// Stirling's formula. Positive and decreasing; about 1/(12x) for large x.
double stirling_correction(double x);

/// ln B(a, b).
double ln_beta(double a, double b);

/// B(a, b) = Gamma(a) Gamma(b) / Gamma(a + b). Throws OverflowError when
/// the result exceeds the double range.
double beta(double a, double b);

/// Regularized incomplete beta function I_x(a, b).
///
/// Evaluated by the standard continued fraction with the modified Lentz
/// scheme. When x > (a + 1) / (a + b + 2) the complement I_{1-x}(b, a) is
/// evaluated instead so the fraction converges quickly. The power prefactor
/// x^a (1-x)^b / B(a, b) is formed in the log domain from Stirling
/// remainders, which keeps it accurate for a, b in the thousands.
///
/// Throws DomainError outside 0 <= x <= 1, a > 0, b > 0 and
/// ConvergenceError if cfg.cf_max_iter is reached.
double reg_inc_beta(double x, double a, double b, const EvalConfig& cfg = {});
double reg_inc_beta(UnitPoint p, double a, double b, const EvalConfig& cfg = {});

/// x^a (1-x)^b / B(a, b), the correction term of the b -> b+1 recurrence
/// (up to the factor 1/b).
double beta_power_term(UnitPoint p, double a, double b);

/// Regularized lower incomplete gamma P(a, x) = gamma(a, x) / Gamma(a).
/// Power series for x < a + 1, Lentz continued fraction for Q = 1 - P
/// otherwise.
double reg_lower_gamma(double a, double x, const EvalConfig& cfg = {});

}  // namespace fconc
