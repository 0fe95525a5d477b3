#pragma once

namespace fconc {

/// Tolerances and iteration caps shared by every numerical routine.
///
/// Immutable once constructed and passed by const reference, so the
/// special functions stay pure and can be called from any thread.
struct EvalConfig {
    /// Relative termination tolerance for continued fractions and series.
    double cf_tolerance = 1e-15;
    /// Iteration cap for continued fractions and series.
    long cf_max_iter = 5000;
    /// Absolute tolerance for the tanh-sinh oracle quadrature.
    double quad_tolerance = 1e-10;
    /// Maximum number of step-halvings in the oracle quadrature.
    int quad_max_level = 12;

    /// Throws DomainError unless 0 < cf_tolerance < 1e-6, cf_max_iter >= 100,
    /// 0 < quad_tolerance < 1e-6 and quad_max_level >= 5.
    void validate() const;
};

}  // namespace fconc
