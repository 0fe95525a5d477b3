#pragma once

#include <cstdint>

#include "fconc/config.hpp"
#include "fconc/special_functions.hpp"

namespace fconc {

/// Integer degrees of freedom of an F random variable.
/// d1 >= 1; d2 >= 3 so that the mean d2 / (d2 - 2) exists.
class FParams {
public:
    FParams(std::int64_t d1, std::int64_t d2);

    std::int64_t d1() const noexcept { return d1_; }
    std::int64_t d2() const noexcept { return d2_; }

    friend bool operator==(const FParams&, const FParams&) = default;

private:
    std::int64_t d1_;
    std::int64_t d2_;
};

/// Beta-function shape parameters (a, b) = (d1 / 2, d2 / 2).
/// Any reals with a >= 1/2 and b > 1 are accepted, so b may step through
/// non-integer values in convergence studies.
class ShapePair {
public:
    ShapePair(double a, double b);
    explicit ShapePair(const FParams& p);

    double a() const noexcept { return a_; }
    double b() const noexcept { return b_; }

private:
    double a_;
    double b_;
};

/// Positive multiplier applied to the mean.
class Kappa {
public:
    explicit Kappa(double value);

    double value() const noexcept { return value_; }

    friend auto operator<=>(const Kappa&, const Kappa&) = default;

private:
    double value_;
};

/// E[X] = d2 / (d2 - 2).
double mean(const FParams& p);

/// P(X <= x) = I_{d1 x / (d1 x + d2)}(d1/2, d2/2).
double cdf(double x, const FParams& p, const EvalConfig& cfg = {});

/// q(a, b, kappa) = kappa a / (kappa a + b - 1), the incomplete-beta argument
/// that corresponds to kappa * E[X].
double threshold(const ShapePair& s, Kappa k);

/// The same threshold together with its exact complement (b - 1) / (kappa a + b - 1).
UnitPoint threshold_point(const ShapePair& s, Kappa k);

/// P(X <= kappa E[X]) = I_{q(a,b,kappa)}(a, b).
double prob_leq_kappa_mean(const ShapePair& s, Kappa k, const EvalConfig& cfg = {});
double prob_leq_kappa_mean(const FParams& p, Kappa k, const EvalConfig& cfg = {});

}  // namespace fconc
