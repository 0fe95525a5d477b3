#include "fconc/f_distribution.hpp"

#include <cmath>
#include <string>

#include "fconc/errors.hpp"

namespace fconc {

FParams::FParams(std::int64_t d1, std::int64_t d2) : d1_(d1), d2_(d2) {
    if (d1 < 1) {
        throw DomainError("FParams: d1 must be at least 1, got " + std::to_string(d1));
    }
    if (d2 <= 2) {
        throw DomainError("FParams: d2 must exceed 2 (the mean d2/(d2-2) does not exist otherwise), got " +
                          std::to_string(d2));
    }
}

ShapePair::ShapePair(double a, double b) : a_(a), b_(b) {
    if (!(a >= 0.5) || !std::isfinite(a)) {
        throw DomainError("ShapePair: a must be at least 1/2, got " + std::to_string(a));
    }
    if (!(b > 1.0) || !std::isfinite(b)) {
        throw DomainError("ShapePair: b must exceed 1, got " + std::to_string(b));
    }
}

ShapePair::ShapePair(const FParams& p)
    : ShapePair(static_cast<double>(p.d1()) / 2.0, static_cast<double>(p.d2()) / 2.0) {}

Kappa::Kappa(double value) : value_(value) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw DomainError("Kappa: value must be positive and finite, got " + std::to_string(value));
    }
}

double mean(const FParams& p) {
    const auto d2 = static_cast<double>(p.d2());
    return d2 / (d2 - 2.0);
}

double cdf(double x, const FParams& p, const EvalConfig& cfg) {
    if (!(x >= 0.0)) {
        throw DomainError("cdf: x must be nonnegative, got " + std::to_string(x));
    }
    if (std::isinf(x)) return 1.0;
    const double scaled = static_cast<double>(p.d1()) * x;
    const double denom = scaled + static_cast<double>(p.d2());
    const UnitPoint point{scaled / denom, static_cast<double>(p.d2()) / denom};
    return reg_inc_beta(point, static_cast<double>(p.d1()) / 2.0,
                        static_cast<double>(p.d2()) / 2.0, cfg);
}

double threshold(const ShapePair& s, Kappa k) { return threshold_point(s, k).x; }

UnitPoint threshold_point(const ShapePair& s, Kappa k) {
    const double scaled = k.value() * s.a();
    const double denom = scaled + (s.b() - 1.0);
    return {scaled / denom, (s.b() - 1.0) / denom};
}

double prob_leq_kappa_mean(const ShapePair& s, Kappa k, const EvalConfig& cfg) {
    return reg_inc_beta(threshold_point(s, k), s.a(), s.b(), cfg);
}

double prob_leq_kappa_mean(const FParams& p, Kappa k, const EvalConfig& cfg) {
    return prob_leq_kappa_mean(ShapePair(p), k, cfg);
}

}  // namespace fconc
