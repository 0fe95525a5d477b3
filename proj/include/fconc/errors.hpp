#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace fconc {

/// Argument outside the mathematical domain of a function.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Result not representable in double precision.
class OverflowError : public std::overflow_error {
public:
    using std::overflow_error::overflow_error;
};

/// An iterative evaluation (continued fraction, series, quadrature
/// refinement) hit its cap before meeting the requested tolerance.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, long iterations)
        : std::runtime_error(what), iterations_(iterations) {}

    long iterations() const noexcept { return iterations_; }

private:
    long iterations_;
};

/// ConvergenceError raised while scanning the (d1, d2) grid.
class GridCellError : public ConvergenceError {
public:
    GridCellError(const ConvergenceError& cause, std::int64_t d1, std::int64_t d2)
        : ConvergenceError("grid cell (d1=" + std::to_string(d1) + ", d2=" + std::to_string(d2) +
                               "): " + cause.what(),
                           cause.iterations()),
          d1_(d1),
          d2_(d2) {}

    std::int64_t d1() const noexcept { return d1_; }
    std::int64_t d2() const noexcept { return d2_; }

private:
    std::int64_t d1_;
    std::int64_t d2_;
};

}  // namespace fconc
