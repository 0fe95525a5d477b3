#pragma once

#include <array>
#include <cstdint>
#include <numbers>
#include <span>

namespace fconc {

/// A published grid-infimum row: kappa, value (6 decimals), argmin.
struct ReferenceRow {
    double kappa;
    double value;
    std::int64_t d1;
    std::int64_t d2;
};

/// Published minima of P(X <= kappa E[X]) over d1, d2 <= 1999.
inline constexpr std::array<ReferenceRow, 13> kReferenceTable{{
    {1.00005, 0.509371, 1999, 1999},
    {1.001, 0.516817, 667, 1999},
    {1.005, 0.533577, 134, 1999},
    {1.05, 0.601371, 14, 1999},
    {1.5, 0.776954, 2, 1999},
    {3.0, 0.936000, 1, 1999},
    {3.005, 0.916991, 1, 803},
    {3.05, 0.919240, 1, 83},
    {std::numbers::pi, 0.923510, 1, 31},
    {4.0, 0.950133, 1, 7},
    {6.0, 0.974279, 1, 4},
    {8.0, 0.983723, 1, 3},
    {16.0, 0.993835, 1, 3},
}};

/// Absolute tolerance for matching a published 6-decimal value.
inline constexpr double kReferenceTolerance = 5e-6;

/// True when the row's value exceeds the value of a row with larger kappa.
/// The probability is strictly increasing in kappa cell by cell, so the
/// grid minimum is nondecreasing in kappa and such a row cannot be right.
inline bool contradicts_kappa_monotonicity(std::span<const ReferenceRow> table, std::size_t i) {
    for (const auto& other : table) {
        if (other.kappa > table[i].kappa && other.value < table[i].value) return true;
    }
    return false;
}

}  // namespace fconc
