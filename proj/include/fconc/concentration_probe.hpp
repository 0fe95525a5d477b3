#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "fconc/config.hpp"
#include "fconc/f_distribution.hpp"

namespace fconc {

/// Integer search box d1 in [1, d1_max], d2 in [3, d2_max].
struct GridSpec {
    static constexpr std::int64_t d2_min = 3;

    std::int64_t d1_max = 1999;
    std::int64_t d2_max = 1999;
    /// Worker threads for the scan; 0 picks std::thread::hardware_concurrency().
    /// Results do not depend on this value.
    unsigned workers = 0;

    /// Throws DomainError unless d1_max >= 1 and d2_max >= 3.
    void validate() const;
    std::int64_t cell_count() const { return d1_max * (d2_max - d2_min + 1); }
};

/// One evaluated grid cell.
struct GridCell {
    double value = 0.0;
    std::int64_t d1 = 0;
    std::int64_t d2 = 0;
};

/// Total order used for the argmin: value, then d1, then d2.
bool precedes(const GridCell& lhs, const GridCell& rhs);

/// Full result of an exhaustive scan.
struct GridScan {
    GridCell minimum;
    std::int64_t cells = 0;
    /// Cells whose value is <= the floor passed to scan_grid.
    std::int64_t at_or_below_floor = 0;
    /// Smallest (d1, d2) among those cells.
    std::optional<GridCell> first_at_or_below_floor;
};

/// Evaluates P(X <= kappa E[X]) on every cell of the grid. Cells are split
/// into d1 stripes across workers and reduced under `precedes`, so the
/// result is bit-identical for any worker count. A convergence failure is
/// rethrown as GridCellError for the smallest failing (d1, d2).
GridScan scan_grid(Kappa k, const GridSpec& grid, double floor, const EvalConfig& cfg = {});

/// Closed-form value of the infimum over all (d1, d2), where one is known.
enum class ExactInfimum {
    unknown,            // kappa > 1: only the bound >= 1/2 is known
    zero_not_attained,  // 0 < kappa < 1
    half_not_attained,  // kappa == 1 exactly
};

ExactInfimum exact_infimum(Kappa k);
std::string_view describe(ExactInfimum e);

struct ProbeResult {
    double kappa = 0.0;
    double grid_min = 1.0;
    std::int64_t argmin_d1 = 0;
    std::int64_t argmin_d2 = 0;
    double limit_min = 1.0;
    double limit_argmin_a = 0.0;
    double combined_inf_estimate = 1.0;
    ExactInfimum exact = ExactInfimum::unknown;
    GridSpec grid;
};

/// Exhaustive grid minimum; fills the grid fields of ProbeResult only
/// (limit fields stay at their defaults, combined = grid_min).
ProbeResult grid_infimum(Kappa k, const GridSpec& grid, const EvalConfig& cfg = {});

/// b -> infinity limit of I_{q(a,b,kappa)}(a, b): P(a, kappa a).
double limit_b(double a, Kappa k, const EvalConfig& cfg = {});

struct LimitMinimum {
    double value = 1.0;
    double argmin_a = 0.0;
};

/// Minimum of limit_b over an a-grid; ties go to the smallest a.
LimitMinimum limit_curve_min(Kappa k, std::span<const double> a_grid,
                             const EvalConfig& cfg = {});

/// a = 0.5, 1.0, ..., dense_max followed by `tail_points` log-spaced values
/// ending at tail_max (no tail when tail_max <= dense_max).
std::vector<double> default_a_grid(double dense_max = 1000.0, double tail_max = 1e4,
                                   int tail_points = 64);

/// Grid scan plus limit curve plus the closed-form verdict for kappa <= 1.
ProbeResult infimum(Kappa k, const GridSpec& grid, std::span<const double> a_grid,
                    const EvalConfig& cfg = {});

/// Numerical evidence that the infimum stays above 1/2 for kappa > 1.
struct ConjectureReport {
    double kappa = 0.0;
    std::int64_t cells_checked = 0;
    std::int64_t limit_points_checked = 0;
    /// min(grid minimum, limit-curve minimum) - 1/2.
    double margin = 0.0;
    ProbeResult probe;
    /// A grid cell with value <= 1/2; its presence contradicts the
    /// lower bound P >= 1/2 for kappa >= 1.
    std::optional<GridCell> grid_counterexample;
    /// An a on the limit curve with P(a, kappa a) <= 1/2.
    std::optional<double> limit_counterexample_a;

    bool holds() const { return !grid_counterexample && !limit_counterexample_a && margin > 0.0; }
};

/// Throws DomainError unless kappa > 1.
ConjectureReport conjecture_probe(Kappa k, const GridSpec& grid, std::span<const double> a_grid,
                                  const EvalConfig& cfg = {});

}  // namespace fconc
