#include "fconc/concentration_probe.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <string>
#include <thread>

#include "fconc/errors.hpp"

namespace fconc {

void GridSpec::validate() const {
    if (d1_max < 1) throw DomainError("GridSpec: d1_max must be at least 1");
    if (d2_max < d2_min) throw DomainError("GridSpec: d2_max must be at least 3");
}

bool precedes(const GridCell& lhs, const GridCell& rhs) {
    if (lhs.value != rhs.value) return lhs.value < rhs.value;
    if (lhs.d1 != rhs.d1) return lhs.d1 < rhs.d1;
    return lhs.d2 < rhs.d2;
}

namespace {

struct StripeResult {
    GridScan scan;
    std::exception_ptr error;
    std::int64_t error_d1 = 0;
    std::int64_t error_d2 = 0;
};

bool lexicographically_before(std::int64_t d1, std::int64_t d2, const GridCell& c) {
    return d1 < c.d1 || (d1 == c.d1 && d2 < c.d2);
}

// Worker `index` of `stride` handles d1 = 1 + index, 1 + index + stride, ...
StripeResult scan_stripe(Kappa k, const GridSpec& grid, double floor, const EvalConfig& cfg,
                         unsigned index, unsigned stride) {
    StripeResult out;
    GridScan& scan = out.scan;
    scan.minimum.value = 2.0;  // above any probability
    for (std::int64_t d1 = 1 + index; d1 <= grid.d1_max; d1 += stride) {
        const double a = static_cast<double>(d1) / 2.0;
        for (std::int64_t d2 = GridSpec::d2_min; d2 <= grid.d2_max; ++d2) {
            GridCell cell{0.0, d1, d2};
            try {
                cell.value = prob_leq_kappa_mean(ShapePair(a, static_cast<double>(d2) / 2.0), k, cfg);
            } catch (const ConvergenceError& e) {
                out.error = std::make_exception_ptr(GridCellError(e, d1, d2));
                out.error_d1 = d1;
                out.error_d2 = d2;
                return out;
            }
            ++scan.cells;
            if (precedes(cell, scan.minimum)) scan.minimum = cell;
            if (cell.value <= floor) {
                ++scan.at_or_below_floor;
                if (!scan.first_at_or_below_floor ||
                    lexicographically_before(d1, d2, *scan.first_at_or_below_floor)) {
                    scan.first_at_or_below_floor = cell;
                }
            }
        }
    }
    return out;
}

}  // namespace

GridScan scan_grid(Kappa k, const GridSpec& grid, double floor, const EvalConfig& cfg) {
    grid.validate();
    cfg.validate();

    unsigned workers = grid.workers != 0 ? grid.workers : std::thread::hardware_concurrency();
    workers = std::clamp<unsigned>(workers, 1u, static_cast<unsigned>(grid.d1_max));

    std::vector<StripeResult> stripes(workers);
    if (workers == 1) {
        stripes[0] = scan_stripe(k, grid, floor, cfg, 0, 1);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] { stripes[w] = scan_stripe(k, grid, floor, cfg, w, workers); });
        }
    }

    // Report the failure at the smallest (d1, d2) so the error does not
    // depend on scheduling either.
    const StripeResult* failed = nullptr;
    for (const auto& s : stripes) {
        if (!s.error) continue;
        if (failed == nullptr || s.error_d1 < failed->error_d1 ||
            (s.error_d1 == failed->error_d1 && s.error_d2 < failed->error_d2)) {
            failed = &s;
        }
    }
    if (failed != nullptr) std::rethrow_exception(failed->error);

    GridScan total;
    total.minimum.value = 2.0;
    for (const auto& s : stripes) {
        total.cells += s.scan.cells;
        total.at_or_below_floor += s.scan.at_or_below_floor;
        if (precedes(s.scan.minimum, total.minimum)) total.minimum = s.scan.minimum;
        if (const auto& c = s.scan.first_at_or_below_floor) {
            if (!total.first_at_or_below_floor ||
                lexicographically_before(c->d1, c->d2, *total.first_at_or_below_floor)) {
                total.first_at_or_below_floor = c;
            }
        }
    }
    return total;
}

ExactInfimum exact_infimum(Kappa k) {
    // Exact comparison: kappa = 1 + 1e-15 is already in the kappa > 1 regime.
    if (k.value() < 1.0) return ExactInfimum::zero_not_attained;
    if (k.value() == 1.0) return ExactInfimum::half_not_attained;
    return ExactInfimum::unknown;
}

std::string_view describe(ExactInfimum e) {
    switch (e) {
        case ExactInfimum::zero_not_attained:
            return "infimum = 0, not attained";
        case ExactInfimum::half_not_attained:
            return "infimum = 1/2, not attained";
        case ExactInfimum::unknown:
            break;
    }
    return "infimum >= 1/2, value estimated numerically";
}

ProbeResult grid_infimum(Kappa k, const GridSpec& grid, const EvalConfig& cfg) {
    const GridScan scan = scan_grid(k, grid, -1.0, cfg);
    ProbeResult r;
    r.kappa = k.value();
    r.grid = grid;
    r.grid_min = scan.minimum.value;
    r.argmin_d1 = scan.minimum.d1;
    r.argmin_d2 = scan.minimum.d2;
    r.combined_inf_estimate = r.grid_min;
    r.exact = exact_infimum(k);
    return r;
}

double limit_b(double a, Kappa k, const EvalConfig& cfg) {
    return reg_lower_gamma(a, k.value() * a, cfg);
}

LimitMinimum limit_curve_min(Kappa k, std::span<const double> a_grid, const EvalConfig& cfg) {
    if (a_grid.empty()) throw DomainError("limit_curve_min: a_grid must not be empty");
    LimitMinimum best{2.0, 0.0};
    for (const double a : a_grid) {
        if (!(a >= 0.5)) {
            throw DomainError("limit_curve_min: every a must be at least 1/2, got " +
                              std::to_string(a));
        }
        const double v = limit_b(a, k, cfg);
        if (v < best.value || (v == best.value && a < best.argmin_a)) best = {v, a};
    }
    return best;
}

std::vector<double> default_a_grid(double dense_max, double tail_max, int tail_points) {
    if (!(dense_max >= 0.5)) throw DomainError("default_a_grid: dense_max must be at least 1/2");
    std::vector<double> grid;
    for (double a = 0.5; a <= dense_max; a += 0.5) grid.push_back(a);
    if (tail_max > grid.back() && tail_points > 0) {
        const double lo = std::log10(grid.back());
        const double hi = std::log10(tail_max);
        for (int i = 1; i <= tail_points; ++i) {
            grid.push_back(std::pow(10.0, lo + (hi - lo) * i / tail_points));
        }
        grid.back() = tail_max;
    }
    return grid;
}

ProbeResult infimum(Kappa k, const GridSpec& grid, std::span<const double> a_grid,
                    const EvalConfig& cfg) {
    ProbeResult r = grid_infimum(k, grid, cfg);
    const LimitMinimum lim = limit_curve_min(k, a_grid, cfg);
    r.limit_min = lim.value;
    r.limit_argmin_a = lim.argmin_a;
    r.combined_inf_estimate = std::min(r.grid_min, r.limit_min);
    return r;
}

ConjectureReport conjecture_probe(Kappa k, const GridSpec& grid, std::span<const double> a_grid,
                                  const EvalConfig& cfg) {
    if (!(k.value() > 1.0)) {
        throw DomainError("conjecture_probe: kappa must exceed 1, got " + std::to_string(k.value()));
    }
    ConjectureReport rep;
    rep.kappa = k.value();

    const GridScan scan = scan_grid(k, grid, 0.5, cfg);
    rep.cells_checked = scan.cells;
    rep.grid_counterexample = scan.first_at_or_below_floor;

    ProbeResult& p = rep.probe;
    p.kappa = k.value();
    p.grid = grid;
    p.grid_min = scan.minimum.value;
    p.argmin_d1 = scan.minimum.d1;
    p.argmin_d2 = scan.minimum.d2;
    p.exact = exact_infimum(k);

    const LimitMinimum lim = limit_curve_min(k, a_grid, cfg);
    rep.limit_points_checked = static_cast<std::int64_t>(a_grid.size());
    for (const double a : a_grid) {
        if (limit_b(a, k, cfg) <= 0.5) {
            rep.limit_counterexample_a = a;
            break;
        }
    }
    p.limit_min = lim.value;
    p.limit_argmin_a = lim.argmin_a;
    p.combined_inf_estimate = std::min(p.grid_min, p.limit_min);
    rep.margin = p.combined_inf_estimate - 0.5;
    return rep;
}

}  // namespace fconc
