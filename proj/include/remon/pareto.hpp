#pragma once

#include <vector>

#include "remon/metrics.hpp"

namespace remon::pareto {

enum class Spacing { Linear, Logarithmic };

// Rectangular (distortion, eps) evaluation grid. Axis values are strictly
// increasing; distortions exceeding every source mode stay in the grid and
// surface as infeasible sweep rows rather than being dropped.
struct SweepGrid {
    std::vector<double> d_values;
    std::vector<double> eps_values;

    static std::vector<double> axis(double lo, double hi, int count, Spacing spacing);

    // Distortion logarithmic over [1e-3, 0.99] times the largest source mode
    // (log spacing resolves the steep small-distortion region), eps linear
    // over [1e-4, 0.9], 60 points per axis.
    static SweepGrid default_grid(double max_source_eig);

    void validate() const;
};

// Evaluates every grid cell in deterministic order (distortion-major, eps
// minor). Infeasible cells are flagged with NaN metrics; cells are
// independent, so any thread count yields identical results.
std::vector<metrics::TradeoffPoint> sweep(const SweepGrid& grid, const metrics::SystemConfig& sys,
                                          int threads = 1);

// Non-dominated subset under componentwise (mse, aoi) minimization, sorted by
// aoi ascending. Exact ties on both coordinates keep the earliest input row.
std::vector<metrics::TradeoffPoint> pareto_front(const std::vector<metrics::TradeoffPoint>& points);

struct BoundaryPoint {
    double aoi;
    double value;
};

// Lower boundary of the achieved cloud, one series per MSE component plus the
// total. Each series takes the per-AoI-bin minimum of its own values (bin
// resolution 1e-6 of the largest AoI) and then drops points that are strictly
// undercut both at smaller and at larger AoI. Survivors are the lower edge of
// the sampled region sorted by AoI; nothing forces them monotone, so the
// shape of each series reflects where that component's minimum actually sits.
struct BoundaryCurves {
    std::vector<BoundaryPoint> mse_delay;
    std::vector<BoundaryPoint> mse_channel;
    std::vector<BoundaryPoint> mse_total;
};

BoundaryCurves boundary_curves(const std::vector<metrics::TradeoffPoint>& points);

} // namespace remon::pareto
