#pragma once

#include <cstdint>

#include "remon/process.hpp"

namespace remon::montecarlo {

// Configuration of the stochastic oracle. Each path simulates the sampled
// process independently; results are deterministic in (seed, paths, cycles)
// and independent of the thread count.
struct SimConfig {
    process::ProcessModel model;
    double q_w;              // sample-noise variance per component, >= 0
    double attempt;          // per-attempt delay r, > 0
    double wait;             // post-ACK waiting time s, >= 0
    double eps;              // per-attempt failure probability, [0, 1)
    long horizon_cycles;     // accumulated cycles per path (after burn-in)
    long paths;              // independent sample paths
    std::uint64_t seed;
    double mse_grid_step;    // integration step; <= attempt/10, 0 -> attempt/50
    int threads = 1;

    void validate() const;
};

struct SimResult {
    double mse_mean;
    double aoi_mean;
    double mse_delay_mean;
    double mse_channel_mean;
    // Linearized standard errors of the pooled ratio estimators, computed
    // across paths; NaN when paths == 1.
    double mse_se;
    double aoi_se;
    double mse_delay_se;
    double mse_channel_se;
    long cycles_observed;
};

SimResult simulate(const SimConfig& cfg);

} // namespace remon::montecarlo
