#pragma once

#include "remon/coding.hpp"
#include "remon/process.hpp"
#include "remon/timing.hpp"

namespace remon::metrics {

// Coefficients of the scalar instantaneous MSE written as
// xi + upsilon * exp(2*a*tau).
struct ClosedFormTerms {
    double xi;      // steady-state variance, the tau -> infinity limit
    double upsilon; // exp(2*a*tau) coefficient; xi + upsilon >= 0
};

ClosedFormTerms closed_form_terms(const process::ScalarProcess& proc, double q_w);

struct CycleAverages {
    double mse;
    double mse_delay;
    double mse_channel;
};

// Long-run time average of the estimation MSE under geometric retransmissions
// (closed form, scalar process). attempt = per-attempt delay, wait = post-ACK
// waiting time, eps = per-attempt failure probability.
CycleAverages avg_mse_scalar(const process::ScalarProcess& proc, double q_w, double attempt,
                             double wait, double eps);

// Long-run time-average age of the sample held by the receiver.
double avg_aoi(double attempt, double wait, double eps);

// Numeric counterpart of avg_mse_scalar valid for any dimension: expectation
// over the geometric retransmission count with per-cycle quadrature, truncated
// once an exact geometric tail bound falls below tol.
CycleAverages avg_mse_general(const process::ProcessModel& model, double q_w, double attempt,
                              double wait, double eps, double tol = 1e-9);

struct TradeoffPoint {
    double distortion;
    double excess_prob;
    double blocklength;
    double attempt_delay;
    double aoi;
    double mse;
    double mse_delay;
    double mse_channel;
    bool feasible;
};

struct EvalOptions {
    coding::SourceVarMode source_var = coding::SourceVarMode::SteadyState;
    bool integer_blocklength = false;
    // Sample-noise variance per component. Negative means worst case: q_w
    // tracks the tolerated distortion d. An explicit value must stay <= d.
    double explicit_q_w = -1.0;
    double series_tol = 1e-9;
};

struct SystemConfig {
    process::ProcessModel model;
    coding::ChannelSpec channel;
    timing::LinkTiming timing;
    EvalOptions options;
};

// Full pipeline (d, eps) -> blocklength -> per-attempt delay -> (AoI, MSE).
TradeoffPoint evaluate_point(const SystemConfig& sys, double distortion, double excess_prob);

} // namespace remon::metrics
