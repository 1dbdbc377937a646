#pragma once

#include "remon/linalg.hpp"
#include "remon/process.hpp"

namespace remon::estimation {

// Staleness part of the estimation error: the trace of the covariance
// accumulated by the input noise over an age of tau seconds. Grows from 0
// to trace of the steady covariance.
double mse_delay(const process::ProcessModel& model, double tau);
double mse_delay(const process::ScalarProcess& proc, double tau);

// Linear MMSE gain applied to the latest received sample when the estimate
// is tau seconds old and the sample carries additive noise of variance q_w
// per component: exp(A*tau) * Q_x * (Q_x + q_w*I)^{-1}.
linalg::Matrix estimator_gain(const process::ProcessModel& model, double q_w, double tau);
double estimator_gain(const process::ScalarProcess& proc, double q_w, double tau);

// Residual error contributed by the sample noise under the MMSE gain.
// Zero iff q_w = 0; decays with tau for a stable process.
double mse_channel(const process::ProcessModel& model, double q_w, double tau);
double mse_channel(const process::ScalarProcess& proc, double q_w, double tau);

// Sample-noise error under an arbitrary gain; minimized by estimator_gain.
// Exists for the optimality probe, not for production use.
double mse_channel_with_gain(const process::ProcessModel& model, double q_w, double tau,
                             const linalg::Matrix& gain);

// Instantaneous estimation MSE at age tau: delay part plus channel part.
// The split is exact because input noise and sample noise are uncorrelated.
double mse_total(const process::ProcessModel& model, double q_w, double tau);
double mse_total(const process::ScalarProcess& proc, double q_w, double tau);

} // namespace remon::estimation
