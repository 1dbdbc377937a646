#pragma once

#include "remon/linalg.hpp"
#include "remon/process.hpp"

namespace remon::coding {

// Gaussian tail probability, P{N(0,1) > x}.
double q_func(double x);

// Inverse of q_func on (0, 1). Relative error below 1e-10 over
// eps in [1e-12, 1 - 1e-12]; q_inv(0.5) is exactly 0.
double q_inv(double eps);

// AWGN channel capacity in bits per channel use, 0.5*log2(1 + snr).
double capacity(double snr);

struct Dispersions {
    double channel; // bits^2 per channel use
    double source;  // bits^2 per source symbol
};

// Second-order terms of the normal approximation. The source dispersion is
// constant (0.5*log2(e)^2); the channel dispersion grows with SNR toward it.
Dispersions dispersions(double snr);

// Gaussian rate-distortion in bits per source symbol: reverse water-filling
// average (1/k) * sum max{0.5*log2(lambda_i / distortion), 0}.
double rate_distortion(const linalg::Vector& source_eigs, double distortion);
double rate_distortion(double source_var, double distortion);

struct ChannelSpec {
    double snr; // linear, dimensionless, > 0

    explicit ChannelSpec(double snr_in);
};

// Which covariance feeds the rate-distortion eigenvalues.
enum class SourceVarMode {
    SteadyState,    // eigenvalues of the process steady-state covariance
    ReceiverOutput, // eigenvalues of steady-state covariance + distortion*I
};

struct CodingPoint {
    double distortion;         // tolerated per-component distortion d
    double excess_prob;        // excess-distortion probability
    int source_dim;            // source symbols per packet
    double capacity;           // bits per channel use
    double rate;               // bits per source symbol
    double channel_dispersion; // bits^2
    double source_dispersion;  // bits^2
    double blocklength;        // channel uses per attempt (real-valued)
};

// Blocklength solving n*C - k*R = sqrt(n*V_C + k*V_S) * q_inv(eps).
// Selects the root consistent with the sign of q_inv(eps); throws
// infeasible_error ("infeasible root") when no positive root has that sign.
double blocklength(int source_dim, double capacity, double rate,
                   double channel_dispersion, double source_dispersion,
                   double excess_prob);

// Full pipeline d, eps -> CodingPoint for a given process and channel.
// Throws infeasible_error ("zero-rate code") when the distortion tolerance
// covers every source mode and no information needs to be conveyed.
CodingPoint make_coding_point(const process::ProcessModel& model,
                              const ChannelSpec& channel, double distortion,
                              double excess_prob,
                              SourceVarMode mode = SourceVarMode::SteadyState);

} // namespace remon::coding
