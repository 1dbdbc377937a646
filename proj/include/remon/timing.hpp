#pragma once

#include <random>

namespace remon::timing {

// Per-attempt link parameters and the post-ACK waiting time. An attempt
// carrying n channel symbols occupies alpha*n + beta seconds; NACKed packets
// are retransmitted immediately, so the wait applies once per success cycle.
struct LinkTiming {
    double alpha; // seconds per channel symbol, > 0
    double beta;  // fixed per-attempt overhead, seconds, >= 0
    double wait;  // post-ACK waiting time, seconds, >= 0

    LinkTiming(double alpha_in, double beta_in, double wait_in);
};

// Delay of a single transmission attempt, alpha*n + beta.
double attempt_delay(double alpha, double beta, double blocklength);
double attempt_delay(const LinkTiming& timing, double blocklength);

struct DelayMoments {
    double mean;
    double second_moment;
};

// Moments of the success delay r' = (m+1)*r with m failures, each attempt
// independently failing with probability eps.
DelayMoments success_delay_moments(double attempt, double eps);

// One draw of r' = (m+1)*r, P{m = j} = eps^j (1 - eps).
double sample_success_delay(double attempt, double eps, std::mt19937_64& gen);

} // namespace remon::timing
