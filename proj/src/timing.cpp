#include "remon/timing.hpp"

#include <cmath>
#include <stdexcept>

#include "remon/rng.hpp"

namespace remon::timing {

LinkTiming::LinkTiming(double alpha_in, double beta_in, double wait_in)
    : alpha(alpha_in), beta(beta_in), wait(wait_in) {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) {
        throw std::invalid_argument("LinkTiming: alpha must be finite and > 0");
    }
    if (!(beta >= 0.0) || !std::isfinite(beta)) {
        throw std::invalid_argument("LinkTiming: beta must be finite and >= 0");
    }
    if (!(wait >= 0.0) || !std::isfinite(wait)) {
        throw std::invalid_argument("LinkTiming: wait must be finite and >= 0");
    }
}

double attempt_delay(double alpha, double beta, double blocklength) {
    if (!(alpha > 0.0)) throw std::invalid_argument("attempt_delay: alpha must be > 0");
    if (!(beta >= 0.0)) throw std::invalid_argument("attempt_delay: beta must be >= 0");
    if (!(blocklength > 0.0)) {
        throw std::invalid_argument("attempt_delay: blocklength must be > 0");
    }
    return alpha * blocklength + beta;
}

double attempt_delay(const LinkTiming& timing, double blocklength) {
    return attempt_delay(timing.alpha, timing.beta, blocklength);
}

DelayMoments success_delay_moments(double attempt, double eps) {
    if (!(attempt > 0.0)) throw std::invalid_argument("success_delay_moments: attempt must be > 0");
    if (!(eps >= 0.0) || !(eps < 1.0)) {
        throw std::invalid_argument("success_delay_moments: eps must be in [0, 1): never succeeds");
    }
    const double fail = 1.0 - eps;
    return {attempt / fail, (1.0 + eps) * attempt * attempt / (fail * fail)};
}

double sample_success_delay(double attempt, double eps, std::mt19937_64& gen) {
    if (!(attempt > 0.0)) throw std::invalid_argument("sample_success_delay: attempt must be > 0");
    const double failures = static_cast<double>(rng::geometric_failures(eps, gen));
    return (failures + 1.0) * attempt;
}

} // namespace remon::timing
