#include "remon/metrics.hpp"

#include <cmath>
#include <stdexcept>

#include "remon/errors.hpp"
#include "remon/estimation.hpp"

namespace remon::metrics {

namespace {

void check_cycle_args(double attempt, double wait, double eps) {
    if (!(attempt > 0.0) || !std::isfinite(attempt)) {
        throw std::invalid_argument("metrics: attempt delay must be finite and > 0");
    }
    if (!(wait >= 0.0) || !std::isfinite(wait)) {
        throw std::invalid_argument("metrics: wait must be finite and >= 0");
    }
    if (!(eps >= 0.0) || !(eps < 1.0)) {
        throw std::invalid_argument("metrics: eps must be in [0, 1): never succeeds");
    }
}

} // namespace

ClosedFormTerms closed_form_terms(const process::ScalarProcess& proc, double q_w) {
    if (!(q_w >= 0.0)) throw std::invalid_argument("closed_form_terms: q_w must be >= 0");
    const double q_x = proc.q_x();
    return {q_x, -q_x + q_x * q_w / (q_x + q_w)};
}

CycleAverages avg_mse_scalar(const process::ScalarProcess& proc, double q_w, double attempt,
                             double wait, double eps) {
    check_cycle_args(attempt, wait, eps);
    if (!(q_w >= 0.0)) throw std::invalid_argument("avg_mse_scalar: q_w must be >= 0");

    const double a = proc.a;
    const double q_x = proc.q_x();
    const double channel0 = q_x * q_w / (q_x + q_w);
    const double decay = std::exp(2.0 * a * attempt); // < 1 since a < 0
    const double growth =
        (1.0 - eps) / (1.0 - eps * decay) * std::exp(2.0 * a * (2.0 * attempt + wait)) - decay;
    const double denom = attempt / (1.0 - eps) + wait;
    // Averaging maps an exp(2*a*tau) coefficient c to c * scale; the delay
    // part has coefficient -q_x, the channel part channel0.
    const double scale = growth / (2.0 * a * denom);
    const double delay_avg = q_x - q_x * scale;
    const double channel_avg = channel0 * scale;
    return {delay_avg + channel_avg, delay_avg, channel_avg};
}

double avg_aoi(double attempt, double wait, double eps) {
    check_cycle_args(attempt, wait, eps);
    const double fail = 1.0 - eps;
    const double num = 0.5 * fail * wait * wait + (2.0 - eps) * wait * attempt +
                       (3.0 - eps) / (2.0 * fail) * attempt * attempt;
    return num / (fail * wait + attempt);
}

CycleAverages avg_mse_general(const process::ProcessModel& model, double q_w, double attempt,
                              double wait, double eps, double tol) {
    check_cycle_args(attempt, wait, eps);
    if (!(q_w >= 0.0)) throw std::invalid_argument("avg_mse_general: q_w must be >= 0");
    if (!(tol > 0.0)) throw std::invalid_argument("avg_mse_general: tol must be > 0");

    const double trace_cov = model.steady_covariance().trace();
    const auto delay_at = [&](double tau) { return estimation::mse_delay(model, tau); };
    const auto channel_at = [&](double tau) { return estimation::mse_channel(model, q_w, tau); };

    const double denom = attempt / (1.0 - eps) + wait;
    // The cycle integrals are nested: term m extends term m-1 by one
    // attempt-length interval, so each increment is integrated once and
    // reused. Regrouping the weighted sum as sum_j eps^j * increment_j shows
    // a per-increment quadrature error of delta contributes at most
    // delta / (1 - eps) to the numerator, hence the budget below.
    const double quad_tol = 0.25 * tol * (1.0 - eps) * denom;
    double cum_delay =
        linalg::quadrature(delay_at, attempt, 2.0 * attempt + wait, quad_tol);
    double cum_channel =
        linalg::quadrature(channel_at, attempt, 2.0 * attempt + wait, quad_tol);
    double sum_delay = 0.0;
    double sum_channel = 0.0;
    double weight = 1.0 - eps; // eps^m * (1 - eps)
    double epow = eps;         // eps^{m+1}
    for (long m = 0;; ++m) {
        if (m >= 1000000) throw std::runtime_error("avg_mse_general: series failure");
        sum_delay += weight * cum_delay;
        sum_channel += weight * cum_channel;
        if (eps == 0.0) break;
        // Remaining terms are bounded by 2*trace_cov per time unit; the
        // geometric tail sums in closed form. The bound is compared in
        // time-average units, hence the denom factor.
        const double tail = 2.0 * trace_cov * epow *
                            (wait + attempt * (static_cast<double>(m) + 1.0 + 1.0 / (1.0 - eps)));
        if (tail < 0.5 * tol * denom) break;
        const double lo = attempt + wait + (static_cast<double>(m) + 1.0) * attempt;
        cum_delay += linalg::quadrature(delay_at, lo, lo + attempt, quad_tol);
        cum_channel += linalg::quadrature(channel_at, lo, lo + attempt, quad_tol);
        weight *= eps;
        epow *= eps;
    }
    const double delay_avg = sum_delay / denom;
    const double channel_avg = sum_channel / denom;
    return {delay_avg + channel_avg, delay_avg, channel_avg};
}

TradeoffPoint evaluate_point(const SystemConfig& sys, double distortion, double excess_prob) {
    const EvalOptions& opts = sys.options;
    if (opts.explicit_q_w >= 0.0 && opts.explicit_q_w > distortion) {
        throw infeasible_error(
            "evaluate_point: sample-noise variance q_w exceeds the tolerated distortion d");
    }
    const coding::CodingPoint cp =
        coding::make_coding_point(sys.model, sys.channel, distortion, excess_prob, opts.source_var);
    double n = cp.blocklength;
    if (opts.integer_blocklength) n = std::ceil(n);
    const double attempt = timing::attempt_delay(sys.timing, n);
    const double q_w = opts.explicit_q_w >= 0.0 ? opts.explicit_q_w : distortion;

    CycleAverages avg;
    if (sys.model.dim() == 1) {
        const process::ScalarProcess sp(sys.model.A()(0, 0), sys.model.Q_u()(0, 0));
        avg = avg_mse_scalar(sp, q_w, attempt, sys.timing.wait, excess_prob);
    } else {
        avg = avg_mse_general(sys.model, q_w, attempt, sys.timing.wait, excess_prob,
                              opts.series_tol);
    }
    const double aoi = avg_aoi(attempt, sys.timing.wait, excess_prob);
    return {distortion, excess_prob, n,       attempt,         aoi,
            avg.mse,    avg.mse_delay, avg.mse_channel, true};
}

} // namespace remon::metrics
