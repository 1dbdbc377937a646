#include "remon/coding.hpp"

#include <cmath>
#include <stdexcept>

#include "remon/errors.hpp"

namespace remon::coding {

namespace {

// Wichura's PPND16 rational approximation to the standard normal quantile.
double normal_quantile(double p) {
    const double q = p - 0.5;
    if (std::fabs(q) <= 0.425) {
        const double r = 0.180625 - q * q;
        return q *
               (((((((2.5090809287301226727e+3 * r + 3.3430575583588128105e+4) * r +
                     6.7265770927008700853e+4) *
                        r +
                    4.5921953931549871457e+4) *
                       r +
                   1.3731693765509461125e+4) *
                      r +
                  1.9715909503065514427e+3) *
                     r +
                 1.3314166789178437745e+2) *
                    r +
                3.3871328727963666080e+0) /
               (((((((5.2264952788528545610e+3 * r + 2.8729085735721942674e+4) * r +
                     3.9307895800092710610e+4) *
                        r +
                    2.1213794301586595867e+4) *
                       r +
                   5.3941960214247511077e+3) *
                      r +
                  6.8718700749205790830e+2) *
                     r +
                 4.2313330701600911252e+1) *
                    r +
                1.0);
    }
    double r = (q < 0.0) ? p : 1.0 - p;
    r = std::sqrt(-std::log(r));
    double x;
    if (r <= 5.0) {
        r -= 1.6;
        x = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
                  2.41780725177450611770e-1) *
                     r +
                 1.27045825245236838258e+0) *
                    r +
                3.64784832476320460504e+0) *
                   r +
               5.76949722146069140550e+0) *
                  r +
              4.63033784615654529590e+0) *
                 r +
             1.42343711074968357734e+0) /
            (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
                  1.51986665636164571966e-2) *
                     r +
                 1.48103976427480074590e-1) *
                    r +
                6.89767334985100004550e-1) *
                   r +
               1.67638483018380384940e+0) *
                  r +
              2.05319162663775882187e+0) *
                 r +
             1.0);
    } else {
        r -= 5.0;
        x = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                  1.24266094738807843860e-3) *
                     r +
                 2.65321895265761230930e-2) *
                    r +
                2.96560571828504891230e-1) *
                   r +
               1.78482653991729133580e+0) *
                  r +
              5.46378491116411436990e+0) *
                 r +
             6.65790464350110377720e+0) /
            (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
                  1.84631831751005468180e-6) *
                     r +
                 7.86869131145613259100e-4) *
                    r +
                1.48753612908506148525e-2) *
                   r +
               1.36929880922735805310e-1) *
                  r +
              5.99832206555887937690e-1) *
                 r +
             1.0);
    }
    return (q < 0.0) ? -x : x;
}

double normal_pdf(double x) {
    return std::exp(-0.5 * x * x) * 0.39894228040143267793994605993438;
}

const double kLog2eSq = 2.0813689810056077; // log2(e)^2

} // namespace

double q_func(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("q_func: x must be finite");
    return 0.5 * std::erfc(x * 0.7071067811865475244008443621048);
}

double q_inv(double eps) {
    if (!(eps > 0.0) || !(eps < 1.0)) {
        throw std::invalid_argument("q_inv: eps must lie strictly inside (0, 1)");
    }
    if (eps == 0.5) return 0.0;
    double x = -normal_quantile(eps);
    // Two Newton corrections on q_func(x) = eps; the pdf stays well above the
    // underflow threshold for any eps representable away from {0, 1}.
    for (int i = 0; i < 2; ++i) {
        const double pdf = normal_pdf(x);
        if (pdf < 1e-300) break;
        x += (q_func(x) - eps) / pdf;
    }
    return x;
}

double capacity(double snr) {
    if (!(snr >= 0.0) || !std::isfinite(snr)) {
        throw std::invalid_argument("capacity: snr must be finite and >= 0");
    }
    return 0.5 * std::log2(1.0 + snr);
}

Dispersions dispersions(double snr) {
    if (!(snr >= 0.0) || !std::isfinite(snr)) {
        throw std::invalid_argument("dispersions: snr must be finite and >= 0");
    }
    const double g = 1.0 + snr;
    return {0.5 * (1.0 - 1.0 / (g * g)) * kLog2eSq, 0.5 * kLog2eSq};
}

double rate_distortion(const linalg::Vector& source_eigs, double distortion) {
    if (source_eigs.size() == 0) {
        throw std::invalid_argument("rate_distortion: eigenvalue list is empty");
    }
    if (!(distortion > 0.0) || !std::isfinite(distortion)) {
        throw std::invalid_argument("rate_distortion: distortion must be finite and > 0");
    }
    double bits = 0.0;
    for (Eigen::Index i = 0; i < source_eigs.size(); ++i) {
        const double lambda = source_eigs[i];
        if (lambda < 0.0) {
            throw std::invalid_argument("rate_distortion: negative source eigenvalue");
        }
        if (lambda > distortion) bits += 0.5 * std::log2(lambda / distortion);
    }
    return bits / static_cast<double>(source_eigs.size());
}

double rate_distortion(double source_var, double distortion) {
    linalg::Vector eigs(1);
    eigs[0] = source_var;
    return rate_distortion(eigs, distortion);
}

ChannelSpec::ChannelSpec(double snr_in) : snr(snr_in) {
    if (!(snr > 0.0) || !std::isfinite(snr)) {
        throw std::invalid_argument("ChannelSpec: snr must be finite and > 0");
    }
}

double blocklength(int source_dim, double capacity, double rate,
                   double channel_dispersion, double source_dispersion,
                   double excess_prob) {
    if (source_dim < 1) throw std::invalid_argument("blocklength: source_dim must be >= 1");
    if (!(capacity > 0.0)) throw std::invalid_argument("blocklength: zero-capacity channel");
    if (!(rate >= 0.0)) throw std::invalid_argument("blocklength: rate must be >= 0");
    if (channel_dispersion < 0.0 || source_dispersion < 0.0) {
        throw std::invalid_argument("blocklength: dispersions must be >= 0");
    }
    const double k = static_cast<double>(source_dim);
    const double q = q_inv(excess_prob);
    if (q == 0.0) return k * rate / capacity;

    const double q2 = q * q;
    const double disc = channel_dispersion * channel_dispersion * q2 * q2 +
                        4.0 * k *
                            (channel_dispersion * capacity * rate +
                             source_dispersion * capacity * capacity) *
                            q2;
    if (disc < 0.0) throw infeasible_error("blocklength: infeasible root (negative discriminant)");
    const double c2 = capacity * capacity;
    const double upper =
        (channel_dispersion * q2 + 2.0 * k * capacity * rate + std::sqrt(disc)) / (2.0 * c2);
    if (q > 0.0) return upper;

    // q < 0 requires n*C <= k*R; that is the smaller root, evaluated through
    // the product of roots to avoid cancellation.
    const double product = (k * k * rate * rate - k * source_dispersion * q2) / c2;
    if (!(upper > 0.0) || !(product > 0.0)) {
        throw infeasible_error(
            "blocklength: infeasible root (no positive blocklength satisfies the relation)");
    }
    return product / upper;
}

CodingPoint make_coding_point(const process::ProcessModel& model, const ChannelSpec& channel,
                              double distortion, double excess_prob, SourceVarMode mode) {
    if (!(distortion > 0.0) || !std::isfinite(distortion)) {
        throw std::invalid_argument("make_coding_point: distortion must be finite and > 0");
    }
    if (!(excess_prob > 0.0) || !(excess_prob < 1.0)) {
        throw std::invalid_argument("make_coding_point: excess_prob must lie in (0, 1)");
    }
    linalg::Matrix source_cov = model.steady_covariance();
    if (mode == SourceVarMode::ReceiverOutput) {
        source_cov += distortion * linalg::Matrix::Identity(model.dim(), model.dim());
    }
    linalg::Vector eigs = linalg::sym_eigenvalues(source_cov);
    // The steady covariance is PSD by construction; clip eigensolver jitter.
    for (Eigen::Index i = 0; i < eigs.size(); ++i) eigs[i] = std::max(eigs[i], 0.0);

    const double rate = rate_distortion(eigs, distortion);
    if (rate == 0.0) {
        throw infeasible_error(
            "make_coding_point: zero-rate code (distortion tolerance covers every source mode)");
    }
    const double cap = capacity(channel.snr);
    const Dispersions v = dispersions(channel.snr);
    const double n = blocklength(model.dim(), cap, rate, v.channel, v.source, excess_prob);
    return {distortion, excess_prob, model.dim(), cap, rate, v.channel, v.source, n};
}

} // namespace remon::coding
