#include "remon/estimation.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Cholesky>

namespace remon::estimation {

namespace {

void check_tau(double tau) {
    if (!(tau >= 0.0) || !std::isfinite(tau)) {
        throw std::invalid_argument("estimation: tau must be finite and >= 0");
    }
}

void check_qw(double q_w) {
    if (!(q_w >= 0.0) || !std::isfinite(q_w)) {
        throw std::invalid_argument("estimation: q_w must be finite and >= 0");
    }
}

// Q_x (Q_x + q_w I)^{-1}; symmetric because the factors share eigenvectors.
linalg::Matrix shrinkage(const process::ProcessModel& model, double q_w) {
    const linalg::Matrix& cov = model.steady_covariance();
    linalg::Matrix shifted = cov;
    shifted.diagonal().array() += q_w;
    Eigen::LDLT<linalg::Matrix> solver(shifted);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("estimation: singular sample covariance");
    }
    linalg::Matrix gain = solver.solve(cov);
    return 0.5 * (gain + gain.transpose());
}

} // namespace

double mse_delay(const process::ProcessModel& model, double tau) {
    check_tau(tau);
    const linalg::Matrix phi = linalg::mat_exp(model.A(), tau);
    const linalg::Matrix& cov = model.steady_covariance();
    return cov.trace() - (phi * cov * phi.transpose()).trace();
}

double mse_delay(const process::ScalarProcess& proc, double tau) {
    check_tau(tau);
    const double decay = std::exp(2.0 * proc.a * tau);
    return proc.q_x() * (1.0 - decay);
}

linalg::Matrix estimator_gain(const process::ProcessModel& model, double q_w, double tau) {
    check_tau(tau);
    check_qw(q_w);
    return linalg::mat_exp(model.A(), tau) * shrinkage(model, q_w);
}

double estimator_gain(const process::ScalarProcess& proc, double q_w, double tau) {
    check_tau(tau);
    check_qw(q_w);
    const double q_x = proc.q_x();
    return std::exp(proc.a * tau) * q_x / (q_x + q_w);
}

double mse_channel(const process::ProcessModel& model, double q_w, double tau) {
    check_tau(tau);
    check_qw(q_w);
    if (q_w == 0.0) return 0.0;
    const linalg::Matrix phi = linalg::mat_exp(model.A(), tau);
    return q_w * (phi * shrinkage(model, q_w) * phi.transpose()).trace();
}

double mse_channel(const process::ScalarProcess& proc, double q_w, double tau) {
    check_tau(tau);
    check_qw(q_w);
    const double q_x = proc.q_x();
    return q_x * q_w / (q_x + q_w) * std::exp(2.0 * proc.a * tau);
}

double mse_channel_with_gain(const process::ProcessModel& model, double q_w, double tau,
                             const linalg::Matrix& gain) {
    check_tau(tau);
    check_qw(q_w);
    if (gain.rows() != model.dim() || gain.cols() != model.dim()) {
        throw std::invalid_argument("mse_channel_with_gain: gain dimension mismatch");
    }
    const linalg::Matrix diff = linalg::mat_exp(model.A(), tau) - gain;
    const linalg::Matrix& cov = model.steady_covariance();
    return (diff * cov * diff.transpose()).trace() + q_w * (gain * gain.transpose()).trace();
}

double mse_total(const process::ProcessModel& model, double q_w, double tau) {
    return mse_delay(model, tau) + mse_channel(model, q_w, tau);
}

double mse_total(const process::ScalarProcess& proc, double q_w, double tau) {
    return mse_delay(proc, tau) + mse_channel(proc, q_w, tau);
}

} // namespace remon::estimation
