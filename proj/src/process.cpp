#include "remon/process.hpp"

#include <cmath>
#include <stdexcept>

namespace remon::process {

namespace {

void require_symmetric_psd(const Matrix& Q, const char* name) {
    const double scale = std::max(1.0, Q.cwiseAbs().maxCoeff());
    if ((Q - Q.transpose()).cwiseAbs().maxCoeff() > 1e-9 * scale) {
        throw std::invalid_argument(std::string(name) + " must be symmetric");
    }
    const linalg::Vector eigs = linalg::sym_eigenvalues(0.5 * (Q + Q.transpose()));
    if (eigs.minCoeff() < -1e-10 * scale) {
        throw std::invalid_argument(std::string(name) + " must be positive semidefinite");
    }
}

} // namespace

ProcessModel::ProcessModel(Matrix A, Matrix Q_u) : A_(std::move(A)), Qu_(std::move(Q_u)) {
    if (A_.rows() != A_.cols() || Qu_.rows() != Qu_.cols() || A_.rows() != Qu_.rows()) {
        throw std::invalid_argument("ProcessModel: A and Q_u must be square with equal dimension");
    }
    if (A_.rows() < 1 || A_.rows() > linalg::kMaxDim) {
        throw std::invalid_argument("ProcessModel: dimension must be in [1, 16]");
    }
    if (!A_.allFinite() || !Qu_.allFinite()) {
        throw std::invalid_argument("ProcessModel: entries must be finite");
    }
    if (!linalg::is_hurwitz(A_)) {
        throw std::invalid_argument("ProcessModel: unstable system (A is not Hurwitz)");
    }
    require_symmetric_psd(Qu_, "ProcessModel: Q_u");
    Qx_ = linalg::lyapunov_solve(A_, Qu_);
}

ProcessModel ProcessModel::scalar(double a, double q_u) {
    Matrix A(1, 1), Q(1, 1);
    A(0, 0) = a;
    Q(0, 0) = q_u;
    return ProcessModel(A, Q);
}

ScalarProcess::ScalarProcess(double a_, double q_u_) : a(a_), q_u(q_u_) {
    if (!(a < 0.0) || !std::isfinite(a)) {
        throw std::invalid_argument("ScalarProcess: a must be finite and < 0");
    }
    if (!(q_u > 0.0) || !std::isfinite(q_u)) {
        throw std::invalid_argument("ScalarProcess: q_u must be finite and > 0");
    }
}

Transition transition(const ProcessModel& m, double h) {
    if (!(h >= 0.0)) throw std::invalid_argument("transition: h must be >= 0");
    const Matrix Phi = linalg::mat_exp(m.A(), h);
    const Matrix& Qx = m.steady_covariance();
    Matrix Sigma = Qx - Phi * Qx * Phi.transpose();
    Sigma = 0.5 * (Sigma + Sigma.transpose());
    return {Phi, Sigma};
}

std::pair<double, double> transition(const ScalarProcess& p, double h) {
    if (!(h >= 0.0)) throw std::invalid_argument("transition: h must be >= 0");
    const double phi = std::exp(p.a * h);
    return {phi, p.q_x() * (1.0 - phi * phi)};
}

} // namespace remon::process
