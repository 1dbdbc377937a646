#pragma once

#include <utility>

#include "remon/linalg.hpp"

namespace remon::process {

using linalg::Matrix;

/// Stable linear diffusion dx = A x dt + dW, cov(dW) = Q_u dt.
/// Immutable after construction; the steady-state covariance
/// Q_x (solution of A Q_x + Q_x A^T + Q_u = 0) is computed once.
class ProcessModel {
  public:
    ProcessModel(Matrix A, Matrix Q_u);

    /// Convenience constructor for the one-dimensional case.
    static ProcessModel scalar(double a, double q_u);

    int dim() const { return static_cast<int>(A_.rows()); }
    const Matrix& A() const { return A_; }
    const Matrix& Q_u() const { return Qu_; }
    const Matrix& steady_covariance() const { return Qx_; }

  private:
    Matrix A_;
    Matrix Qu_;
    Matrix Qx_;
};

/// One-dimensional process with the closed-form steady variance.
struct ScalarProcess {
    double a;   // drift, must be < 0 (1/second)
    double q_u; // input noise intensity, > 0

    ScalarProcess(double a_, double q_u_);
    double q_x() const { return -q_u / (2.0 * a); }
};

/// Exact discretization over a step of h seconds:
/// x(t+h) = Phi x(t) + w,  cov(w) = Sigma = Q_x - Phi Q_x Phi^T.
struct Transition {
    Matrix Phi;
    Matrix Sigma;
};

Transition transition(const ProcessModel& m, double h);

/// Scalar counterpart: (phi, sigma) with sigma = q_x (1 - phi^2).
std::pair<double, double> transition(const ScalarProcess& p, double h);

} // namespace remon::process
