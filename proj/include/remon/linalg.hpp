#pragma once

#include <Eigen/Dense>
#include <functional>

namespace remon::linalg {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Dense kernels are sized for small state dimensions only.
inline constexpr int kMaxDim = 16;

/// Matrix exponential e^{At}. Returns the identity exactly for t = 0.
Matrix mat_exp(const Matrix& A, double t);

/// Solves A X + X A^T + Q = 0 via Kronecker vectorization.
/// Requires every eigenvalue of A to have a strictly negative real part.
Matrix lyapunov_solve(const Matrix& A, const Matrix& Q);

/// Eigenvalues of a symmetric matrix, ascending.
Vector sym_eigenvalues(const Matrix& M);

/// True iff all eigenvalues of A have strictly negative real parts.
bool is_hurwitz(const Matrix& A);

/// Adaptive Gauss-Kronrod (7,15) integration of f over [lo, hi] with an
/// absolute-error target. Throws on non-convergence.
double quadrature(const std::function<double(double)>& f, double lo, double hi,
                  double tol = 1e-10);

} // namespace remon::linalg
