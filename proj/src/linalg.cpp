#include "remon/linalg.hpp"

#include <cmath>
#include <stdexcept>

#include <unsupported/Eigen/MatrixFunctions>

#include "remon/errors.hpp"

namespace remon::linalg {

namespace {

void require_square(const Matrix& A, const char* who) {
    if (A.rows() != A.cols() || A.rows() < 1) {
        throw std::invalid_argument(std::string(who) + ": matrix must be square and non-empty");
    }
    if (A.rows() > kMaxDim) {
        throw std::invalid_argument(std::string(who) + ": dimension exceeds the supported maximum of 16");
    }
    if (!A.allFinite()) {
        throw std::invalid_argument(std::string(who) + ": matrix entries must be finite");
    }
}

} // namespace

Matrix mat_exp(const Matrix& A, double t) {
    require_square(A, "mat_exp");
    if (!std::isfinite(t)) throw std::invalid_argument("mat_exp: t must be finite");
    const auto n = A.rows();
    if (t == 0.0) return Matrix::Identity(n, n);
    if (n == 1) {
        Matrix E(1, 1);
        E(0, 0) = std::exp(A(0, 0) * t);
        return E;
    }
    return Matrix((A * t).exp());
}

bool is_hurwitz(const Matrix& A) {
    require_square(A, "is_hurwitz");
    Eigen::EigenSolver<Matrix> es(A, /*computeEigenvectors=*/false);
    return (es.eigenvalues().real().array() < 0.0).all();
}

Matrix lyapunov_solve(const Matrix& A, const Matrix& Q) {
    require_square(A, "lyapunov_solve");
    require_square(Q, "lyapunov_solve");
    if (A.rows() != Q.rows()) {
        throw std::invalid_argument("lyapunov_solve: A and Q dimensions differ");
    }
    if (!is_hurwitz(A)) {
        throw std::invalid_argument("lyapunov_solve: unstable system (A is not Hurwitz)");
    }
    const auto n = A.rows();
    // vec(AX + XA^T) = (I (x) A + A (x) I) vec(X)
    Matrix K = Matrix::Zero(n * n, n * n);
    const Matrix I = Matrix::Identity(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            K.block(i * n, j * n, n, n) = I(i, j) * A + A(i, j) * I;
        }
    }
    Eigen::VectorXd q(n * n);
    for (Eigen::Index col = 0; col < n; ++col) q.segment(col * n, n) = Q.col(col);
    Eigen::VectorXd x = K.partialPivLu().solve(-q);
    Matrix X(n, n);
    for (Eigen::Index col = 0; col < n; ++col) X.col(col) = x.segment(col * n, n);
    return Matrix(0.5 * (X + X.transpose()));
}

Vector sym_eigenvalues(const Matrix& M) {
    require_square(M, "sym_eigenvalues");
    Eigen::SelfAdjointEigenSolver<Matrix> es(M, Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

namespace {

// Gauss-Kronrod (7,15) nodes and weights on [-1, 1] (positive half).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct GkResult {
    double kronrod;
    double err;
};

GkResult gk15(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double gauss = fc * kWg[3];
    double kron = fc * kWgk[7];
    for (int i = 0; i < 7; ++i) {
        const double dx = h * kXgk[i];
        const double fsum = f(c - dx) + f(c + dx);
        kron += kWgk[i] * fsum;
        if (i % 2 == 1) gauss += kWg[i / 2] * fsum;
    }
    kron *= h;
    gauss *= h;
    if (!std::isfinite(kron)) {
        throw std::invalid_argument("quadrature: integrand is not finite on the interval");
    }
    return {kron, std::abs(kron - gauss)};
}

double adapt(const std::function<double(double)>& f, double a, double b, double tol,
             int depth, long& budget) {
    if (--budget < 0) throw std::runtime_error("quadrature failure: subdivision budget exhausted");
    const GkResult r = gk15(f, a, b);
    if (r.err <= tol || b - a <= 1e-14 * (std::abs(a) + std::abs(b))) {
        if (r.err > tol && depth <= 0) {
            throw std::runtime_error("quadrature failure: interval too small to refine");
        }
        return r.kronrod;
    }
    if (depth <= 0) throw std::runtime_error("quadrature failure: max depth reached");
    const double m = 0.5 * (a + b);
    return adapt(f, a, m, 0.5 * tol, depth - 1, budget) +
           adapt(f, m, b, 0.5 * tol, depth - 1, budget);
}

} // namespace

double quadrature(const std::function<double(double)>& f, double lo, double hi, double tol) {
    if (!(std::isfinite(lo) && std::isfinite(hi)) || lo > hi) {
        throw std::invalid_argument("quadrature: requires finite lo <= hi");
    }
    if (!(tol > 0.0)) throw std::invalid_argument("quadrature: tol must be positive");
    if (lo == hi) return 0.0;
    long budget = 1'000'000;
    return adapt(f, lo, hi, tol, 60, budget);
}

} // namespace remon::linalg
