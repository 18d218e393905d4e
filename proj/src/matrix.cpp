#include "specvar/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "specvar/error.hpp"

namespace specvar {

namespace {

void require_same_rows(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
    if (a.rows() != b.rows()) {
        throw DimensionError(std::string(op) + ": row count mismatch (" + std::to_string(a.rows()) +
                             " vs " + std::to_string(b.rows()) + ")");
    }
}

Eigen::VectorXd singular_values(const ComplexMatrix& m) {
    Eigen::JacobiSVD<ComplexMatrix> svd(m);
    return svd.singularValues();
}

} // namespace

void require_finite(const ComplexMatrix& m, const char* what) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            const Complex z = m(i, j);
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
                throw NonFiniteError(std::string(what) + ": non-finite entry at (" + std::to_string(i) +
                                     ", " + std::to_string(j) + ")");
            }
        }
    }
}

void require_square(const ComplexMatrix& m, const char* what) {
    if (m.rows() != m.cols() || m.rows() < 1) {
        throw DimensionError(std::string(what) + ": expected a nonempty square matrix, got " +
                             std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    }
}

double frobenius_norm(const ComplexMatrix& m) {
    return m.norm();
}

double spectral_norm(const ComplexMatrix& m) {
    if (m.size() == 0) {
        return 0.0;
    }
    require_finite(m, "spectral_norm");
    return singular_values(m)(0);
}

Complex trace(const ComplexMatrix& m) {
    require_square(m, "trace");
    return m.trace();
}

ComplexMatrix adjoint(const ComplexMatrix& m) {
    return m.adjoint();
}

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) {
        throw DimensionError("matmul: inner dimensions differ (" + std::to_string(a.cols()) + " vs " +
                             std::to_string(b.rows()) + ")");
    }
    return a * b;
}

ComplexMatrix solve(const ComplexMatrix& q, const ComplexMatrix& b) {
    require_square(q, "solve");
    require_same_rows(q, b, "solve");
    require_finite(q, "solve");
    Eigen::PartialPivLU<ComplexMatrix> lu(q);
    const double n = static_cast<double>(q.rows());
    // rcond() is an estimate; only reject when it is clearly at roundoff level.
    if (!(lu.rcond() > n * kUnitRoundoff)) {
        throw SingularMatrixError("solve: matrix is singular to working precision (rcond = " +
                                  std::to_string(lu.rcond()) + ")");
    }
    return lu.solve(b);
}

ComplexMatrix solve_right(const ComplexMatrix& b, const ComplexMatrix& q) {
    if (b.cols() != q.rows()) {
        throw DimensionError("solve_right: column count mismatch");
    }
    return solve(q.adjoint(), b.adjoint()).adjoint();
}

double delta(const ComplexMatrix& m) {
    require_square(m, "delta");
    require_finite(m, "delta");
    // ||M||_F^2 - |tr M|^2 / n = ||M - (tr M / n) I||_F^2, summed without cancellation.
    const Eigen::Index n = m.rows();
    const Complex d0 = m(0, 0);
    Complex shift(0.0, 0.0);
    for (Eigen::Index i = 1; i < n; ++i) {
        shift += m(i, i) - d0;
    }
    const Complex mean = d0 + shift / static_cast<double>(n);
    double sum = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index i = 0; i < n; ++i) {
            sum += std::norm(i == j ? m(i, i) - mean : m(i, j));
        }
    }
    return std::sqrt(std::max(sum, 0.0));
}

TriangularSplit split_dlu(const ComplexMatrix& m) {
    require_square(m, "split_dlu");
    require_finite(m, "split_dlu");
    TriangularSplit out;
    out.diagonal = m.diagonal().asDiagonal();
    out.strictly_lower = m.triangularView<Eigen::StrictlyLower>();
    out.strictly_upper = m.triangularView<Eigen::StrictlyUpper>();
    return out;
}

double kappa2(const ComplexMatrix& q) {
    require_square(q, "kappa2");
    require_finite(q, "kappa2");
    const Eigen::VectorXd sv = singular_values(q);
    const double smax = sv(0);
    const double smin = sv(sv.size() - 1);
    const double n = static_cast<double>(q.rows());
    if (!(smin > n * kUnitRoundoff * smax)) {
        throw SingularMatrixError("kappa2: matrix is numerically singular (sigma_min = " +
                                  std::to_string(smin) + ", sigma_max = " + std::to_string(smax) + ")");
    }
    return smax / smin;
}

double unitarity_residual(const ComplexMatrix& u) {
    const auto n = u.cols();
    return (u.adjoint() * u - ComplexMatrix::Identity(n, n)).norm();
}

} // namespace specvar
