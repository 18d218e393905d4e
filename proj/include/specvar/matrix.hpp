#pragma once

#include <complex>
#include <limits>

#include <Eigen/Dense>

namespace specvar {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Unit roundoff of binary64.
inline constexpr double kUnitRoundoff = std::numeric_limits<double>::epsilon() / 2.0;

/// Diagonal, strictly lower and strictly upper parts of a square matrix.
/// The three parts add back to the source matrix exactly.
struct TriangularSplit {
    ComplexMatrix diagonal;
    ComplexMatrix strictly_lower;
    ComplexMatrix strictly_upper;
};

/// Throws NonFiniteError if any entry of `m` is NaN or Inf.
void require_finite(const ComplexMatrix& m, const char* what = "matrix");

/// Throws DimensionError unless `m` is square with n >= 1.
void require_square(const ComplexMatrix& m, const char* what = "matrix");

double frobenius_norm(const ComplexMatrix& m);

/// Largest singular value.
double spectral_norm(const ComplexMatrix& m);

Complex trace(const ComplexMatrix& m);

ComplexMatrix adjoint(const ComplexMatrix& m);

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);

/// Returns Q^{-1} B using an LU factorisation with partial pivoting.
ComplexMatrix solve(const ComplexMatrix& q, const ComplexMatrix& b);

/// Returns B Q^{-1}.
ComplexMatrix solve_right(const ComplexMatrix& b, const ComplexMatrix& q);

/// Trace-deflated Frobenius norm (||M||_F^2 - |tr M|^2 / n)^{1/2}.
///
/// Evaluated as ||M - (tr M / n) I||_F, which is exactly zero on scalar matrices.
double delta(const ComplexMatrix& m);

TriangularSplit split_dlu(const ComplexMatrix& m);

/// Spectral condition number sigma_max / sigma_min.
/// Throws SingularMatrixError when sigma_min <= n * u * sigma_max.
double kappa2(const ComplexMatrix& q);

/// ||U^* U - I||_F.
double unitarity_residual(const ComplexMatrix& u);

} // namespace specvar
