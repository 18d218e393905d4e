#pragma once

#include <cstdint>
#include <vector>

#include "specvar/matrix.hpp"

namespace specvar {

/// Unitary U with U^* M U block diagonal; block sizes in column order of U.
struct BlockDecomposition {
    ComplexMatrix u;
    std::vector<int> block_sizes;
    int s = 0;
    /// ||offblock(U^* M U)||_F at the returned grouping.
    double offblock_residual = 0.0;
};

/// Tolerances for the unitary block-structure search. All are relative.
struct BlockOptions {
    /// Null-space cutoff: singular values <= tol * sigma_max are treated as zero.
    double tol = 1e-8;
    /// Eigenvalues of the random commutant element closer than gap_tol * ||H||_2 share a cluster.
    double gap_tol = 1e-6;
    /// Maximum off-block residual, relative to ||M||_F, tolerated after merging.
    double block_tol = 1e-6;
    /// Number of independently seeded draws that must agree on s.
    int draws = 3;
};

/// Largest n accepted by commutant_basis (the stacked operator is 2n^2 x n^2).
inline constexpr Eigen::Index kCommutantMaxSize = 40;

/// Orthonormal (Frobenius inner product) basis of {X : MX = XM, M^*X = XM^*}.
std::vector<ComplexMatrix> commutant_basis(const ComplexMatrix& m, double tol);

/// Maximal number of diagonal blocks reachable by a unitary similarity of M,
/// with a witnessing unitary.
///
/// A random Hermitian element of the commutant of {M, M^*} is
/// eigendecomposed; its eigenspaces are the minimal reducing subspaces of M
/// with probability one over the draw. Clusters that still couple in U^* M U
/// are merged. Throws AmbiguityError when independent draws disagree on s.
BlockDecomposition s_number(const ComplexMatrix& m, const BlockOptions& options, std::uint64_t seed);

BlockDecomposition s_number(const ComplexMatrix& m, double tol, std::uint64_t seed);

/// ||MM^* - M^*M||_F <= tol * ||M||_F^2.
bool is_normal(const ComplexMatrix& m, double tol);

/// Frobenius norm of M with the diagonal blocks given by `block_sizes` zeroed.
double offblock_norm(const ComplexMatrix& m, const std::vector<int>& block_sizes);

} // namespace specvar
