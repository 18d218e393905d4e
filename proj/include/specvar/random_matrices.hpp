#pragma once

#include <cstdint>
#include <random>

#include "specvar/matrix.hpp"

namespace specvar {

using Rng = std::mt19937_64;

/// Generator seeded from a (seed, stream) pair through std::seed_seq.
Rng make_rng(std::uint64_t seed, std::uint64_t stream = 0);

/// Entries i.i.d. with independent standard normal real and imaginary parts.
ComplexMatrix complex_gaussian(Eigen::Index rows, Eigen::Index cols, Rng& rng);

Complex complex_gaussian_scalar(Rng& rng);

/// Haar-distributed unitary (QR of a complex Gaussian with phase fix-up).
ComplexMatrix random_unitary(Eigen::Index n, Rng& rng);

/// U diag(sigma) V^* with sigma_max / sigma_min = target_kappa.
/// Extreme singular values are pinned to target_kappa and 1; the interior
/// ones are log-uniform between them. For n = 1 the result is a unit scalar.
ComplexMatrix conditioned_matrix(Eigen::Index n, double target_kappa, Rng& rng);

/// U diag(lambda) U^* with complex Gaussian eigenvalues.
ComplexMatrix random_normal_matrix(Eigen::Index n, Rng& rng);

ComplexMatrix random_hermitian(Eigen::Index n, Rng& rng);

} // namespace specvar
