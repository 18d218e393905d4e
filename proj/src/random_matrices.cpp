#include "specvar/random_matrices.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "specvar/error.hpp"

namespace specvar {

Rng make_rng(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    return Rng(seq);
}

Complex complex_gaussian_scalar(Rng& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    const double re = normal(rng);
    const double im = normal(rng);
    return {re, im};
}

ComplexMatrix complex_gaussian(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
    ComplexMatrix m(rows, cols);
    // Fill row-major so the draw order does not depend on storage layout.
    for (Eigen::Index i = 0; i < rows; ++i) {
        for (Eigen::Index j = 0; j < cols; ++j) {
            m(i, j) = complex_gaussian_scalar(rng);
        }
    }
    return m;
}

ComplexMatrix random_unitary(Eigen::Index n, Rng& rng) {
    const ComplexMatrix g = complex_gaussian(n, n, rng);
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(n, n);
    const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index k = 0; k < n; ++k) {
        const Complex d = r(k, k);
        const double mag = std::abs(d);
        if (mag > 0.0) {
            q.col(k) *= d / mag;
        }
    }
    return q;
}

ComplexMatrix conditioned_matrix(Eigen::Index n, double target_kappa, Rng& rng) {
    if (!(target_kappa >= 1.0) || !std::isfinite(target_kappa)) {
        throw DomainError("conditioned_matrix: target_kappa must be a finite value >= 1");
    }
    const ComplexMatrix u = random_unitary(n, rng);
    const ComplexMatrix v = random_unitary(n, rng);
    if (n == 1) {
        return u;
    }
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double log_k = std::log(target_kappa);
    std::vector<double> sigma(static_cast<std::size_t>(n));
    sigma.front() = target_kappa;
    sigma.back() = 1.0;
    for (std::size_t k = 1; k + 1 < sigma.size(); ++k) {
        sigma[k] = std::exp(log_k * unit(rng));
    }
    std::sort(sigma.begin(), sigma.end(), std::greater<>());
    Eigen::VectorXcd diag(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        diag(k) = sigma[static_cast<std::size_t>(k)];
    }
    return u * diag.asDiagonal() * v.adjoint();
}

ComplexMatrix random_normal_matrix(Eigen::Index n, Rng& rng) {
    const ComplexMatrix u = random_unitary(n, rng);
    Eigen::VectorXcd lambda(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        lambda(k) = complex_gaussian_scalar(rng);
    }
    return u * lambda.asDiagonal() * u.adjoint();
}

ComplexMatrix random_hermitian(Eigen::Index n, Rng& rng) {
    const ComplexMatrix g = complex_gaussian(n, n, rng);
    return (g + g.adjoint()) / 2.0;
}

} // namespace specvar
