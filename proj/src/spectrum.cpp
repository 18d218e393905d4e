#include "specvar/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include <Eigen/Eigenvalues>

#include "specvar/error.hpp"

namespace specvar {

bool canonical_less(const Complex& a, const Complex& b) noexcept {
    if (a.real() != b.real()) {
        return a.real() < b.real();
    }
    return a.imag() < b.imag();
}

Spectrum::Spectrum(std::vector<Complex> values) : values_(std::move(values)) {
    std::sort(values_.begin(), values_.end(), canonical_less);
}

Spectrum Spectrum::shifted(Complex t) const {
    std::vector<Complex> out = values_;
    for (auto& v : out) {
        v += t;
    }
    return Spectrum(std::move(out));
}

Spectrum eigenvalues(const ComplexMatrix& m) {
    require_square(m, "eigenvalues");
    require_finite(m, "eigenvalues");
    Eigen::ComplexEigenSolver<ComplexMatrix> solver(m, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success) {
        throw ConvergenceError("eigenvalues: QR iteration failed to converge for n = " +
                               std::to_string(m.rows()));
    }
    const auto& ev = solver.eigenvalues();
    std::vector<Complex> values(ev.data(), ev.data() + ev.size());
    for (const auto& v : values) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
            throw ConvergenceError("eigenvalues: non-finite eigenvalue returned");
        }
    }
    return Spectrum(std::move(values));
}

Eigen::MatrixXd matching_cost(const Spectrum& a, const Spectrum& b) {
    if (a.size() != b.size()) {
        throw DimensionError("matching: spectra have different sizes (" + std::to_string(a.size()) + " vs " +
                             std::to_string(b.size()) + ")");
    }
    const auto n = static_cast<Eigen::Index>(a.size());
    Eigen::MatrixXd cost(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            cost(i, j) = std::norm(b[static_cast<std::size_t>(j)] - a[static_cast<std::size_t>(i)]);
        }
    }
    return cost;
}

Matching evaluate_matching(const Spectrum& a, const Spectrum& b, std::vector<std::size_t> permutation) {
    if (a.size() != b.size() || permutation.size() != a.size()) {
        throw DimensionError("evaluate_matching: size mismatch");
    }
    Matching out;
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double dist = std::abs(b[permutation[i]] - a[i]);
        sum += dist * dist;
        out.d_inf = std::max(out.d_inf, dist);
    }
    out.d2 = std::sqrt(sum);
    out.permutation = std::move(permutation);
    return out;
}

Matching optimal_match(const Spectrum& a, const Spectrum& b) {
    const Eigen::MatrixXd cost = matching_cost(a, b);
    const std::size_t n = a.size();
    if (n == 0) {
        throw DimensionError("optimal_match: empty spectra");
    }
    // Shortest augmenting path assignment with row/column potentials, 1-based
    // with a virtual column 0 holding the row being inserted.
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
    std::vector<std::size_t> row_of(n + 1, 0), way(n + 1, 0);
    for (std::size_t i = 1; i <= n; ++i) {
        row_of[0] = i;
        std::size_t j0 = 0;
        std::vector<double> minv(n + 1, inf);
        std::vector<char> used(n + 1, 0);
        do {
            used[j0] = 1;
            const std::size_t i0 = row_of[j0];
            double step = inf;
            std::size_t j1 = 0;
            for (std::size_t j = 1; j <= n; ++j) {
                if (used[j]) {
                    continue;
                }
                const double cur = cost(static_cast<Eigen::Index>(i0 - 1), static_cast<Eigen::Index>(j - 1)) -
                                   u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < step) {
                    step = minv[j];
                    j1 = j;
                }
            }
            for (std::size_t j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[row_of[j]] += step;
                    v[j] -= step;
                } else {
                    minv[j] -= step;
                }
            }
            j0 = j1;
        } while (row_of[j0] != 0);
        do {
            const std::size_t j1 = way[j0];
            row_of[j0] = row_of[j1];
            j0 = j1;
        } while (j0 != 0);
    }
    std::vector<std::size_t> perm(n);
    for (std::size_t j = 1; j <= n; ++j) {
        perm[row_of[j] - 1] = j - 1;
    }
    return evaluate_matching(a, b, std::move(perm));
}

Matching brute_force_match(const Spectrum& a, const Spectrum& b) {
    if (a.size() != b.size()) {
        throw DimensionError("brute_force_match: spectra have different sizes");
    }
    if (a.size() > kBruteForceMaxSize) {
        throw SizeLimitError("brute_force_match: n = " + std::to_string(a.size()) + " exceeds limit " +
                             std::to_string(kBruteForceMaxSize));
    }
    if (a.empty()) {
        throw DimensionError("brute_force_match: empty spectra");
    }
    const Eigen::MatrixXd cost = matching_cost(a, b);
    std::vector<std::size_t> perm(a.size());
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::vector<std::size_t> best = perm;
    double best_cost = std::numeric_limits<double>::infinity();
    do {
        double c = 0.0;
        for (std::size_t i = 0; i < perm.size(); ++i) {
            c += cost(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(perm[i]));
        }
        if (c < best_cost) {
            best_cost = c;
            best = perm;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return evaluate_matching(a, b, std::move(best));
}

} // namespace specvar
