#pragma once

#include <cstddef>
#include <vector>

#include "specvar/matrix.hpp"

namespace specvar {

/// Multiset of eigenvalues, stored sorted lexicographically by (re, im).
class Spectrum {
public:
    Spectrum() = default;
    explicit Spectrum(std::vector<Complex> values);

    const std::vector<Complex>& values() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }
    bool empty() const noexcept { return values_.empty(); }
    const Complex& operator[](std::size_t i) const { return values_[i]; }

    /// Every value shifted by `t` (spectrum of M + tI).
    Spectrum shifted(Complex t) const;

    friend bool operator==(const Spectrum&, const Spectrum&) = default;

private:
    std::vector<Complex> values_;
};

/// Lexicographic (re, im) order used for canonical storage.
bool canonical_less(const Complex& a, const Complex& b) noexcept;

/// Result of matching spectrum `a` against spectrum `b`.
/// `permutation[i]` is the zero-based index into `b` paired with `a[i]`.
struct Matching {
    std::vector<std::size_t> permutation;
    double d2 = 0.0;
    double d_inf = 0.0;
};

/// Eigenvalues with multiplicity via complex Schur (QR iteration).
/// Throws ConvergenceError if the iteration fails.
Spectrum eigenvalues(const ComplexMatrix& m);

/// Squared-distance cost matrix c(i, j) = |b_j - a_i|^2.
Eigen::MatrixXd matching_cost(const Spectrum& a, const Spectrum& b);

/// Evaluates d2 and d_inf for a given pairing.
Matching evaluate_matching(const Spectrum& a, const Spectrum& b, std::vector<std::size_t> permutation);

/// Optimal pairing minimising sum |b_pi(i) - a_i|^2, solved exactly as a
/// linear assignment problem (shortest augmenting paths with potentials).
/// Ties resolve towards the lowest column index.
Matching optimal_match(const Spectrum& a, const Spectrum& b);

/// Exhaustive minimum over all n! pairings; n <= 8.
Matching brute_force_match(const Spectrum& a, const Spectrum& b);

inline constexpr std::size_t kBruteForceMaxSize = 8;

} // namespace specvar
