#pragma once

// Reference computations for the tests. Each one is written out directly from
// its definition and shares no code path with the library routine it checks.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

inline double frobenius_sq(const Matrix& m) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            s += std::norm(m(i, j));
        }
    }
    return s;
}

inline Complex trace(const Matrix& m) {
    Complex t = 0.0;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        t += m(i, i);
    }
    return t;
}

// Textbook formula, clamped.
inline double delta(const Matrix& m) {
    const double r = frobenius_sq(m) - std::norm(trace(m)) / static_cast<double>(m.rows());
    return std::sqrt(std::max(r, 0.0));
}

// sqrt of the extreme eigenvalues of M^* M.
inline double sigma_max(const Matrix& m) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(m.adjoint() * m);
    return std::sqrt(std::max(es.eigenvalues().maxCoeff(), 0.0));
}

inline double kappa2(const Matrix& m) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(m.adjoint() * m);
    return std::sqrt(es.eigenvalues().maxCoeff() / es.eigenvalues().minCoeff());
}

// Min over all permutations of sum |b_pi(i) - a_i|^2, square-rooted.
inline double d2_brute(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    std::vector<int> perm(a.size());
    std::iota(perm.begin(), perm.end(), 0);
    double best = std::numeric_limits<double>::infinity();
    do {
        double s = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            s += std::norm(b[static_cast<std::size_t>(perm[i])] - a[i]);
        }
        best = std::min(best, s);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return std::sqrt(best);
}

// Jordan block J_k(lambda).
inline Matrix jordan_block(Complex lambda, int k) {
    Matrix j = Matrix::Zero(k, k);
    for (int i = 0; i < k; ++i) {
        j(i, i) = lambda;
        if (i + 1 < k) {
            j(i, i + 1) = 1.0;
        }
    }
    return j;
}

inline Matrix block_diag(const std::vector<Matrix>& blocks) {
    Eigen::Index n = 0;
    for (const auto& b : blocks) {
        n += b.rows();
    }
    Matrix out = Matrix::Zero(n, n);
    Eigen::Index off = 0;
    for (const auto& b : blocks) {
        out.block(off, off, b.rows(), b.cols()) = b;
        off += b.rows();
    }
    return out;
}

// Bounds written out term by term from their statements.

inline double song(int n, int p, int m, double nq) {
    const double c = std::sqrt(static_cast<double>(n)) * (std::sqrt(static_cast<double>(n - p)) + 1.0);
    return nq < 1.0 ? c * std::pow(nq, 1.0 / m) : c * nq;
}

inline double li_chen(int n, int p, int m, double nq, int s1, int s2) {
    const double r = n - p;
    if (nq < 1.0) {
        return std::sqrt(s1 * (r + 1.0 + 2.0 * std::sqrt(r) * nq)) * std::pow(nq, 1.0 / m);
    }
    return std::sqrt(s2 * (r + 2.0 * std::sqrt(r) + nq) * nq);
}

// UP1_1 (c = n), UP2_1 (c = s1, c_large = s2), UP3_1 (c = 2).
inline double up_1(int n, int p, int m, double nq, double dq, double abs_tr, double c, double c_large) {
    const double r = n - p;
    const double tt = abs_tr * abs_tr / n;
    if (nq < 1.0) {
        return std::sqrt(c * (r + 2.0 * std::sqrt(r) * dq + dq * dq / (nq * nq)) * std::pow(nq, 2.0 / m) + tt);
    }
    return std::sqrt(c_large * std::pow(std::sqrt(r) + dq, 2) + tt);
}

inline double up_2(int n, int p, int m, double dq, double abs_tr, double c, double c_large) {
    const double r = n - p;
    const double tt = abs_tr * abs_tr / n;
    if (dq < 1.0) {
        return std::sqrt(c * (r + 2.0 * std::sqrt(r) * dq + 1.0) * std::pow(dq, 2.0 / m) + tt);
    }
    return std::sqrt(c_large * std::pow(std::sqrt(r) + dq, 2) + tt);
}

inline double up_3(int n, int p, int m, double dq, double abs_tr, double c, double c_large) {
    const double r = n - p;
    const double tt = abs_tr * abs_tr / n;
    if (m >= 2 && r + 2.0 * std::sqrt(r) * dq > (m - 1) * dq * dq) {
        return std::sqrt(m * c * std::pow((r + 2.0 * std::sqrt(r) * dq) / (m - 1), (m - 1.0) / m) *
                             std::pow(dq, 2.0 / m) +
                         tt);
    }
    return std::sqrt(c_large * std::pow(std::sqrt(r) + dq, 2) + tt);
}

} // namespace oracle
