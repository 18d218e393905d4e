#include "specvar/block_structure.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "specvar/error.hpp"
#include "specvar/random_matrices.hpp"

namespace specvar {

namespace {

// Writes (A kron B) * scale into the block of `out` starting at (row0, 0), accumulating.
void add_kron(ComplexMatrix& out, Eigen::Index row0, const ComplexMatrix& a, const ComplexMatrix& b,
              Complex scale) {
    const Eigen::Index rb = b.rows();
    const Eigen::Index cb = b.cols();
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            const Complex aij = a(i, j) * scale;
            if (aij == Complex{}) {
                continue;
            }
            out.block(row0 + i * rb, j * cb, rb, cb) += aij * b;
        }
    }
}

struct Cluster {
    std::vector<Eigen::Index> columns;
};

BlockDecomposition decompose_with_draw(const ComplexMatrix& m, const std::vector<ComplexMatrix>& basis,
                                       const BlockOptions& options, Rng& rng) {
    const Eigen::Index n = m.rows();
    std::normal_distribution<double> normal(0.0, 1.0);
    ComplexMatrix h = ComplexMatrix::Zero(n, n);
    for (const auto& b : basis) {
        h += normal(rng) * (b + b.adjoint()) / 2.0;
    }
    h = (h + h.adjoint()) / 2.0;

    Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(h);
    if (eig.info() != Eigen::Success) {
        throw ConvergenceError("s_number: Hermitian eigensolver failed");
    }
    const Eigen::VectorXd& evals = eig.eigenvalues();
    const ComplexMatrix& evecs = eig.eigenvectors();
    const double h_norm = std::max(std::abs(evals(0)), std::abs(evals(n - 1)));
    const double gap = options.gap_tol * h_norm;

    std::vector<Cluster> clusters;
    clusters.push_back({{0}});
    for (Eigen::Index k = 1; k < n; ++k) {
        if (h_norm > 0.0 && evals(k) - evals(k - 1) > gap) {
            clusters.push_back({});
        }
        clusters.back().columns.push_back(k);
    }

    // Pairwise coupling ||B_ab||_F^2 + ||B_ba||_F^2 between clusters in U^* M U.
    const ComplexMatrix b = evecs.adjoint() * m * evecs;
    const std::size_t c = clusters.size();
    Eigen::MatrixXd coupling = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(c));
    for (std::size_t x = 0; x < c; ++x) {
        for (std::size_t y = 0; y < c; ++y) {
            if (x == y) {
                continue;
            }
            double sum = 0.0;
            for (auto i : clusters[x].columns) {
                for (auto j : clusters[y].columns) {
                    sum += std::norm(b(i, j));
                }
            }
            coupling(static_cast<Eigen::Index>(std::min(x, y)), static_cast<Eigen::Index>(std::max(x, y))) += sum;
        }
    }

    // Merge the most strongly coupled pair of groups until the total residual is in tolerance.
    std::vector<std::size_t> group(c);
    std::iota(group.begin(), group.end(), std::size_t{0});
    const double limit = options.block_tol * m.norm();
    auto residual_sq = [&] {
        double total = 0.0;
        for (std::size_t x = 0; x < c; ++x) {
            for (std::size_t y = x + 1; y < c; ++y) {
                if (group[x] != group[y]) {
                    total += coupling(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y));
                }
            }
        }
        return total;
    };
    while (residual_sq() > limit * limit) {
        std::size_t gx = 0, gy = 0;
        double worst = -1.0;
        for (std::size_t x = 0; x < c; ++x) {
            for (std::size_t y = 0; y < c; ++y) {
                if (group[x] == group[y]) {
                    continue;
                }
                const double w = coupling(static_cast<Eigen::Index>(std::min(x, y)),
                                          static_cast<Eigen::Index>(std::max(x, y)));
                if (w > worst) {
                    worst = w;
                    gx = group[x];
                    gy = group[y];
                }
            }
        }
        const std::size_t keep = std::min(gx, gy);
        const std::size_t drop = std::max(gx, gy);
        for (auto& g : group) {
            if (g == drop) {
                g = keep;
            }
        }
    }

    // Groups in order of their first cluster, columns within a group in eigenvalue order.
    std::vector<std::size_t> order;
    for (std::size_t x = 0; x < c; ++x) {
        if (std::find(order.begin(), order.end(), group[x]) == order.end()) {
            order.push_back(group[x]);
        }
    }
    BlockDecomposition out;
    out.u.resize(n, n);
    Eigen::Index col = 0;
    for (auto g : order) {
        int size = 0;
        for (std::size_t x = 0; x < c; ++x) {
            if (group[x] != g) {
                continue;
            }
            for (auto k : clusters[x].columns) {
                out.u.col(col++) = evecs.col(k);
                ++size;
            }
        }
        out.block_sizes.push_back(size);
    }
    out.s = static_cast<int>(out.block_sizes.size());
    out.offblock_residual = offblock_norm(out.u.adjoint() * m * out.u, out.block_sizes);
    return out;
}

} // namespace

std::vector<ComplexMatrix> commutant_basis(const ComplexMatrix& m, double tol) {
    require_square(m, "commutant_basis");
    require_finite(m, "commutant_basis");
    const Eigen::Index n = m.rows();
    if (n > kCommutantMaxSize) {
        throw SizeLimitError("commutant_basis: n = " + std::to_string(n) + " exceeds limit " +
                             std::to_string(kCommutantMaxSize));
    }
    const Eigen::Index n2 = n * n;
    const ComplexMatrix id = ComplexMatrix::Identity(n, n);
    const ComplexMatrix m_star = m.adjoint();

    // Column-major vec: vec(MX) = (I kron M) vec X, vec(XM) = (M^T kron I) vec X.
    ComplexMatrix op = ComplexMatrix::Zero(2 * n2, n2);
    add_kron(op, 0, id, m, 1.0);
    add_kron(op, 0, m.transpose(), id, -1.0);
    add_kron(op, n2, id, m_star, 1.0);
    add_kron(op, n2, m_star.transpose(), id, -1.0);

    std::vector<ComplexMatrix> basis;
    Eigen::BDCSVD<ComplexMatrix> svd(op, Eigen::ComputeThinV);
    const Eigen::VectorXd& sv = svd.singularValues();
    const double cutoff = tol * sv(0);
    const ComplexMatrix& v = svd.matrixV();
    for (Eigen::Index k = 0; k < n2; ++k) {
        if (sv(k) <= cutoff) {
            ComplexVector x = v.col(k);
            basis.emplace_back(Eigen::Map<const ComplexMatrix>(x.data(), n, n));
        }
    }
    return basis;
}

BlockDecomposition s_number(const ComplexMatrix& m, const BlockOptions& options, std::uint64_t seed) {
    require_square(m, "s_number");
    if (options.draws < 1) {
        throw DomainError("s_number: at least one draw is required");
    }
    const std::vector<ComplexMatrix> basis = commutant_basis(m, options.tol);
    std::optional<BlockDecomposition> first;
    for (int draw = 0; draw < options.draws; ++draw) {
        Rng rng = make_rng(seed, static_cast<std::uint64_t>(draw));
        BlockDecomposition dec = decompose_with_draw(m, basis, options, rng);
        if (!first) {
            first = std::move(dec);
        } else if (dec.s != first->s) {
            throw AmbiguityError("s_number: block count differs across random draws (" + std::to_string(first->s) +
                                     " vs " + std::to_string(dec.s) + ")",
                                 first->s, dec.s);
        }
    }
    return *first;
}

BlockDecomposition s_number(const ComplexMatrix& m, double tol, std::uint64_t seed) {
    BlockOptions options;
    options.tol = tol;
    return s_number(m, options, seed);
}

bool is_normal(const ComplexMatrix& m, double tol) {
    require_square(m, "is_normal");
    const ComplexMatrix comm = m * m.adjoint() - m.adjoint() * m;
    return comm.norm() <= tol * m.squaredNorm();
}

double offblock_norm(const ComplexMatrix& m, const std::vector<int>& block_sizes) {
    ComplexMatrix rest = m;
    Eigen::Index start = 0;
    for (int size : block_sizes) {
        if (start + size > m.rows()) {
            throw DimensionError("offblock_norm: block sizes exceed matrix dimension");
        }
        rest.block(start, start, size, size).setZero();
        start += size;
    }
    if (start != m.rows()) {
        throw DimensionError("offblock_norm: block sizes do not sum to the matrix dimension");
    }
    return rest.norm();
}

} // namespace specvar
