#include <doctest.h>

#include <algorithm>

#include "oracles.hpp"
#include "specvar/block_structure.hpp"
#include "specvar/error.hpp"
#include "specvar/matrix.hpp"
#include "specvar/random_matrices.hpp"

using namespace specvar;

namespace {

void check_witness(const ComplexMatrix& m, const BlockDecomposition& d) {
    CHECK(unitarity_residual(d.u) < 1e-10);
    int total = 0;
    for (int b : d.block_sizes) {
        CHECK(b >= 1);
        total += b;
    }
    CHECK(total == m.rows());
    CHECK(static_cast<int>(d.block_sizes.size()) == d.s);
    CHECK(offblock_norm(d.u.adjoint() * m * d.u, d.block_sizes) <= 1e-6 * m.norm());
}

} // namespace

TEST_CASE("commutant dimension of simple matrices") {
    // distinct diagonal: the commutant is the diagonal matrices
    ComplexMatrix d = ComplexMatrix::Zero(3, 3);
    d.diagonal() << 1.0, 2.0, Complex(0, 3);
    CHECK(commutant_basis(d, 1e-8).size() == 3);
    // scalar: everything commutes
    CHECK(commutant_basis(ComplexMatrix::Identity(3, 3) * 2.0, 1e-8).size() == 9);
    // Jordan block: only polynomials in J commute with J, and only the identity with J^* too
    CHECK(commutant_basis(oracle::jordan_block(1.0, 4), 1e-8).size() == 1);
}

TEST_CASE("commutant basis elements commute with M and M^*") {
    Rng rng = make_rng(31);
    const ComplexMatrix a = complex_gaussian(2, 2, rng);
    const ComplexMatrix b = complex_gaussian(3, 3, rng) + 5.0 * ComplexMatrix::Identity(3, 3);
    const ComplexMatrix u = random_unitary(5, rng);
    const ComplexMatrix m = u * oracle::block_diag({a, b}) * u.adjoint();
    const auto basis = commutant_basis(m, 1e-8);
    CHECK(basis.size() == 2);
    for (const auto& x : basis) {
        CHECK((m * x - x * m).norm() < 1e-10 * m.norm());
        CHECK((m.adjoint() * x - x * m.adjoint()).norm() < 1e-10 * m.norm());
    }
}

TEST_CASE("normal matrices split completely") {
    Rng rng = make_rng(32);
    for (int k = 0; k < 10; ++k) {
        const int n = 1 + k % 8;
        const ComplexMatrix m = random_normal_matrix(n, rng);
        const BlockDecomposition d = s_number(m, BlockOptions{}, 7);
        CHECK(d.s == n);
        check_witness(m, d);
    }
    // a repeated eigenvalue does not reduce s
    ComplexMatrix rep = ComplexMatrix::Zero(4, 4);
    rep.diagonal() << 1.0, 1.0, 2.0, 2.0;
    const ComplexMatrix u = random_unitary(4, rng);
    CHECK(s_number(u * rep * u.adjoint(), BlockOptions{}, 1).s == 4);
}

TEST_CASE("a Jordan block is unitarily irreducible") {
    Rng rng = make_rng(33);
    for (int size = 2; size <= 6; ++size) {
        const ComplexMatrix u = random_unitary(size, rng);
        const ComplexMatrix m = u * oracle::jordan_block(complex_gaussian_scalar(rng), size) * u.adjoint();
        CHECK(s_number(m, BlockOptions{}, 3).s == 1);
    }
}

TEST_CASE("constructed block diagonal matrices") {
    Rng rng = make_rng(34);
    for (int k = 1; k <= 4; ++k) {
        std::vector<ComplexMatrix> blocks;
        for (int i = 0; i < k; ++i) {
            const int size = 1 + (i + k) % 3;
            blocks.push_back(complex_gaussian(size, size, rng) + 10.0 * i * ComplexMatrix::Identity(size, size));
        }
        const ComplexMatrix b = oracle::block_diag(blocks);
        const ComplexMatrix u = random_unitary(b.rows(), rng);
        const ComplexMatrix m = u * b * u.adjoint();
        const BlockDecomposition d = s_number(m, BlockOptions{}, 5);
        CHECK(d.s == k);
        check_witness(m, d);

        std::vector<int> want, got = d.block_sizes;
        for (const auto& blk : blocks) {
            want.push_back(static_cast<int>(blk.rows()));
        }
        std::sort(want.begin(), want.end());
        std::sort(got.begin(), got.end());
        CHECK(got == want);
    }
}

TEST_CASE("two copies of the same irreducible block") {
    // A (+) A is unitarily similar to a direct sum of two copies; s = 2.
    Rng rng = make_rng(35);
    const ComplexMatrix a = complex_gaussian(2, 2, rng);
    const ComplexMatrix u = random_unitary(4, rng);
    const ComplexMatrix m = u * oracle::block_diag({a, a}) * u.adjoint();
    CHECK(s_number(m, BlockOptions{}, 9).s == 2);
}

TEST_CASE("s_number is deterministic in the seed") {
    Rng rng = make_rng(36);
    const ComplexMatrix m = random_normal_matrix(5, rng);
    const BlockDecomposition a = s_number(m, BlockOptions{}, 42);
    const BlockDecomposition b = s_number(m, BlockOptions{}, 42);
    CHECK(a.u == b.u);
    CHECK(a.block_sizes == b.block_sizes);
}

TEST_CASE("is_normal and offblock_norm") {
    Rng rng = make_rng(37);
    CHECK(is_normal(random_normal_matrix(4, rng), 1e-10));
    CHECK_FALSE(is_normal(oracle::jordan_block(1.0, 3), 1e-10));

    ComplexMatrix m = ComplexMatrix::Constant(3, 3, 1.0);
    CHECK(offblock_norm(m, {1, 2}) == doctest::Approx(2.0));
    CHECK(offblock_norm(m, {3}) == 0.0);
    CHECK_THROWS_AS(offblock_norm(m, {1, 1}), DimensionError);
}

TEST_CASE("size limit") {
    CHECK_THROWS_AS(commutant_basis(ComplexMatrix::Identity(kCommutantMaxSize + 1, kCommutantMaxSize + 1), 1e-8),
                    SizeLimitError);
}
