#include <doctest.h>

#include <cmath>
#include <limits>

#include "oracles.hpp"
#include "specvar/error.hpp"
#include "specvar/matrix.hpp"
#include "specvar/random_matrices.hpp"

using namespace specvar;

namespace {

ComplexMatrix two_by_two() {
    ComplexMatrix m(2, 2);
    m << 1.0, 2.0, 3.0, 4.0;
    return m;
}

} // namespace

TEST_CASE("frobenius norm and trace of a hand example") {
    const ComplexMatrix m = two_by_two();
    CHECK(frobenius_norm(m) == doctest::Approx(std::sqrt(30.0)).epsilon(1e-15));
    CHECK(trace(m) == Complex(5.0, 0.0));
}

TEST_CASE("delta of a hand example") {
    // 30 - 25/2
    CHECK(delta(two_by_two()) == doctest::Approx(std::sqrt(17.5)).epsilon(1e-15));

    ComplexMatrix z(2, 2);
    z << Complex(0, 1), 0.0, 0.0, Complex(0, -1);
    // ||Z||^2 = 2, tr = 0
    CHECK(delta(z) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
}

TEST_CASE("delta vanishes exactly on scalar matrices") {
    Rng rng = make_rng(11);
    for (int k = 0; k < 50; ++k) {
        const Complex mu = complex_gaussian_scalar(rng) * 100.0;
        const int n = 1 + k % 9;
        CHECK(delta(ComplexMatrix::Identity(n, n) * mu) == 0.0);
    }
}

TEST_CASE("delta agrees with the textbook formula") {
    Rng rng = make_rng(12);
    for (int k = 0; k < 100; ++k) {
        const ComplexMatrix m = complex_gaussian(1 + k % 8, 1 + k % 8, rng);
        CHECK(delta(m) == doctest::Approx(oracle::delta(m)).epsilon(1e-12));
    }
}

TEST_CASE("delta is invariant under unitary similarity and shifts") {
    Rng rng = make_rng(13);
    for (int k = 0; k < 20; ++k) {
        const int n = 2 + k % 6;
        const ComplexMatrix m = complex_gaussian(n, n, rng);
        const ComplexMatrix u = random_unitary(n, rng);
        const Complex t = complex_gaussian_scalar(rng);
        CHECK(delta(u.adjoint() * m * u) == doctest::Approx(delta(m)).epsilon(1e-12));
        CHECK(delta(m + t * ComplexMatrix::Identity(n, n)) == doctest::Approx(delta(m)).epsilon(1e-12));
    }
}

TEST_CASE("strictly triangular parts are bounded by delta") {
    Rng rng = make_rng(14);
    for (int k = 0; k < 100; ++k) {
        const int n = 1 + k % 10;
        const ComplexMatrix m = complex_gaussian(n, n, rng);
        const TriangularSplit s = split_dlu(m);
        CHECK((s.diagonal + s.strictly_lower + s.strictly_upper - m).norm() == 0.0);
        const double lhs = oracle::frobenius_sq(s.strictly_lower) + oracle::frobenius_sq(s.strictly_upper);
        const double d = delta(m);
        CHECK(lhs <= d * d + 1e-12 * m.squaredNorm());
    }
}

TEST_CASE("spectral norm and condition number against the Gram eigenvalues") {
    Rng rng = make_rng(15);
    for (int k = 0; k < 30; ++k) {
        const int n = 1 + k % 7;
        const ComplexMatrix m = complex_gaussian(n, n, rng);
        CHECK(spectral_norm(m) == doctest::Approx(oracle::sigma_max(m)).epsilon(1e-10));
        CHECK(kappa2(m) == doctest::Approx(oracle::kappa2(m)).epsilon(1e-6));
    }
}

TEST_CASE("conditioned_matrix hits the requested condition number") {
    Rng rng = make_rng(16);
    for (double target : {1.0, 5.0, 10.0, 100.0, 1e4}) {
        for (int n = 1; n <= 12; ++n) {
            const ComplexMatrix q = conditioned_matrix(n, target, rng);
            const double expected = n == 1 ? 1.0 : target;
            CHECK(kappa2(q) == doctest::Approx(expected).epsilon(1e-8));
        }
    }
    CHECK_THROWS_AS(conditioned_matrix(3, 0.5, rng), DomainError);
}

TEST_CASE("random_unitary is unitary") {
    Rng rng = make_rng(17);
    for (int n = 1; n <= 10; ++n) {
        CHECK(unitarity_residual(random_unitary(n, rng)) < 1e-13);
    }
}

TEST_CASE("same seed and stream give the same matrix") {
    Rng a = make_rng(5, 3);
    Rng b = make_rng(5, 3);
    Rng c = make_rng(5, 4);
    const ComplexMatrix ma = complex_gaussian(4, 4, a);
    CHECK(ma == complex_gaussian(4, 4, b));
    CHECK(ma != complex_gaussian(4, 4, c));
}

TEST_CASE("solve and solve_right") {
    Rng rng = make_rng(18);
    const ComplexMatrix q = conditioned_matrix(6, 10.0, rng);
    const ComplexMatrix b = complex_gaussian(6, 6, rng);
    CHECK((q * solve(q, b) - b).norm() < 1e-12 * b.norm() * 10.0);
    CHECK((solve_right(b, q) * q - b).norm() < 1e-12 * b.norm() * 10.0);
}

TEST_CASE("singular and malformed input") {
    ComplexMatrix s(2, 2);
    s << 1.0, 2.0, 2.0, 4.0;
    CHECK_THROWS_AS(solve(s, ComplexMatrix::Identity(2, 2)), SingularMatrixError);
    CHECK_THROWS_AS(kappa2(s), SingularMatrixError);

    CHECK_THROWS_AS(delta(ComplexMatrix(2, 3)), DimensionError);
    CHECK_THROWS_AS(matmul(ComplexMatrix::Identity(2, 3), ComplexMatrix::Identity(2, 3)), DimensionError);

    ComplexMatrix bad = two_by_two();
    bad(1, 0) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(delta(bad), NonFiniteError);
    CHECK_THROWS_AS(split_dlu(bad), NonFiniteError);
}
