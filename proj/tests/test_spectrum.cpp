#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "oracles.hpp"
#include "specvar/error.hpp"
#include "specvar/random_matrices.hpp"
#include "specvar/spectrum.hpp"

using namespace specvar;

namespace {

Spectrum random_spectrum(std::size_t n, Rng& rng) {
    std::vector<Complex> v;
    for (std::size_t i = 0; i < n; ++i) {
        v.push_back(complex_gaussian_scalar(rng));
    }
    return Spectrum(v);
}

} // namespace

TEST_CASE("spectrum is stored in canonical order") {
    const Spectrum s({Complex(1, 0), Complex(0, 2), Complex(0, -1), Complex(1, -3)});
    REQUIRE(s.size() == 4);
    CHECK(s[0] == Complex(0, -1));
    CHECK(s[1] == Complex(0, 2));
    CHECK(s[2] == Complex(1, -3));
    CHECK(s[3] == Complex(1, 0));
    CHECK(s.shifted(Complex(1, 0))[0] == Complex(1, -1));
}

TEST_CASE("eigenvalues of a triangular matrix are its diagonal") {
    ComplexMatrix t(3, 3);
    t << 2.0, 5.0, Complex(1, 1), 0.0, Complex(0, 1), 7.0, 0.0, 0.0, -3.0;
    const Spectrum s = eigenvalues(t);
    const Spectrum expected({2.0, Complex(0, 1), -3.0});
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(std::abs(s[i] - expected[i]) < 1e-14);
    }
}

TEST_CASE("matching hand examples") {
    const Spectrum a({0.0, 1.0});
    const Spectrum b({Complex(1, 1), Complex(0, 1)});
    const Matching m = optimal_match(a, b);
    CHECK(m.d2 == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(m.d_inf == doctest::Approx(1.0).epsilon(1e-15));
    // a[0] = 0 pairs with b[0] = i, a[1] = 1 with b[1] = 1 + i
    CHECK(m.permutation == std::vector<std::size_t>{0, 1});

    // {0, 0} against {1, 2}: every matching costs 1 + 4
    CHECK(optimal_match(Spectrum({0.0, 0.0}), Spectrum({1.0, 2.0})).d2 == doctest::Approx(std::sqrt(5.0)));

    // crossing pairs are never optimal
    const Matching c = optimal_match(Spectrum({0.0, 10.0}), Spectrum({10.5, 0.5}));
    CHECK(c.d2 == doctest::Approx(std::sqrt(0.5)));
}

TEST_CASE("optimal match equals brute force on small random pairs") {
    Rng rng = make_rng(21);
    for (int k = 0; k < 200; ++k) {
        const std::size_t n = 1 + static_cast<std::size_t>(k % 7);
        const Spectrum a = random_spectrum(n, rng);
        const Spectrum b = random_spectrum(n, rng);
        const double expected = oracle::d2_brute(a.values(), b.values());
        const Matching m = optimal_match(a, b);
        CHECK(std::abs(m.d2 - expected) <= 1e-10);
        CHECK(std::abs(brute_force_match(a, b).d2 - expected) <= 1e-10);
        CHECK(m.d_inf <= m.d2 + 1e-15);
    }
}

TEST_CASE("optimal match with repeated values") {
    Rng rng = make_rng(22);
    for (int k = 0; k < 50; ++k) {
        std::vector<Complex> va, vb;
        const Complex x = complex_gaussian_scalar(rng);
        for (int i = 0; i < 6; ++i) {
            va.push_back(i % 2 ? x : Complex(1.0, 0.0));
            vb.push_back(complex_gaussian_scalar(rng));
        }
        const Spectrum a(va), b(vb);
        CHECK(std::abs(optimal_match(a, b).d2 - oracle::d2_brute(a.values(), b.values())) <= 1e-10);
    }
}

TEST_CASE("matching distance is a symmetric permutation-invariant metric") {
    Rng rng = make_rng(23);
    for (int k = 0; k < 30; ++k) {
        const std::size_t n = 2 + static_cast<std::size_t>(k % 10);
        const Spectrum a = random_spectrum(n, rng);
        const Spectrum b = random_spectrum(n, rng);
        const Spectrum c = random_spectrum(n, rng);
        const double ab = optimal_match(a, b).d2;
        CHECK(ab == doctest::Approx(optimal_match(b, a).d2).epsilon(1e-12));
        CHECK(optimal_match(a, a).d2 == 0.0);
        CHECK(ab <= optimal_match(a, c).d2 + optimal_match(c, b).d2 + 1e-12);

        std::vector<Complex> shuffled = b.values();
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        CHECK(optimal_match(a, Spectrum(shuffled)).d2 == doctest::Approx(ab).epsilon(1e-12));

        // the reported permutation achieves the reported distance
        const Matching m = optimal_match(a, b);
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            s += std::norm(b[m.permutation[i]] - a[i]);
        }
        CHECK(std::sqrt(s) == doctest::Approx(m.d2).epsilon(1e-14));
    }
}

TEST_CASE("matching errors") {
    CHECK_THROWS_AS(optimal_match(Spectrum({1.0}), Spectrum({1.0, 2.0})), DimensionError);
    Rng rng = make_rng(24);
    CHECK_THROWS_AS(brute_force_match(random_spectrum(9, rng), random_spectrum(9, rng)), SizeLimitError);
    CHECK_THROWS_AS(eigenvalues(ComplexMatrix(2, 3)), DimensionError);
}
