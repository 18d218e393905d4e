#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "specvar/error.hpp"
#include "specvar/jordan.hpp"
#include "specvar/random_matrices.hpp"

using namespace specvar;

namespace {

JordanSpec spec_322(Rng& rng, double kappa = 10.0) {
    return JordanSpec({{Complex(1, 0), 3}, {Complex(0, 2), 2}, {Complex(-1, 0), 2}}, conditioned_matrix(7, kappa, rng));
}

PerturbationInstance random_instance(Rng& rng, double scale) {
    JordanSpec spec = spec_322(rng);
    ComplexMatrix e = complex_gaussian(7, 7, rng);
    e *= scale / e.norm();
    return PerturbationInstance(std::move(spec), std::move(e));
}

} // namespace

TEST_CASE("spec shape") {
    Rng rng = make_rng(41);
    const JordanSpec s = spec_322(rng);
    CHECK(s.n() == 7);
    CHECK(s.p() == 3);
    CHECK(s.m() == 3);
    CHECK(s.kappa_q() == doctest::Approx(10.0).epsilon(1e-8));
    CHECK(s.spectrum().size() == 7);
    CHECK_FALSE(s.has_real_eigenvalues());
    CHECK_FALSE(s.is_unitarily_diagonalizable());

    const JordanSpec d({{1.0, 1}, {2.0, 1}}, random_unitary(2, rng));
    CHECK(d.is_unitarily_diagonalizable());
    CHECK(d.has_real_eigenvalues());
}

TEST_CASE("assembled A satisfies AQ = QJ") {
    Rng rng = make_rng(42);
    const JordanSpec s = spec_322(rng);
    const ComplexMatrix j = oracle::block_diag(
        {oracle::jordan_block(1.0, 3), oracle::jordan_block(Complex(0, 2), 2), oracle::jordan_block(-1.0, 2)});
    CHECK((jordan_matrix(s) - j).norm() == 0.0);
    const ComplexMatrix a = assemble(s);
    CHECK((a * s.q() - s.q() * j).norm() < 1e-12 * a.norm() * s.kappa_q());
}

TEST_CASE("scaling turns the Jordan form into Lambda + Omega") {
    Rng rng = make_rng(43);
    const JordanSpec s = spec_322(rng);
    for (double eps : {1.0, 0.5, 1e-3}) {
        const ComplexMatrix t = scaling_matrix(s, eps);
        const ComplexMatrix lhs = t.inverse() * jordan_matrix(s) * t;
        CHECK((lhs - lambda_matrix(s) - omega_matrix(s, eps)).norm() < 1e-12);
        const ComplexMatrix x = complex_gaussian(7, 7, rng);
        CHECK((scale_similarity(s, x, eps) - t.inverse() * x * t).norm() < 1e-12 * (t.inverse() * x * t).norm());
        CHECK(omega_matrix(s, eps).squaredNorm() == doctest::Approx((7 - 3) * eps * eps));
    }
    CHECK_THROWS_AS(scaling_matrix(s, 0.0), DomainError);
    CHECK_THROWS_AS(scaling_matrix(s, 1.5), DomainError);
}

TEST_CASE("instance scalars") {
    Rng rng = make_rng(44);
    const PerturbationInstance inst = random_instance(rng, 0.3);
    const ComplexMatrix eq = inst.spec().q().inverse() * inst.e() * inst.spec().q();
    CHECK(inst.norm_e() == doctest::Approx(0.3));
    CHECK(inst.norm_eq() == doctest::Approx(eq.norm()).epsilon(1e-10));
    CHECK(inst.delta_eq() == doctest::Approx(oracle::delta(eq)).epsilon(1e-10));
    CHECK(inst.trace_term() == doctest::Approx(std::norm(oracle::trace(inst.e())) / 7.0).epsilon(1e-12));
    CHECK(inst.norm_eq() <= inst.kappa_majorant() * (1 + 1e-12));
    CHECK(inst.norm_eq() <= inst.rank_majorant() * (1 + 1e-12));
}

TEST_CASE("scalar perturbation transports to itself") {
    Rng rng = make_rng(45);
    const PerturbationInstance inst(spec_322(rng, 100.0), ComplexMatrix::Identity(7, 7) * 0.05);
    CHECK(inst.delta_eq() < 1e-12);
    CHECK(inst.trace_e() == Complex(0.35, 0.0));
    CHECK(inst.norm_eq() == doctest::Approx(std::sqrt(7.0) * 0.05).epsilon(1e-10));
}

TEST_CASE("Phi by hand") {
    const JordanSpec s({{0.0, 2}, {1.0, 1}}, ComplexMatrix::Identity(3, 3));
    ComplexMatrix e = ComplexMatrix::Zero(3, 3);
    e(1, 0) = 0.5;
    e(2, 2) = 0.3;
    const PerturbationInstance inst(s, e);
    // delta^2 = 0.25 + 0.09 - 0.09/3 = 0.31, tr term = 0.03, n - p = 1, m = 2
    const double d2 = 0.31;
    for (double eps : {1.0, 0.5, 0.1}) {
        const double expected = d2 / (eps * eps) + 2 * eps * eps * std::sqrt(d2) + eps * eps + 0.03;
        CHECK(phi(inst, eps) == doctest::Approx(expected).epsilon(1e-14));
    }
    // ((m-1) delta^2 / (n-p + 2 sqrt(n-p) delta))^(1/2m)
    CHECK(optimal_epsilon(inst) == doctest::Approx(std::pow(d2 / (1 + 2 * std::sqrt(d2)), 0.25)).epsilon(1e-14));
}

TEST_CASE("optimal_epsilon minimises Phi") {
    Rng rng = make_rng(46);
    for (int k = 0; k < 20; ++k) {
        const PerturbationInstance inst = random_instance(rng, 0.01 + 0.2 * k);
        const double star = optimal_epsilon(inst);
        const double best = phi(inst, star);
        for (int i = 1; i <= 400; ++i) {
            CHECK(best <= phi(inst, i / 400.0) * (1 + 1e-12));
        }
    }
}

TEST_CASE("optimal_epsilon edge cases") {
    Rng rng = make_rng(47);
    const JordanSpec diag({{1.0, 1}, {2.0, 1}}, ComplexMatrix::Identity(2, 2));
    CHECK_THROWS_AS(optimal_epsilon(PerturbationInstance(diag, ComplexMatrix::Identity(2, 2))), NotApplicableError);
    const JordanSpec plain({{1.0, 3}, {2.0, 2}}, ComplexMatrix::Identity(5, 5));
    CHECK_THROWS_AS(optimal_epsilon(PerturbationInstance(plain, ComplexMatrix::Identity(5, 5))), DomainError);

    // C2: (m-1) delta^2 dominates
    const JordanSpec single({{0.0, 3}}, ComplexMatrix::Identity(3, 3));
    ComplexMatrix e = ComplexMatrix::Zero(3, 3);
    e(2, 0) = 10.0;
    CHECK(optimal_epsilon(PerturbationInstance(single, e)) == 1.0);
}

TEST_CASE("lemma margins and parts on random instances") {
    Rng rng = make_rng(48);
    for (int k = 0; k < 20; ++k) {
        const PerturbationInstance inst = random_instance(rng, 0.05 * (k + 1));
        for (double eps : {1e-3, 1e-2, 0.1, 0.5, 1.0}) {
            const double f = phi(inst, eps);
            CHECK(lemma24_margin(inst, eps) >= -1e-8 * f);
            const Lemma24Parts p = lemma24_parts(inst, eps);
            CHECK(p.scaled_eq_norm_sq <= p.scaled_eq_bound * (1 + 1e-10));
            CHECK(p.cross_term <= p.cross_bound + 1e-12 * f);
            CHECK(p.omega_norm_sq == doctest::Approx(p.omega_expected));
        }
    }
}

TEST_CASE("lemma margin is zero for a scalar perturbation of a normal matrix") {
    const JordanSpec s({{1.0, 1}, {2.0, 1}, {3.0, 1}}, ComplexMatrix::Identity(3, 3));
    const PerturbationInstance inst(s, ComplexMatrix::Identity(3, 3) * 0.1);
    CHECK(std::abs(lemma24_margin(inst, 0.5)) < 1e-15);
}

TEST_CASE("spec validation") {
    CHECK_THROWS_AS(JordanSpec({}, ComplexMatrix::Identity(1, 1)), ConfigError);
    CHECK_THROWS_AS(JordanSpec({{1.0, 0}}, ComplexMatrix::Identity(1, 1)), ConfigError);
    CHECK_THROWS_AS(JordanSpec({{1.0, 2}}, ComplexMatrix::Identity(3, 3)), DimensionError);
    CHECK_THROWS_AS(JordanSpec({{Complex(std::nan(""), 0), 1}}, ComplexMatrix::Identity(1, 1)), NonFiniteError);
    ComplexMatrix sing = ComplexMatrix::Ones(2, 2);
    CHECK_THROWS_AS(JordanSpec({{1.0, 2}}, sing), SingularMatrixError);
    const JordanSpec ok({{1.0, 2}}, ComplexMatrix::Identity(2, 2));
    CHECK_THROWS_AS(PerturbationInstance(ok, ComplexMatrix::Identity(3, 3)), DimensionError);
}

TEST_CASE("diagonalizable_spec") {
    Rng rng = make_rng(49);
    const ComplexMatrix a = complex_gaussian(5, 5, rng);
    const JordanSpec s = diagonalizable_spec(a);
    CHECK(s.p() == 5);
    CHECK((assemble(s) - a).norm() < 1e-10 * a.norm());
    CHECK_THROWS_AS(diagonalizable_spec(oracle::jordan_block(1.0, 3)), DomainError);
}
