#pragma once

#include <vector>

#include "specvar/matrix.hpp"
#include "specvar/spectrum.hpp"

namespace specvar {

struct JordanBlock {
    Complex lambda;
    int size = 1;

    friend bool operator==(const JordanBlock&, const JordanBlock&) = default;
};

/// Prescribed Jordan data and a nonsingular transform: A = Q diag(J_1..J_p) Q^{-1}.
///
/// Block order is the caller's order and is never re-sorted; Lambda, T and
/// Omega are laid out in that order.
class JordanSpec {
public:
    /// Validates sizes, dimension agreement and nonsingularity of q.
    JordanSpec(std::vector<JordanBlock> blocks, ComplexMatrix q);

    const std::vector<JordanBlock>& blocks() const noexcept { return blocks_; }
    const ComplexMatrix& q() const noexcept { return q_; }

    int n() const noexcept { return n_; }
    /// Number of Jordan blocks.
    int p() const noexcept { return static_cast<int>(blocks_.size()); }
    /// Largest block size.
    int m() const noexcept { return m_; }
    double kappa_q() const noexcept { return kappa_q_; }

    /// Eigenvalues lambda_i repeated m_i times.
    Spectrum spectrum() const;

    /// Every |Im lambda_i| <= 1e-12 (1 + |lambda_i|).
    bool has_real_eigenvalues() const;

    /// p == n and kappa_2(Q) == 1 to roundoff, so A is normal.
    bool is_unitarily_diagonalizable() const;

private:
    std::vector<JordanBlock> blocks_;
    ComplexMatrix q_;
    int n_ = 0;
    int m_ = 0;
    double kappa_q_ = 1.0;
};

/// A JordanSpec together with a perturbation E and the scalars every bound consumes.
class PerturbationInstance {
public:
    PerturbationInstance(JordanSpec spec, ComplexMatrix e);

    const JordanSpec& spec() const noexcept { return spec_; }
    const ComplexMatrix& e() const noexcept { return e_; }
    /// Assembled A = Q J Q^{-1}.
    const ComplexMatrix& a() const noexcept { return a_; }
    ComplexMatrix a_tilde() const { return a_ + e_; }

    /// E_Q = Q^{-1} E Q.
    const ComplexMatrix& e_q() const noexcept { return e_q_; }
    double norm_eq() const noexcept { return norm_eq_; }
    double delta_eq() const noexcept { return delta_eq_; }
    Complex trace_e() const noexcept { return trace_e_; }
    double norm_e() const noexcept { return norm_e_; }

    /// |tr E|^2 / n.
    double trace_term() const noexcept;

    /// kappa_2(Q) ||E||_F, a majorant of ||E_Q||_F.
    double kappa_majorant() const noexcept;
    /// sqrt(rank E) ||E_Q||_2, a second majorant of ||E_Q||_F.
    double rank_majorant() const;

private:
    JordanSpec spec_;
    ComplexMatrix e_;
    ComplexMatrix a_;
    ComplexMatrix e_q_;
    double norm_eq_ = 0.0;
    double delta_eq_ = 0.0;
    Complex trace_e_;
    double norm_e_ = 0.0;
};

/// diag(J_1, ..., J_p): lambda_i on the diagonal, ones on within-block superdiagonals.
ComplexMatrix jordan_matrix(const JordanSpec& spec);

/// A = Q J Q^{-1}.
ComplexMatrix assemble(const JordanSpec& spec);

/// T = diag(T_1..T_p), T_i = diag(1, eps, ..., eps^{m_i - 1}). Requires 0 < eps <= 1.
ComplexMatrix scaling_matrix(const JordanSpec& spec, double eps);

/// Lambda = diag(lambda_1 I_{m_1}, ..., lambda_p I_{m_p}).
ComplexMatrix lambda_matrix(const JordanSpec& spec);

/// Omega: eps on within-block superdiagonals, zero elsewhere.
ComplexMatrix omega_matrix(const JordanSpec& spec, double eps);

/// T^{-1} X T for the diagonal scaling T(eps), applied entrywise.
ComplexMatrix scale_similarity(const JordanSpec& spec, const ComplexMatrix& x, double eps);

/// Phi(eps) = eps^{2(1-m)} delta(E_Q)^2 + 2 eps^2 sqrt(n-p) delta(E_Q) + (n-p) eps^2 + |tr E|^2 / n.
double phi(const PerturbationInstance& inst, double eps);

/// Minimiser of Phi over (0, 1] for a non-diagonalizable A (m >= 2):
/// ((m-1) delta^2 / (n - p + 2 sqrt(n-p) delta))^{1/(2m)} when
/// n - p + 2 sqrt(n-p) delta > (m-1) delta^2, else 1.
/// Throws NotApplicableError for m = 1, DomainError for delta(E_Q) = 0.
double optimal_epsilon(const PerturbationInstance& inst);

/// The three intermediate inequalities bounding ||T^{-1} Q^{-1} A~ Q T - Lambda||_F^2.
struct Lemma24Parts {
    double scaled_eq_norm_sq = 0.0;  ///< ||T^{-1} E_Q T||_F^2
    double scaled_eq_bound = 0.0;    ///< eps^{2(1-m)} delta(E_Q)^2 + |tr E|^2 / n
    double cross_term = 0.0;         ///< Re tr(Omega^* T^{-1} E_Q T)
    double cross_bound = 0.0;        ///< eps^2 sqrt(n-p) delta(E_Q)
    double omega_norm_sq = 0.0;      ///< ||Omega||_F^2
    double omega_expected = 0.0;     ///< (n-p) eps^2
};

Lemma24Parts lemma24_parts(const PerturbationInstance& inst, double eps);

/// Phi(eps) - ||T^{-1} Q^{-1} A~ Q T - Lambda||_F^2, with the left side computed
/// from the assembled A + E.
double lemma24_margin(const PerturbationInstance& inst, double eps);

/// Diagonalizable JordanSpec (p = n, Q = eigenvectors) for a matrix whose
/// eigenvalues are pairwise separated by more than 1e-6 ||A||_F. Refuses
/// anything closer with DomainError; Jordan structure is never inferred.
JordanSpec diagonalizable_spec(const ComplexMatrix& a);

} // namespace specvar
