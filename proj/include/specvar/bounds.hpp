#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "specvar/jordan.hpp"
#include "specvar/matrix.hpp"

namespace specvar {

/// Every bound on the optimal matching distance D2 that the library evaluates.
///
/// HW .. XU_HERMITIAN require a normal (or Hermitian) A; SONG and LI_CHEN are
/// the Jordan-form baselines; UP1_* use the factor n, UP2_* the s-values and
/// UP3_* the factor 2 available when every eigenvalue of A is real.
enum class BoundId {
    HW,
    SUN,
    LI_SUN,
    XU1,
    XU2,
    XU_HERMITIAN,
    SONG,
    LI_CHEN,
    UP1_1,
    UP1_2,
    UP1_3,
    UP2_1,
    UP2_2,
    UP2_3,
    UP3_1,
    UP3_2,
    UP3_3,
};

inline constexpr std::array<BoundId, 17> kAllBoundIds = {
    BoundId::HW,    BoundId::SUN,   BoundId::LI_SUN, BoundId::XU1,   BoundId::XU2,   BoundId::XU_HERMITIAN,
    BoundId::SONG,  BoundId::LI_CHEN, BoundId::UP1_1, BoundId::UP1_2, BoundId::UP1_3, BoundId::UP2_1,
    BoundId::UP2_2, BoundId::UP2_3, BoundId::UP3_1, BoundId::UP3_2, BoundId::UP3_3,
};

std::string_view to_string(BoundId id);
std::optional<BoundId> parse_bound_id(std::string_view name);

/// Scalar inputs a bound consumed. Fields a bound does not use stay at zero.
struct BoundInputs {
    int n = 0;
    int p = 0;
    int m = 0;
    double delta_eq = 0.0;
    double norm_eq = 0.0;
    double abs_trace_e = 0.0;
    double norm_e = 0.0;
    double delta_e = 0.0;
    int s_tilde = 0;
    int s1 = 0;
    int s2 = 0;
    int s3 = 0;
    int s4 = 0;

    friend bool operator==(const BoundInputs&, const BoundInputs&) = default;
};

struct BoundResult {
    BoundId id = BoundId::HW;
    double value = 0.0;
    /// Case taken, e.g. "||E_Q||_F < 1" or "C1".
    std::string branch;
    bool applicable = false;
    /// Why the bound does not apply; empty when applicable.
    std::string reason;
    BoundInputs inputs;

    friend bool operator==(const BoundResult&, const BoundResult&) = default;
};

BoundResult inapplicable(BoundId id, std::string reason);

/// s_k = n + 1 - s(.) for the transformed matrices of the s-dependent bounds.
/// s1: T^{-1}Q^{-1}A~QT at eps = ||E_Q||_F^{1/m}; s2: Q^{-1}A~Q;
/// s3: eps = delta(E_Q)^{1/m}; s4: eps at the stationary point of Phi.
struct SValues {
    int s1 = 1;
    int s2 = 1;
    int s3 = 1;
    int s4 = 1;

    /// s(.) = 1 for every matrix, the largest admissible s_k; always valid.
    static SValues pessimistic(int n) { return {n, n, n, n}; }

    friend bool operator==(const SValues&, const SValues&) = default;
};

/// Scalars of a perturbation instance that the Jordan-form bounds depend on.
struct JordanScalars {
    int n = 1;
    int p = 1;
    int m = 1;
    double delta_eq = 0.0;
    double norm_eq = 0.0;
    /// |tr E|^2 / n
    double trace_term = 0.0;
    /// ||E_Q||_F at or below roundoff relative to (1 + ||A||_F).
    bool zero_perturbation = false;

    static JordanScalars from(const PerturbationInstance& inst);
};

/// Scalars of the normal-A bounds.
struct NormalScalars {
    int n = 1;
    double norm_e = 0.0;
    double delta_e = 0.0;
    int s_tilde = 1;
    bool hermitian_a = false;
    /// A~ normal as well; gates the Hoffman-Wielandt bound.
    bool a_tilde_normal = false;
};

/// Bounds for a normal A: HW (only when A~ is normal too), SUN, LI_SUN, XU1,
/// XU2 and XU_HERMITIAN (only for Hermitian A). s_tilde = s(A~).
std::vector<BoundResult> normal_bounds(const NormalScalars& scalars);
std::vector<BoundResult> normal_bounds(const ComplexMatrix& e, const ComplexMatrix& a_tilde, bool hermitian_a,
                                       int s_tilde);

/// SONG and LI_CHEN.
std::vector<BoundResult> baseline_bounds(const JordanScalars& scalars, int s1, int s2);
std::vector<BoundResult> baseline_bounds(const PerturbationInstance& inst, int s1, int s2);

/// UP1_1..UP1_3 and UP2_1..UP2_3.
std::vector<BoundResult> new_bounds_complex(const JordanScalars& scalars, const SValues& s);
std::vector<BoundResult> new_bounds_complex(const PerturbationInstance& inst, const SValues& s);

/// UP3_1..UP3_3; inapplicable unless every eigenvalue of A is real.
std::vector<BoundResult> new_bounds_real(const JordanScalars& scalars, bool real_eigenvalues);
std::vector<BoundResult> new_bounds_real(const PerturbationInstance& inst);

/// Condition C1 of the stationary-point bounds:
/// n - p + 2 sqrt(n-p) delta(E_Q) > (m-1) delta(E_Q)^2, with m = 1 never in C1.
bool stationary_condition_c1(const JordanScalars& scalars);

struct BoundSlack {
    BoundId id = BoundId::HW;
    double value = 0.0;
    /// value - d2
    double slack = 0.0;
    bool violation = false;

    friend bool operator==(const BoundSlack&, const BoundSlack&) = default;
};

inline constexpr double kSlackTolerance = 1e-7;

/// Slack of every applicable result against the optimal matching distance d2.
/// A violation is slack < -tolerance (1 + value).
std::vector<BoundSlack> verify_instance(const std::vector<BoundResult>& results, double d2,
                                        double tolerance = kSlackTolerance);

} // namespace specvar
