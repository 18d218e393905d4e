#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "specvar/block_structure.hpp"
#include "specvar/bounds.hpp"
#include "specvar/jordan.hpp"
#include "specvar/spectrum.hpp"

namespace specvar {

enum class BlockProfile { Diagonalizable, SingleJordan, Mixed, UserFile };
enum class PerturbationKind { Gaussian, Scalar, Rank1, Zero };
enum class SMode { Computed, Pessimistic };

std::string_view to_string(BlockProfile p);
std::string_view to_string(PerturbationKind k);
std::string_view to_string(SMode m);
std::optional<BlockProfile> parse_block_profile(std::string_view s);
std::optional<PerturbationKind> parse_perturbation_kind(std::string_view s);
std::optional<SMode> parse_s_mode(std::string_view s);

/// Perturbation family. `scales` holds ||E||_F for gaussian and rank1, and t
/// for scalar (E = tI). Trials cycle through the listed scales.
struct Perturbation {
    PerturbationKind kind = PerturbationKind::Gaussian;
    std::vector<double> scales = {0.5};

    friend bool operator==(const Perturbation&, const Perturbation&) = default;
};

struct Tolerances {
    /// Bound violation when value - d2 < -slack (1 + value).
    double slack = kSlackTolerance;
    /// Lemma margins and parts must be >= -lemma * Phi(eps).
    double lemma = 1e-8;
    /// Sharpness gaps (SONG - UP1_1, LI_CHEN - UP2_1) must be >= -sharpness.
    double sharpness = 1e-12;
    BlockOptions block;
};

/// Everything that determines a sweep. Identical configs give identical reports.
///
/// Trial k uses target_kappas[k % K] and perturbation.scales[(k / K) % S], so a
/// sweep covers every (kappa, scale) combination evenly.
struct SweepConfig {
    std::uint64_t seed = 1;
    int trials = 100;
    int n_min = 2;
    int n_max = 12;
    BlockProfile block_profile = BlockProfile::Mixed;
    /// Required for BlockProfile::UserFile; its blocks and Q are used verbatim.
    std::optional<JordanSpec> user_spec;
    Perturbation perturbation;
    std::vector<double> target_kappas = {1.0};
    SMode s_mode = SMode::Pessimistic;
    Tolerances tolerances;
    int eps_grid_points = 16;

    /// Throws ConfigError describing the first invalid field.
    void validate() const;
};

/// Which route produced the spectrum of A + E.
enum class SpectrumRoute {
    /// E = 0: the spectrum of A, taken from the Jordan data.
    Unperturbed,
    /// E = tI: the Jordan eigenvalues shifted by t.
    ExactShift,
    /// Dense eigensolver on the assembled A + E.
    Eigensolver,
};

std::string_view to_string(SpectrumRoute r);
std::optional<SpectrumRoute> parse_spectrum_route(std::string_view s);

struct PerturbedSpectrum {
    Spectrum values;
    SpectrumRoute route = SpectrumRoute::Eigensolver;
};

/// Spectrum of A + E. The spectrum of A is exact (from the Jordan data), so
/// when E is zero or a scalar matrix the perturbed spectrum is exact too;
/// otherwise it is eigensolved.
PerturbedSpectrum perturbed_spectrum(const PerturbationInstance& inst);

enum class TrialStatus { Ok, Violation, InfrastructureFailure };

std::string_view to_string(TrialStatus s);
std::optional<TrialStatus> parse_trial_status(std::string_view s);

struct LemmaCheck {
    double eps = 0.0;
    double phi = 0.0;
    double margin = 0.0;
    Lemma24Parts parts;
    /// Margin and all three parts within tolerance.
    bool pass = true;

    friend bool operator==(const LemmaCheck&, const LemmaCheck&) = default;
};

inline bool operator==(const Lemma24Parts& a, const Lemma24Parts& b) {
    return a.scaled_eq_norm_sq == b.scaled_eq_norm_sq && a.scaled_eq_bound == b.scaled_eq_bound &&
           a.cross_term == b.cross_term && a.cross_bound == b.cross_bound && a.omega_norm_sq == b.omega_norm_sq &&
           a.omega_expected == b.omega_expected;
}

struct TrialRecord {
    int trial = 0;
    /// FNV-1a hash of the Jordan data, Q and E.
    std::string digest;
    int n = 0;
    int p = 0;
    int m = 0;
    double kappa_q = 0.0;
    double norm_e = 0.0;
    double norm_eq = 0.0;
    double delta_eq = 0.0;
    Complex trace_e;
    double kappa_majorant = 0.0;
    double rank_majorant = 0.0;
    SValues s_values;
    int s_tilde = 1;
    SpectrumRoute spectrum_route = SpectrumRoute::Eigensolver;
    double d2 = 0.0;
    double d_inf = 0.0;
    TrialStatus status = TrialStatus::Ok;
    std::string failure;
    std::vector<BoundResult> bounds;
    std::vector<BoundSlack> slacks;
    std::vector<LemmaCheck> lemma24;

    friend bool operator==(const TrialRecord&, const TrialRecord&) = default;
};

struct BoundSummary {
    BoundId id = BoundId::HW;
    int evaluated = 0;
    int violations = 0;
    /// Smallest slack seen; absent when the bound was never applicable.
    std::optional<double> min_slack;

    friend bool operator==(const BoundSummary&, const BoundSummary&) = default;
};

struct ReportSummary {
    int trials = 0;
    int ok = 0;
    int violating_trials = 0;
    int infrastructure_failures = 0;
    /// Total count of violating (trial, bound) pairs.
    int violations = 0;
    std::vector<BoundSummary> per_bound;
    std::optional<double> min_song_minus_up1_1;
    std::optional<double> min_li_chen_minus_up2_1;
    bool sharpness_pass = true;
    /// Smallest margin / Phi over every lemma check.
    std::optional<double> min_lemma_margin_ratio;
    int lemma_failures = 0;

    friend bool operator==(const ReportSummary&, const ReportSummary&) = default;
};

struct Report {
    SweepConfig config;
    std::vector<TrialRecord> records;
    ReportSummary summary;

    /// No violations, no lemma failures, sharpness held.
    bool passed() const;
};

/// Deterministic in (config.seed, trial_index).
PerturbationInstance gen_instance(const SweepConfig& config, int trial_index);

struct EvaluationOptions {
    SMode s_mode = SMode::Pessimistic;
    Tolerances tolerances;
    /// Seed for the random draws inside the block-structure search.
    std::uint64_t s_seed = 0;
    int eps_grid_points = 16;
};

/// s-values for the transformed matrices of the instance, and s(A~).
struct ComputedS {
    SValues s;
    int s_tilde = 1;
};

ComputedS compute_s_values(const PerturbationInstance& inst, const BlockOptions& options, std::uint64_t seed);

/// Log-spaced grid of `points` values from 1e-3 up to 1.
std::vector<double> epsilon_grid(int points);

/// Tolerance used for the envelope checks at eps: tol * Phi(eps) plus a
/// roundoff floor that only matters when Phi(eps) is zero.
double lemma_tolerance(const PerturbationInstance& inst, double eps, double phi_value, double tol);

/// All bounds, slacks and lemma checks for one instance. Eigensolver or
/// block-structure failures produce an InfrastructureFailure record.
TrialRecord evaluate_instance(const PerturbationInstance& inst, const EvaluationOptions& options, int trial_index);

ReportSummary summarize(const std::vector<TrialRecord>& records, const Tolerances& tolerances);

Report run_sweep(const SweepConfig& config);

std::string instance_digest(const PerturbationInstance& inst);

/// One row of the E = tI comparison table.
struct ExampleRow {
    BoundId id = BoundId::HW;
    std::string closed_form_text;
    double closed_form = 0.0;
    double numeric = 0.0;
    double rel_diff = 0.0;
};

struct ExampleTable {
    int n = 0;
    int p = 0;
    int m = 0;
    double t = 0.0;
    int s1 = 1;
    std::vector<ExampleRow> rows;
    /// sqrt(n) |t|
    double d2_expected = 0.0;
    /// Optimal matching distance between the Jordan eigenvalues and the
    /// eigensolved spectrum of A + tI.
    double d2 = 0.0;
    double max_rel_diff = 0.0;
};

/// Evaluates the eight tabulated bounds for E = tI against their closed forms.
/// Requires 0 < |t| < 1/sqrt(n) and a spec with the given (n, p, m).
ExampleTable example_scalar_table(int n, int p, int m, double t, const JordanSpec& spec,
                                  const BlockOptions& options = {}, std::uint64_t seed = 0);

/// Spec with p blocks summing to n, largest block m, eigenvalues 1, 3, 5, ...,
/// and a random Q with the given condition number.
JordanSpec example_spec(int n, int p, int m, double target_kappa, std::uint64_t seed);

} // namespace specvar
