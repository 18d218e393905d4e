#include "specvar/harness.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>

#include "specvar/error.hpp"
#include "specvar/random_matrices.hpp"

namespace specvar {

namespace {

template <typename E, std::size_t N>
std::optional<E> parse_enum(std::string_view s, const std::array<std::string_view, N>& names) {
    for (std::size_t k = 0; k < N; ++k) {
        if (names[k] == s) {
            return static_cast<E>(k);
        }
    }
    return std::nullopt;
}

constexpr std::array<std::string_view, 4> kProfileNames = {"diagonalizable", "single-jordan", "mixed", "user-file"};
constexpr std::array<std::string_view, 4> kKindNames = {"gaussian", "scalar", "rank1", "zero"};
constexpr std::array<std::string_view, 2> kSModeNames = {"computed", "pessimistic"};
constexpr std::array<std::string_view, 3> kRouteNames = {"unperturbed", "exact-shift", "eigensolver"};
constexpr std::array<std::string_view, 3> kStatusNames = {"ok", "violation", "infrastructure-failure"};

class Fnv1a {
public:
    void bytes(const void* data, std::size_t len) {
        const auto* p = static_cast<const unsigned char*>(data);
        for (std::size_t i = 0; i < len; ++i) {
            h_ ^= p[i];
            h_ *= 0x100000001b3ULL;
        }
    }
    void value(double x) {
        const auto bits = std::bit_cast<std::uint64_t>(x);
        bytes(&bits, sizeof(bits));
    }
    void value(std::int64_t x) { bytes(&x, sizeof(x)); }
    void value(const Complex& z) {
        value(z.real());
        value(z.imag());
    }
    void value(const ComplexMatrix& m) {
        value(static_cast<std::int64_t>(m.rows()));
        value(static_cast<std::int64_t>(m.cols()));
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            for (Eigen::Index j = 0; j < m.cols(); ++j) {
                value(m(i, j));
            }
        }
    }
    std::string hex() const {
        char buf[17];
        std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h_));
        return buf;
    }

private:
    std::uint64_t h_ = 0xcbf29ce484222325ULL;
};

int uniform_int(Rng& rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

bool coin(Rng& rng, double p) {
    return std::bernoulli_distribution(p)(rng);
}

// Random composition of n into p positive parts.
std::vector<int> composition(int n, int p, Rng& rng) {
    std::vector<int> cuts(static_cast<std::size_t>(n - 1));
    for (int i = 0; i < n - 1; ++i) {
        cuts[static_cast<std::size_t>(i)] = i + 1;
    }
    std::shuffle(cuts.begin(), cuts.end(), rng);
    cuts.resize(static_cast<std::size_t>(p - 1));
    std::sort(cuts.begin(), cuts.end());
    std::vector<int> sizes;
    int prev = 0;
    for (int c : cuts) {
        sizes.push_back(c - prev);
        prev = c;
    }
    sizes.push_back(n - prev);
    return sizes;
}

std::vector<JordanBlock> random_blocks(const std::vector<int>& sizes, Rng& rng) {
    const bool real = coin(rng, 0.5);
    std::vector<JordanBlock> blocks;
    for (int size : sizes) {
        Complex lambda;
        if (!blocks.empty() && coin(rng, 0.2)) {
            lambda = blocks[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(blocks.size()) - 1))].lambda;
        } else if (real) {
            lambda = std::normal_distribution<double>(0.0, 1.0)(rng);
        } else {
            lambda = complex_gaussian_scalar(rng);
        }
        blocks.push_back({lambda, size});
    }
    return blocks;
}

ComplexMatrix random_perturbation(PerturbationKind kind, double scale, Eigen::Index n, Rng& rng) {
    switch (kind) {
    case PerturbationKind::Gaussian: {
        ComplexMatrix g = complex_gaussian(n, n, rng);
        return g * (scale / g.norm());
    }
    case PerturbationKind::Rank1: {
        const ComplexMatrix u = complex_gaussian(n, 1, rng);
        const ComplexMatrix v = complex_gaussian(1, n, rng);
        ComplexMatrix g = u * v;
        return g * (scale / g.norm());
    }
    case PerturbationKind::Scalar:
        return ComplexMatrix::Identity(n, n) * Complex(scale, 0.0);
    case PerturbationKind::Zero:
        return ComplexMatrix::Zero(n, n);
    }
    throw ConfigError("unknown perturbation kind");
}

bool is_zero(const ComplexMatrix& e) {
    return (e.array() == Complex(0.0, 0.0)).all();
}

// E == e(0,0) I exactly.
bool is_scalar(const ComplexMatrix& e) {
    const Complex t = e(0, 0);
    for (Eigen::Index i = 0; i < e.rows(); ++i) {
        for (Eigen::Index j = 0; j < e.cols(); ++j) {
            if (e(i, j) != (i == j ? t : Complex(0.0, 0.0))) {
                return false;
            }
        }
    }
    return true;
}

int s_value(const ComplexMatrix& m, const BlockOptions& options, std::uint64_t seed) {
    const int n = static_cast<int>(m.rows());
    return n + 1 - s_number(m, options, seed).s;
}

std::vector<BoundResult> jordan_normal_bounds(const PerturbationInstance& inst, int s_tilde) {
    const auto& spec = inst.spec();
    if (!spec.is_unitarily_diagonalizable()) {
        std::vector<BoundResult> out;
        for (auto id : {BoundId::HW, BoundId::SUN, BoundId::LI_SUN, BoundId::XU1, BoundId::XU2,
                        BoundId::XU_HERMITIAN}) {
            out.push_back(inapplicable(id, "A is not normal"));
        }
        return out;
    }
    return normal_bounds(inst.e(), inst.a_tilde(), spec.has_real_eigenvalues(), s_tilde);
}

const BoundResult* find(const std::vector<BoundResult>& results, BoundId id) {
    for (const auto& r : results) {
        if (r.id == id && r.applicable) {
            return &r;
        }
    }
    return nullptr;
}

void keep_min(std::optional<double>& slot, double x) {
    if (!slot || x < *slot) {
        slot = x;
    }
}

double rel_diff(double a, double b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

} // namespace

std::string_view to_string(BlockProfile p) {
    return kProfileNames[static_cast<std::size_t>(p)];
}
std::string_view to_string(PerturbationKind k) {
    return kKindNames[static_cast<std::size_t>(k)];
}
std::string_view to_string(SMode m) {
    return kSModeNames[static_cast<std::size_t>(m)];
}
std::string_view to_string(SpectrumRoute r) {
    return kRouteNames[static_cast<std::size_t>(r)];
}
std::string_view to_string(TrialStatus s) {
    return kStatusNames[static_cast<std::size_t>(s)];
}
std::optional<BlockProfile> parse_block_profile(std::string_view s) {
    return parse_enum<BlockProfile>(s, kProfileNames);
}
std::optional<PerturbationKind> parse_perturbation_kind(std::string_view s) {
    return parse_enum<PerturbationKind>(s, kKindNames);
}
std::optional<SMode> parse_s_mode(std::string_view s) {
    return parse_enum<SMode>(s, kSModeNames);
}
std::optional<SpectrumRoute> parse_spectrum_route(std::string_view s) {
    return parse_enum<SpectrumRoute>(s, kRouteNames);
}
std::optional<TrialStatus> parse_trial_status(std::string_view s) {
    return parse_enum<TrialStatus>(s, kStatusNames);
}

void SweepConfig::validate() const {
    if (trials < 1) {
        throw ConfigError("trials must be positive");
    }
    if (block_profile == BlockProfile::UserFile) {
        if (!user_spec) {
            throw ConfigError("block profile user-file requires a JordanSpec");
        }
    } else {
        if (n_min < 1 || n_max < n_min) {
            throw ConfigError("n range [" + std::to_string(n_min) + ", " + std::to_string(n_max) + "] is empty");
        }
        if (n_max > kCommutantMaxSize) {
            throw ConfigError("n_max exceeds " + std::to_string(kCommutantMaxSize));
        }
        if (block_profile == BlockProfile::SingleJordan && n_min < 2) {
            throw ConfigError("single-jordan profile needs n >= 2 (a 1 x 1 block is not a Jordan chain)");
        }
    }
    if (target_kappas.empty()) {
        throw ConfigError("target_kappas is empty");
    }
    for (double k : target_kappas) {
        if (!(k >= 1.0) || !std::isfinite(k)) {
            throw ConfigError("target_kappa must be a finite value >= 1");
        }
    }
    if (perturbation.kind != PerturbationKind::Zero) {
        if (perturbation.scales.empty()) {
            throw ConfigError("perturbation scales are empty");
        }
        for (double s : perturbation.scales) {
            if (!std::isfinite(s) || s == 0.0 ||
                (perturbation.kind != PerturbationKind::Scalar && s < 0.0)) {
                throw ConfigError(std::string("perturbation scale must be ") +
                                  (perturbation.kind == PerturbationKind::Scalar ? "nonzero" : "positive"));
            }
        }
    }
    if (eps_grid_points < 2) {
        throw ConfigError("eps_grid_points must be at least 2");
    }
    if (!(tolerances.slack >= 0.0) || !(tolerances.lemma >= 0.0) || !(tolerances.sharpness >= 0.0)) {
        throw ConfigError("tolerances must be nonnegative");
    }
    if (!(tolerances.block.tol > 0.0) || !(tolerances.block.gap_tol > 0.0) || !(tolerances.block.block_tol > 0.0) ||
        tolerances.block.draws < 1) {
        throw ConfigError("block-structure tolerances must be positive");
    }
}

bool Report::passed() const {
    return summary.violations == 0 && summary.lemma_failures == 0 && summary.sharpness_pass;
}

PerturbationInstance gen_instance(const SweepConfig& config, int trial_index) {
    config.validate();
    if (trial_index < 0) {
        throw ConfigError("trial index must be nonnegative");
    }
    Rng rng = make_rng(config.seed, static_cast<std::uint64_t>(trial_index));
    const auto t = static_cast<std::size_t>(trial_index);
    const double kappa = config.target_kappas[t % config.target_kappas.size()];
    double scale = 0.0;
    if (!config.perturbation.scales.empty()) {
        scale = config.perturbation.scales[(t / config.target_kappas.size()) % config.perturbation.scales.size()];
    }

    if (config.block_profile == BlockProfile::UserFile) {
        const JordanSpec& spec = *config.user_spec;
        ComplexMatrix e = random_perturbation(config.perturbation.kind, scale, spec.n(), rng);
        return PerturbationInstance(spec, std::move(e));
    }

    const int n = uniform_int(rng, config.n_min, config.n_max);
    std::vector<int> sizes;
    switch (config.block_profile) {
    case BlockProfile::Diagonalizable:
        sizes.assign(static_cast<std::size_t>(n), 1);
        break;
    case BlockProfile::SingleJordan:
        sizes = {n};
        break;
    case BlockProfile::Mixed:
        sizes = composition(n, uniform_int(rng, 1, n), rng);
        break;
    case BlockProfile::UserFile:
        break;
    }
    std::vector<JordanBlock> blocks = random_blocks(sizes, rng);
    ComplexMatrix q = conditioned_matrix(n, kappa, rng);
    ComplexMatrix e = random_perturbation(config.perturbation.kind, scale, n, rng);
    return PerturbationInstance(JordanSpec(std::move(blocks), std::move(q)), std::move(e));
}

PerturbedSpectrum perturbed_spectrum(const PerturbationInstance& inst) {
    const ComplexMatrix& e = inst.e();
    if (is_zero(e)) {
        return {inst.spec().spectrum(), SpectrumRoute::Unperturbed};
    }
    if (is_scalar(e)) {
        return {inst.spec().spectrum().shifted(e(0, 0)), SpectrumRoute::ExactShift};
    }
    return {eigenvalues(inst.a_tilde()), SpectrumRoute::Eigensolver};
}

ComputedS compute_s_values(const PerturbationInstance& inst, const BlockOptions& options, std::uint64_t seed) {
    const auto& spec = inst.spec();
    const int n = spec.n();
    const double m = static_cast<double>(spec.m());
    const ComplexMatrix transformed = solve(spec.q(), inst.a_tilde() * spec.q());

    ComputedS out;
    out.s = SValues::pessimistic(n);
    out.s.s2 = s_value(transformed, options, seed);
    const double nq = inst.norm_eq();
    if (nq > 0.0 && nq < 1.0) {
        out.s.s1 = s_value(scale_similarity(spec, transformed, std::pow(nq, 1.0 / m)), options, seed);
    }
    const double d = inst.delta_eq();
    if (d > 0.0 && d < 1.0) {
        out.s.s3 = s_value(scale_similarity(spec, transformed, std::pow(d, 1.0 / m)), options, seed);
    }
    if (stationary_condition_c1(JordanScalars::from(inst)) && d > 0.0) {
        out.s.s4 = s_value(scale_similarity(spec, transformed, optimal_epsilon(inst)), options, seed);
    }
    out.s_tilde = s_number(inst.a_tilde(), options, seed).s;
    return out;
}

std::vector<double> epsilon_grid(int points) {
    if (points < 2) {
        throw ConfigError("epsilon grid needs at least 2 points");
    }
    std::vector<double> grid;
    for (int k = 0; k < points; ++k) {
        const double exponent = -3.0 * static_cast<double>(points - 1 - k) / static_cast<double>(points - 1);
        grid.push_back(k == points - 1 ? 1.0 : std::pow(10.0, exponent));
    }
    return grid;
}

double lemma_tolerance(const PerturbationInstance& inst, double eps, double phi_value, double tol) {
    const auto& spec = inst.spec();
    const double n = static_cast<double>(spec.n());
    const double kappa = spec.kappa_q();
    const double size = jordan_matrix(spec).norm() + inst.norm_eq() + 1.0;
    // First-order error of ||T^{-1} Q^{-1} A~ Q T - Lambda||_F^2 from forming Q^{-1} A~ Q.
    const double c = n * kUnitRoundoff * kappa * kappa * size * std::pow(eps, 1 - spec.m());
    return tol * phi_value + c * c + 2.0 * c * std::sqrt(std::max(phi_value, 0.0));
}

std::string instance_digest(const PerturbationInstance& inst) {
    Fnv1a h;
    for (const auto& b : inst.spec().blocks()) {
        h.value(b.lambda);
        h.value(static_cast<std::int64_t>(b.size));
    }
    h.value(inst.spec().q());
    h.value(inst.e());
    return h.hex();
}

TrialRecord evaluate_instance(const PerturbationInstance& inst, const EvaluationOptions& options, int trial_index) {
    const auto& spec = inst.spec();
    TrialRecord rec;
    rec.trial = trial_index;
    rec.digest = instance_digest(inst);
    rec.n = spec.n();
    rec.p = spec.p();
    rec.m = spec.m();
    rec.kappa_q = spec.kappa_q();
    rec.norm_e = inst.norm_e();
    rec.norm_eq = inst.norm_eq();
    rec.delta_eq = inst.delta_eq();
    rec.trace_e = inst.trace_e();
    rec.kappa_majorant = inst.kappa_majorant();
    rec.s_values = SValues::pessimistic(spec.n());
    rec.s_tilde = 1;

    try {
        rec.rank_majorant = inst.rank_majorant();
        const PerturbedSpectrum ps = perturbed_spectrum(inst);
        rec.spectrum_route = ps.route;
        const Matching match = optimal_match(spec.spectrum(), ps.values);
        rec.d2 = match.d2;
        rec.d_inf = match.d_inf;

        if (options.s_mode == SMode::Computed) {
            const ComputedS cs = compute_s_values(inst, options.tolerances.block, options.s_seed);
            rec.s_values = cs.s;
            rec.s_tilde = cs.s_tilde;
        }

        auto append = [&](std::vector<BoundResult> more) {
            rec.bounds.insert(rec.bounds.end(), more.begin(), more.end());
        };
        append(jordan_normal_bounds(inst, rec.s_tilde));
        append(baseline_bounds(inst, rec.s_values.s1, rec.s_values.s2));
        append(new_bounds_complex(inst, rec.s_values));
        append(new_bounds_real(inst));
        rec.slacks = verify_instance(rec.bounds, rec.d2, options.tolerances.slack);

        for (double eps : epsilon_grid(options.eps_grid_points)) {
            LemmaCheck lc;
            lc.eps = eps;
            lc.phi = phi(inst, eps);
            lc.margin = lemma24_margin(inst, eps);
            lc.parts = lemma24_parts(inst, eps);
            const double tol = lemma_tolerance(inst, eps, lc.phi, options.tolerances.lemma);
            const auto& pt = lc.parts;
            lc.pass = lc.margin >= -tol && pt.scaled_eq_norm_sq <= pt.scaled_eq_bound + tol &&
                      pt.cross_term <= pt.cross_bound + tol && std::abs(pt.omega_norm_sq - pt.omega_expected) <= tol;
            rec.lemma24.push_back(lc);
        }

        const bool violated = std::any_of(rec.slacks.begin(), rec.slacks.end(), [](const auto& s) { return s.violation; });
        rec.status = violated ? TrialStatus::Violation : TrialStatus::Ok;
    } catch (const Error& e) {
        rec.status = TrialStatus::InfrastructureFailure;
        rec.failure = e.what();
        rec.bounds.clear();
        rec.slacks.clear();
        rec.lemma24.clear();
    }
    return rec;
}

ReportSummary summarize(const std::vector<TrialRecord>& records, const Tolerances& tolerances) {
    ReportSummary s;
    s.trials = static_cast<int>(records.size());
    for (BoundId id : kAllBoundIds) {
        BoundSummary b;
        b.id = id;
        s.per_bound.push_back(b);
    }
    for (const auto& rec : records) {
        switch (rec.status) {
        case TrialStatus::Ok:
            ++s.ok;
            break;
        case TrialStatus::Violation:
            ++s.violating_trials;
            break;
        case TrialStatus::InfrastructureFailure:
            ++s.infrastructure_failures;
            continue;
        }
        for (const auto& sl : rec.slacks) {
            auto& b = s.per_bound[static_cast<std::size_t>(sl.id)];
            ++b.evaluated;
            keep_min(b.min_slack, sl.slack);
            if (sl.violation) {
                ++b.violations;
                ++s.violations;
            }
        }
        const BoundResult* song = find(rec.bounds, BoundId::SONG);
        const BoundResult* up11 = find(rec.bounds, BoundId::UP1_1);
        if (song && up11) {
            keep_min(s.min_song_minus_up1_1, song->value - up11->value);
        }
        const BoundResult* li = find(rec.bounds, BoundId::LI_CHEN);
        const BoundResult* up21 = find(rec.bounds, BoundId::UP2_1);
        if (li && up21) {
            keep_min(s.min_li_chen_minus_up2_1, li->value - up21->value);
        }
        for (const auto& lc : rec.lemma24) {
            if (lc.phi > 0.0) {
                keep_min(s.min_lemma_margin_ratio, lc.margin / lc.phi);
            }
            if (!lc.pass) {
                ++s.lemma_failures;
            }
        }
    }
    s.sharpness_pass = (!s.min_song_minus_up1_1 || *s.min_song_minus_up1_1 >= -tolerances.sharpness) &&
                       (!s.min_li_chen_minus_up2_1 || *s.min_li_chen_minus_up2_1 >= -tolerances.sharpness);
    return s;
}

Report run_sweep(const SweepConfig& config) {
    config.validate();
    Report report;
    report.config = config;
    EvaluationOptions options;
    options.s_mode = config.s_mode;
    options.tolerances = config.tolerances;
    options.eps_grid_points = config.eps_grid_points;
    for (int t = 0; t < config.trials; ++t) {
        options.s_seed = config.seed ^ (0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(t + 1));
        try {
            report.records.push_back(evaluate_instance(gen_instance(config, t), options, t));
        } catch (const ConfigError&) {
            throw;
        } catch (const Error& e) {
            TrialRecord rec;
            rec.trial = t;
            rec.status = TrialStatus::InfrastructureFailure;
            rec.failure = e.what();
            report.records.push_back(std::move(rec));
        }
    }
    report.summary = summarize(report.records, config.tolerances);
    return report;
}

JordanSpec example_spec(int n, int p, int m, double target_kappa, std::uint64_t seed) {
    if (p < 1 || m < 1 || n < 1 || p > n || m > n - p + 1 || (m == 1 && p != n) || m * p < n) {
        throw ConfigError("no block structure with n = " + std::to_string(n) + ", p = " + std::to_string(p) +
                          ", m = " + std::to_string(m));
    }
    // One block of size m, the rest as even as possible without exceeding m.
    std::vector<int> sizes(static_cast<std::size_t>(p), 1);
    sizes[0] = m;
    int remaining = n - m - (p - 1);
    for (std::size_t k = 1; remaining > 0; k = k % (sizes.size() - 1) + 1) {
        if (sizes[k] < m) {
            ++sizes[k];
            --remaining;
        }
    }
    std::vector<JordanBlock> blocks;
    for (int i = 0; i < p; ++i) {
        blocks.push_back({Complex(2.0 * i + 1.0, 0.0), sizes[static_cast<std::size_t>(i)]});
    }
    Rng rng = make_rng(seed);
    return JordanSpec(std::move(blocks), conditioned_matrix(n, target_kappa, rng));
}

ExampleTable example_scalar_table(int n, int p, int m, double t, const JordanSpec& spec, const BlockOptions& options,
                                  std::uint64_t seed) {
    if (spec.n() != n || spec.p() != p || spec.m() != m) {
        throw ConfigError("spec has (n, p, m) = (" + std::to_string(spec.n()) + ", " + std::to_string(spec.p()) + ", " +
                          std::to_string(spec.m()) + "), expected (" + std::to_string(n) + ", " + std::to_string(p) +
                          ", " + std::to_string(m) + ")");
    }
    const double abs_t = std::abs(t);
    if (!(abs_t > 0.0) || !(abs_t < 1.0 / std::sqrt(static_cast<double>(n)))) {
        throw ConfigError("t must satisfy 0 < |t| < 1/sqrt(n)");
    }
    const PerturbationInstance inst(spec, ComplexMatrix::Identity(n, n) * Complex(t, 0.0));

    ExampleTable table;
    table.n = n;
    table.p = p;
    table.m = m;
    table.t = t;
    const ComplexMatrix transformed = solve(spec.q(), inst.a_tilde() * spec.q());
    const double eps1 = std::pow(inst.norm_eq(), 1.0 / m);
    table.s1 = s_value(scale_similarity(spec, transformed, eps1), options, seed);

    SValues s = SValues::pessimistic(n);
    s.s1 = table.s1;
    std::vector<BoundResult> results = baseline_bounds(inst, s.s1, s.s2);
    for (auto& r : new_bounds_complex(inst, s)) {
        results.push_back(r);
    }

    const double dn = n;
    const double dr = n - p;
    const double dm = m;
    const double s1 = table.s1;
    const double root_n_t = std::sqrt(dn) * abs_t;
    const double t_pow = std::pow(abs_t, 1.0 / dm);
    struct Form {
        BoundId id;
        const char* text;
        double value;
    };
    const std::array<Form, 8> forms = {{
        {BoundId::SONG, "(sqrt(n-p)+1) n^(1/2+1/(2m)) |t|^(1/m)",
         (std::sqrt(dr) + 1.0) * std::pow(dn, 0.5 + 0.5 / dm) * t_pow},
        {BoundId::LI_CHEN, "sqrt(s1 (n-p+1+2|t| sqrt(n^2-np))) n^(1/(2m)) |t|^(1/m)",
         std::sqrt(s1 * (dr + 1.0 + 2.0 * abs_t * std::sqrt(dn * dn - dn * p))) * std::pow(dn, 0.5 / dm) * t_pow},
        {BoundId::UP1_1, "sqrt((n-p) n^(1+1/m) |t|^(2/m) + n|t|^2)",
         std::sqrt(dr * std::pow(dn, 1.0 + 1.0 / dm) * t_pow * t_pow + dn * t * t)},
        {BoundId::UP2_1, "sqrt(s1 (n-p) n^(1/m) |t|^(2/m) + n|t|^2)",
         std::sqrt(s1 * dr * std::pow(dn, 1.0 / dm) * t_pow * t_pow + dn * t * t)},
        {BoundId::UP1_2, "sqrt(n)|t|", root_n_t},
        {BoundId::UP2_2, "sqrt(n)|t|", root_n_t},
        {BoundId::UP1_3, "sqrt(n)|t|", root_n_t},
        {BoundId::UP2_3, "sqrt(n)|t|", root_n_t},
    }};
    for (const auto& f : forms) {
        const BoundResult* r = find(results, f.id);
        if (!r) {
            throw ConfigError(std::string("bound ") + std::string(to_string(f.id)) + " is not applicable");
        }
        ExampleRow row;
        row.id = f.id;
        row.closed_form_text = f.text;
        row.closed_form = f.value;
        row.numeric = r->value;
        row.rel_diff = rel_diff(f.value, r->value);
        table.max_rel_diff = std::max(table.max_rel_diff, row.rel_diff);
        table.rows.push_back(row);
    }
    table.d2_expected = root_n_t;
    table.d2 = optimal_match(spec.spectrum(), eigenvalues(inst.a_tilde())).d2;
    return table;
}

} // namespace specvar
