// specvar: eigenvalue perturbation bounds from the command line.
//
//   specvar bound    --spec spec.json --perturbation e.json
//   specvar match    a.json b.json
//   specvar s-number --matrix m.json
//   specvar sweep    --trials 500 --kappa 1 10 100 --scale 0.01 0.5 2 --out report.csv
//   specvar example  --n 4 --p 2 --m 2 --t 0.05
//   specvar delta    --matrix m.json
//
// Exit status: 0 pass, 1 bound violation, 2 infrastructure or configuration error.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "specvar/block_structure.hpp"
#include "specvar/bounds.hpp"
#include "specvar/error.hpp"
#include "specvar/harness.hpp"
#include "specvar/io.hpp"
#include "specvar/jordan.hpp"
#include "specvar/matrix.hpp"
#include "specvar/report.hpp"
#include "specvar/spectrum.hpp"

using namespace specvar;
using io::Json;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitViolation = 1;
constexpr int kExitError = 2;

struct Common {
    std::uint64_t seed = 0;
    double tol = BlockOptions{}.tol;
    std::string format = "text";
    std::string out;
};

void emit(const Common& c, const std::string& text) {
    if (c.out.empty()) {
        std::cout << text;
    } else {
        io::write_text_file(c.out, text);
    }
}

std::string fmt(double x) {
    return io::format_double(x);
}

std::string fmt(const Complex& z) {
    std::ostringstream s;
    s << fmt(z.real()) << (std::signbit(z.imag()) ? " - " : " + ") << fmt(std::abs(z.imag())) << "i";
    return s.str();
}

void require_format(const Common& c, std::initializer_list<const char*> allowed) {
    for (const char* a : allowed) {
        if (c.format == a) {
            return;
        }
    }
    std::string list;
    for (const char* a : allowed) {
        list += list.empty() ? a : std::string(", ") + a;
    }
    throw ConfigError("--format must be one of: " + list);
}

// A spectrum file, or a matrix file whose eigenvalues are taken.
Spectrum load_spectrum(const std::string& path) {
    const Json j = io::parse_text(io::read_text_file(path), path);
    if (j.is_object() && j.contains("n_rows")) {
        return eigenvalues(io::matrix_from_json(j, path));
    }
    return io::spectrum_from_json(j, path);
}

int cmd_bound(const Common& c, const std::string& spec_file, const std::string& matrix_file,
              const std::string& perturbation_file, const std::string& s_mode) {
    require_format(c, {"text", "json", "csv"});
    if (spec_file.empty() == matrix_file.empty()) {
        throw ConfigError("give exactly one of --spec or --matrix");
    }
    const JordanSpec spec =
        spec_file.empty() ? diagonalizable_spec(io::read_matrix_file(matrix_file)) : io::read_spec_file(spec_file);
    const PerturbationInstance inst(spec, io::read_matrix_file(perturbation_file));

    EvaluationOptions options;
    auto mode = parse_s_mode(s_mode);
    if (!mode) {
        throw ConfigError("--s-mode must be computed or pessimistic");
    }
    options.s_mode = *mode;
    options.tolerances.block.tol = c.tol;
    options.s_seed = c.seed;
    const TrialRecord rec = evaluate_instance(inst, options, 0);

    if (c.format == "json") {
        emit(c, io::record_to_json(rec).dump(2) + "\n");
    } else if (c.format == "csv") {
        Report r;
        r.records.push_back(rec);
        emit(c, io::report_to_csv(r, io::utc_timestamp()));
    } else {
        std::ostringstream s;
        s << "n = " << rec.n << ", p = " << rec.p << ", m = " << rec.m << ", kappa2(Q) = " << fmt(rec.kappa_q) << "\n";
        s << "||E||_F = " << fmt(rec.norm_e) << ", ||E_Q||_F = " << fmt(rec.norm_eq)
          << ", delta(E_Q) = " << fmt(rec.delta_eq) << "\n";
        s << "s1..s4 = " << rec.s_values.s1 << " " << rec.s_values.s2 << " " << rec.s_values.s3 << " "
          << rec.s_values.s4 << ", s(A~) = " << rec.s_tilde << "\n";
        if (rec.status == TrialStatus::InfrastructureFailure) {
            s << "failure: " << rec.failure << "\n";
        } else {
            s << "D2 = " << fmt(rec.d2) << ", Dinf = " << fmt(rec.d_inf) << " (" << to_string(rec.spectrum_route)
              << ")\n\n";
            char line[256];
            for (const auto& b : rec.bounds) {
                if (!b.applicable) {
                    std::snprintf(line, sizeof(line), "%-13s n/a  %s\n", std::string(to_string(b.id)).c_str(),
                                  b.reason.c_str());
                    s << line;
                    continue;
                }
                double slack = b.value - rec.d2;
                bool bad = false;
                for (const auto& sl : rec.slacks) {
                    if (sl.id == b.id) {
                        slack = sl.slack;
                        bad = sl.violation;
                    }
                }
                std::snprintf(line, sizeof(line), "%-13s %-22s %-24s slack %s%s\n",
                              std::string(to_string(b.id)).c_str(), fmt(b.value).c_str(), b.branch.c_str(),
                              fmt(slack).c_str(), bad ? "  VIOLATION" : "");
                s << line;
            }
        }
        emit(c, s.str());
    }
    if (rec.status == TrialStatus::InfrastructureFailure) {
        return kExitError;
    }
    return rec.status == TrialStatus::Violation ? kExitViolation : kExitPass;
}

int cmd_match(const Common& c, const std::string& a_file, const std::string& b_file) {
    require_format(c, {"text", "json"});
    const Spectrum a = load_spectrum(a_file);
    const Spectrum b = load_spectrum(b_file);
    const Matching m = optimal_match(a, b);
    if (c.format == "json") {
        Json j = Json::object();
        j["d2"] = m.d2;
        j["d_inf"] = m.d_inf;
        j["permutation"] = m.permutation;
        emit(c, j.dump(2) + "\n");
    } else {
        std::ostringstream s;
        s << "D2   = " << fmt(m.d2) << "\nDinf = " << fmt(m.d_inf) << "\n";
        for (std::size_t i = 0; i < m.permutation.size(); ++i) {
            s << "  " << fmt(a[i]) << "  ->  " << fmt(b[m.permutation[i]]) << "\n";
        }
        emit(c, s.str());
    }
    return kExitPass;
}

int cmd_s_number(const Common& c, const std::string& matrix_file) {
    require_format(c, {"text", "json"});
    BlockOptions options;
    options.tol = c.tol;
    const BlockDecomposition d = s_number(io::read_matrix_file(matrix_file), options, c.seed);
    if (c.format == "json") {
        Json j = Json::object();
        j["s"] = d.s;
        j["block_sizes"] = d.block_sizes;
        j["offblock_residual"] = d.offblock_residual;
        j["u"] = io::matrix_to_json(d.u);
        emit(c, j.dump(2) + "\n");
    } else {
        std::ostringstream s;
        s << "s = " << d.s << "\nblocks =";
        for (int b : d.block_sizes) {
            s << " " << b;
        }
        s << "\noffblock residual = " << fmt(d.offblock_residual) << "\n";
        emit(c, s.str());
    }
    return kExitPass;
}

int cmd_delta(const Common& c, const std::string& matrix_file) {
    require_format(c, {"text", "json"});
    const ComplexMatrix m = io::read_matrix_file(matrix_file);
    const TriangularSplit parts = split_dlu(m);
    const double d = delta(m);
    const double lu = std::sqrt(parts.strictly_lower.squaredNorm() + parts.strictly_upper.squaredNorm());
    if (c.format == "json") {
        Json j = Json::object();
        j["delta"] = d;
        j["frobenius"] = frobenius_norm(m);
        j["trace"] = io::complex_to_json(trace(m));
        j["offdiagonal"] = lu;
        emit(c, j.dump(2) + "\n");
    } else {
        std::ostringstream s;
        s << "delta      = " << fmt(d) << "\n||M||_F    = " << fmt(frobenius_norm(m)) << "\ntr M       = "
          << fmt(trace(m)) << "\n||L+U||_F  = " << fmt(lu) << "\n";
        emit(c, s.str());
    }
    return kExitPass;
}

int cmd_example(const Common& c, int n, int p, int m, double t, double kappa, const std::string& spec_file) {
    require_format(c, {"text", "json"});
    const JordanSpec spec = spec_file.empty() ? example_spec(n, p, m, kappa, c.seed) : io::read_spec_file(spec_file);
    BlockOptions options;
    options.tol = c.tol;
    const ExampleTable table = example_scalar_table(n, p, m, t, spec, options, c.seed);
    const double d2_diff = std::abs(table.d2 - table.d2_expected);
    const bool ok = table.max_rel_diff <= 1e-10 && d2_diff <= 1e-10;
    if (c.format == "json") {
        Json j = Json::object();
        j["n"] = n;
        j["p"] = p;
        j["m"] = m;
        j["t"] = t;
        j["kappa_q"] = spec.kappa_q();
        j["s1"] = table.s1;
        Json rows = Json::array();
        for (const auto& r : table.rows) {
            Json jr = Json::object();
            jr["estimate"] = std::string(to_string(r.id));
            jr["closed_form"] = r.closed_form_text;
            jr["closed_form_value"] = r.closed_form;
            jr["numeric"] = r.numeric;
            jr["rel_diff"] = r.rel_diff;
            rows.push_back(std::move(jr));
        }
        j["rows"] = std::move(rows);
        j["d2"] = table.d2;
        j["d2_expected"] = table.d2_expected;
        j["pass"] = ok;
        emit(c, j.dump(2) + "\n");
    } else {
        std::ostringstream s;
        char line[256];
        s << "E = tI, n = " << n << ", p = " << p << ", m = " << m << ", t = " << fmt(t)
          << ", kappa2(Q) = " << fmt(spec.kappa_q()) << ", s1 = " << table.s1 << "\n\n";
        std::snprintf(line, sizeof(line), "%-9s %-24s %-24s %s\n", "estimate", "closed form", "numeric", "rel diff");
        s << line;
        for (const auto& r : table.rows) {
            std::snprintf(line, sizeof(line), "%-9s %-24s %-24s %.2e   %s\n", std::string(to_string(r.id)).c_str(),
                          fmt(r.closed_form).c_str(), fmt(r.numeric).c_str(), r.rel_diff, r.closed_form_text.c_str());
            s << line;
        }
        s << "\nD2 = " << fmt(table.d2) << ", sqrt(n)|t| = " << fmt(table.d2_expected) << "\n";
        emit(c, s.str());
    }
    return ok ? kExitPass : kExitViolation;
}

struct SweepArgs {
    SweepConfig config;
    std::string profile = "mixed";
    std::string kind = "gaussian";
    std::string s_mode = "pessimistic";
    std::string spec_file;
    std::string config_file;
};

int cmd_sweep(Common& c, SweepArgs& a) {
    if (c.format == "text") {
        c.format = "csv";
    }
    require_format(c, {"csv", "json"});
    SweepConfig config;
    if (!a.config_file.empty()) {
        config = io::sweep_config_from_json(io::parse_text(io::read_text_file(a.config_file), a.config_file),
                                            a.config_file);
    } else {
        config = a.config;
        config.seed = c.seed;
        auto profile = parse_block_profile(a.profile);
        auto kind = parse_perturbation_kind(a.kind);
        auto mode = parse_s_mode(a.s_mode);
        if (!profile) {
            throw ConfigError("unknown --profile \"" + a.profile + "\"");
        }
        if (!kind) {
            throw ConfigError("unknown --perturbation \"" + a.kind + "\"");
        }
        if (!mode) {
            throw ConfigError("unknown --s-mode \"" + a.s_mode + "\"");
        }
        config.block_profile = *profile;
        config.perturbation.kind = *kind;
        config.s_mode = *mode;
        config.tolerances.block.tol = c.tol;
        if (!a.spec_file.empty()) {
            config.user_spec = io::read_spec_file(a.spec_file);
        }
    }
    const Report report = run_sweep(config);
    if (c.out.empty()) {
        if (c.format == "json") {
            std::cout << io::report_to_json(report).dump(2) << "\n";
        } else {
            std::cout << io::report_to_csv(report, io::utc_timestamp());
        }
    } else {
        io::write_report(report, c.out, c.format == "json" ? io::ReportFormat::Json : io::ReportFormat::Csv);
    }

    const auto& s = report.summary;
    std::fprintf(stderr, "trials %d  ok %d  violating %d  infrastructure failures %d  envelope failures %d\n", s.trials,
                 s.ok, s.violating_trials, s.infrastructure_failures, s.lemma_failures);
    if (s.min_song_minus_up1_1) {
        std::fprintf(stderr, "min(SONG - UP1_1) = %.3e\n", *s.min_song_minus_up1_1);
    }
    if (s.min_li_chen_minus_up2_1) {
        std::fprintf(stderr, "min(LI_CHEN - UP2_1) = %.3e\n", *s.min_li_chen_minus_up2_1);
    }
    if (!report.passed()) {
        return kExitViolation;
    }
    return s.infrastructure_failures > 0 ? kExitError : kExitPass;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Eigenvalue perturbation bounds for matrices with a prescribed Jordan form"};
    app.require_subcommand(1);

    Common common;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--seed", common.seed, "Random seed");
        sub->add_option("--tol", common.tol, "Relative null-space tolerance for s(.)");
        sub->add_option("--format", common.format, "Output format: text, json or csv");
        sub->add_option("--out", common.out, "Write output to this file instead of stdout");
    };

    std::string spec_file, matrix_file, perturbation_file, s_mode = "pessimistic";
    auto* bound = app.add_subcommand("bound", "Evaluate every bound on one instance");
    add_common(bound);
    bound->add_option("--spec", spec_file, "JordanSpec file");
    bound->add_option("--matrix", matrix_file, "Matrix file (diagonalizable A with separated eigenvalues)");
    bound->add_option("--perturbation", perturbation_file, "Matrix file holding E")->required();
    bound->add_option("--s-mode", s_mode, "computed or pessimistic");

    std::string a_file, b_file;
    auto* match = app.add_subcommand("match", "Optimal matching distance between two spectra");
    add_common(match);
    match->add_option("first", a_file, "Spectrum or matrix file")->required();
    match->add_option("second", b_file, "Spectrum or matrix file")->required();

    auto* snum = app.add_subcommand("s-number", "Maximal number of unitary diagonal blocks");
    add_common(snum);
    snum->add_option("--matrix", matrix_file, "Matrix file")->required();

    auto* dcmd = app.add_subcommand("delta", "Trace-deflated Frobenius norm");
    add_common(dcmd);
    dcmd->add_option("--matrix", matrix_file, "Matrix file")->required();

    int n = 4, p = 2, m = 2;
    double t = 0.05, kappa = 5.0;
    auto* ex = app.add_subcommand("example", "Bounds for E = tI against their closed forms");
    add_common(ex);
    ex->add_option("--n", n, "Dimension");
    ex->add_option("--p", p, "Number of Jordan blocks");
    ex->add_option("--m", m, "Largest block size");
    ex->add_option("--t", t, "Scalar perturbation, 0 < |t| < 1/sqrt(n)");
    ex->add_option("--kappa", kappa, "Condition number of the generated Q");
    ex->add_option("--spec", spec_file, "Use this JordanSpec instead of a generated one");

    SweepArgs sw;
    auto* sweep = app.add_subcommand("sweep", "Seeded verification sweep");
    add_common(sweep);
    sweep->add_option("--trials", sw.config.trials, "Number of instances");
    sweep->add_option("--n-min", sw.config.n_min, "Smallest dimension");
    sweep->add_option("--n-max", sw.config.n_max, "Largest dimension");
    sweep->add_option("--profile", sw.profile, "diagonalizable, single-jordan, mixed or user-file");
    sweep->add_option("--spec", sw.spec_file, "JordanSpec file for the user-file profile");
    sweep->add_option("--perturbation", sw.kind, "gaussian, scalar, rank1 or zero");
    sweep->add_option("--scale", sw.config.perturbation.scales, "||E||_F (or t for scalar), cycled over trials");
    sweep->add_option("--kappa", sw.config.target_kappas, "Target kappa2(Q), cycled over trials");
    sweep->add_option("--s-mode", sw.s_mode, "computed or pessimistic");
    sweep->add_option("--config", sw.config_file, "Read the whole SweepConfig from a JSON file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitPass : kExitError;
    }

    try {
        if (*bound) {
            return cmd_bound(common, spec_file, matrix_file, perturbation_file, s_mode);
        }
        if (*match) {
            return cmd_match(common, a_file, b_file);
        }
        if (*snum) {
            return cmd_s_number(common, matrix_file);
        }
        if (*dcmd) {
            return cmd_delta(common, matrix_file);
        }
        if (*ex) {
            return cmd_example(common, n, p, m, t, kappa, spec_file);
        }
        if (*sweep) {
            return cmd_sweep(common, sw);
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "specvar: %s\n", e.what());
        return kExitError;
    }
    return kExitError;
}
