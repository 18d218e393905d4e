#include "specvar/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <sstream>

#include "specvar/error.hpp"

namespace specvar::io {

namespace {

Json num(double x) {
    if (std::isfinite(x)) {
        return x;
    }
    return format_double(x);
}

const Json& at(const Json& j, const char* key, const std::string& path) {
    if (!j.is_object()) {
        throw ParseError(path + ": expected an object");
    }
    auto it = j.find(key);
    if (it == j.end()) {
        throw ParseError(path + ": missing field \"" + key + "\"");
    }
    return *it;
}

double get_double(const Json& j, const char* key, const std::string& path) {
    const Json& v = at(j, key, path);
    if (v.is_number()) {
        return v.get<double>();
    }
    if (v.is_string()) {
        return parse_double(v.get<std::string>(), path + "." + key);
    }
    throw ParseError(path + "." + key + ": expected a number");
}

std::optional<double> get_optional_double(const Json& j, const char* key, const std::string& path) {
    if (at(j, key, path).is_null()) {
        return std::nullopt;
    }
    return get_double(j, key, path);
}

Json optional_num(const std::optional<double>& x) {
    return x ? num(*x) : Json(nullptr);
}

int get_int(const Json& j, const char* key, const std::string& path) {
    const Json& v = at(j, key, path);
    if (!v.is_number_integer()) {
        throw ParseError(path + "." + key + ": expected an integer");
    }
    return v.get<int>();
}

bool get_bool(const Json& j, const char* key, const std::string& path) {
    const Json& v = at(j, key, path);
    if (!v.is_boolean()) {
        throw ParseError(path + "." + key + ": expected a boolean");
    }
    return v.get<bool>();
}

std::string get_string(const Json& j, const char* key, const std::string& path) {
    const Json& v = at(j, key, path);
    if (!v.is_string()) {
        throw ParseError(path + "." + key + ": expected a string");
    }
    return v.get<std::string>();
}

const Json& get_array(const Json& j, const char* key, const std::string& path) {
    const Json& v = at(j, key, path);
    if (!v.is_array()) {
        throw ParseError(path + "." + key + ": expected an array");
    }
    return v;
}

template <typename T, typename F>
T get_enum(const Json& j, const char* key, const std::string& path, F parse) {
    const std::string s = get_string(j, key, path);
    auto v = parse(s);
    if (!v) {
        throw ParseError(path + "." + key + ": unknown value \"" + s + "\"");
    }
    return *v;
}

BoundId get_bound_id(const Json& j, const char* key, const std::string& path) {
    return get_enum<BoundId>(j, key, path, parse_bound_id);
}

std::string index_path(const std::string& path, const char* key, std::size_t k) {
    return path + "." + key + "[" + std::to_string(k) + "]";
}

Json inputs_to_json(const BoundInputs& in) {
    Json j = Json::object();
    j["n"] = in.n;
    j["p"] = in.p;
    j["m"] = in.m;
    j["delta_eq"] = num(in.delta_eq);
    j["norm_eq"] = num(in.norm_eq);
    j["abs_trace_e"] = num(in.abs_trace_e);
    j["norm_e"] = num(in.norm_e);
    j["delta_e"] = num(in.delta_e);
    j["s_tilde"] = in.s_tilde;
    j["s1"] = in.s1;
    j["s2"] = in.s2;
    j["s3"] = in.s3;
    j["s4"] = in.s4;
    return j;
}

BoundInputs inputs_from_json(const Json& j, const std::string& path) {
    BoundInputs in;
    in.n = get_int(j, "n", path);
    in.p = get_int(j, "p", path);
    in.m = get_int(j, "m", path);
    in.delta_eq = get_double(j, "delta_eq", path);
    in.norm_eq = get_double(j, "norm_eq", path);
    in.abs_trace_e = get_double(j, "abs_trace_e", path);
    in.norm_e = get_double(j, "norm_e", path);
    in.delta_e = get_double(j, "delta_e", path);
    in.s_tilde = get_int(j, "s_tilde", path);
    in.s1 = get_int(j, "s1", path);
    in.s2 = get_int(j, "s2", path);
    in.s3 = get_int(j, "s3", path);
    in.s4 = get_int(j, "s4", path);
    return in;
}

Json bound_to_json(const BoundResult& r) {
    Json j = Json::object();
    j["id"] = std::string(to_string(r.id));
    j["applicable"] = r.applicable;
    j["value"] = num(r.value);
    j["branch"] = r.branch;
    j["reason"] = r.reason;
    j["inputs"] = inputs_to_json(r.inputs);
    return j;
}

BoundResult bound_from_json(const Json& j, const std::string& path) {
    BoundResult r;
    r.id = get_bound_id(j, "id", path);
    r.applicable = get_bool(j, "applicable", path);
    r.value = get_double(j, "value", path);
    r.branch = get_string(j, "branch", path);
    r.reason = get_string(j, "reason", path);
    r.inputs = inputs_from_json(at(j, "inputs", path), path + ".inputs");
    return r;
}

Json slack_to_json(const BoundSlack& s) {
    Json j = Json::object();
    j["id"] = std::string(to_string(s.id));
    j["value"] = num(s.value);
    j["slack"] = num(s.slack);
    j["violation"] = s.violation;
    return j;
}

BoundSlack slack_from_json(const Json& j, const std::string& path) {
    BoundSlack s;
    s.id = get_bound_id(j, "id", path);
    s.value = get_double(j, "value", path);
    s.slack = get_double(j, "slack", path);
    s.violation = get_bool(j, "violation", path);
    return s;
}

Json lemma_to_json(const LemmaCheck& lc) {
    Json j = Json::object();
    j["eps"] = num(lc.eps);
    j["phi"] = num(lc.phi);
    j["margin"] = num(lc.margin);
    j["scaled_eq_norm_sq"] = num(lc.parts.scaled_eq_norm_sq);
    j["scaled_eq_bound"] = num(lc.parts.scaled_eq_bound);
    j["cross_term"] = num(lc.parts.cross_term);
    j["cross_bound"] = num(lc.parts.cross_bound);
    j["omega_norm_sq"] = num(lc.parts.omega_norm_sq);
    j["omega_expected"] = num(lc.parts.omega_expected);
    j["pass"] = lc.pass;
    return j;
}

LemmaCheck lemma_from_json(const Json& j, const std::string& path) {
    LemmaCheck lc;
    lc.eps = get_double(j, "eps", path);
    lc.phi = get_double(j, "phi", path);
    lc.margin = get_double(j, "margin", path);
    lc.parts.scaled_eq_norm_sq = get_double(j, "scaled_eq_norm_sq", path);
    lc.parts.scaled_eq_bound = get_double(j, "scaled_eq_bound", path);
    lc.parts.cross_term = get_double(j, "cross_term", path);
    lc.parts.cross_bound = get_double(j, "cross_bound", path);
    lc.parts.omega_norm_sq = get_double(j, "omega_norm_sq", path);
    lc.parts.omega_expected = get_double(j, "omega_expected", path);
    lc.pass = get_bool(j, "pass", path);
    return lc;
}

Json summary_to_json(const ReportSummary& s) {
    Json j = Json::object();
    j["trials"] = s.trials;
    j["ok"] = s.ok;
    j["violating_trials"] = s.violating_trials;
    j["infrastructure_failures"] = s.infrastructure_failures;
    j["violations"] = s.violations;
    Json per = Json::array();
    for (const auto& b : s.per_bound) {
        Json jb = Json::object();
        jb["id"] = std::string(to_string(b.id));
        jb["evaluated"] = b.evaluated;
        jb["violations"] = b.violations;
        jb["min_slack"] = optional_num(b.min_slack);
        per.push_back(std::move(jb));
    }
    j["per_bound"] = std::move(per);
    j["min_song_minus_up1_1"] = optional_num(s.min_song_minus_up1_1);
    j["min_li_chen_minus_up2_1"] = optional_num(s.min_li_chen_minus_up2_1);
    j["sharpness_pass"] = s.sharpness_pass;
    j["min_lemma_margin_ratio"] = optional_num(s.min_lemma_margin_ratio);
    j["lemma_failures"] = s.lemma_failures;
    return j;
}

ReportSummary summary_from_json(const Json& j, const std::string& path) {
    ReportSummary s;
    s.trials = get_int(j, "trials", path);
    s.ok = get_int(j, "ok", path);
    s.violating_trials = get_int(j, "violating_trials", path);
    s.infrastructure_failures = get_int(j, "infrastructure_failures", path);
    s.violations = get_int(j, "violations", path);
    const Json& per = get_array(j, "per_bound", path);
    for (std::size_t k = 0; k < per.size(); ++k) {
        const std::string bp = index_path(path, "per_bound", k);
        BoundSummary b;
        b.id = get_bound_id(per[k], "id", bp);
        b.evaluated = get_int(per[k], "evaluated", bp);
        b.violations = get_int(per[k], "violations", bp);
        b.min_slack = get_optional_double(per[k], "min_slack", bp);
        s.per_bound.push_back(b);
    }
    s.min_song_minus_up1_1 = get_optional_double(j, "min_song_minus_up1_1", path);
    s.min_li_chen_minus_up2_1 = get_optional_double(j, "min_li_chen_minus_up2_1", path);
    s.sharpness_pass = get_bool(j, "sharpness_pass", path);
    s.min_lemma_margin_ratio = get_optional_double(j, "min_lemma_margin_ratio", path);
    s.lemma_failures = get_int(j, "lemma_failures", path);
    return s;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    return out + "\"";
}

std::vector<std::string> split_csv_line(const std::string& line, const std::string& where) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (quoted) {
        throw ParseError(where + ": unterminated quoted field");
    }
    fields.push_back(std::move(cur));
    return fields;
}

constexpr const char* kCsvHeader = "trial,bound_id,branch,value,d2,slack";

} // namespace

std::optional<ReportFormat> parse_report_format(std::string_view s) {
    if (s == "csv") {
        return ReportFormat::Csv;
    }
    if (s == "json") {
        return ReportFormat::Json;
    }
    return std::nullopt;
}

std::vector<CsvRow> csv_rows(const Report& report) {
    std::vector<CsvRow> rows;
    for (const auto& rec : report.records) {
        for (const auto& sl : rec.slacks) {
            CsvRow row;
            row.trial = rec.trial;
            row.bound_id = sl.id;
            for (const auto& b : rec.bounds) {
                if (b.id == sl.id) {
                    row.branch = b.branch;
                }
            }
            row.value = sl.value;
            row.d2 = rec.d2;
            row.slack = sl.slack;
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

std::string report_to_csv(const Report& report, const std::string& generated_at) {
    std::ostringstream out;
    out << "# generated_at=" << generated_at << '\n' << kCsvHeader << '\n';
    for (const auto& row : csv_rows(report)) {
        out << row.trial << ',' << to_string(row.bound_id) << ',' << csv_field(row.branch) << ','
            << format_double(row.value) << ',' << format_double(row.d2) << ',' << format_double(row.slack) << '\n';
    }
    return out.str();
}

std::vector<CsvRow> csv_from_text(const std::string& text, const std::string& source) {
    std::istringstream in(text);
    std::string line;
    std::vector<CsvRow> rows;
    bool header_seen = false;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty() || line[0] == '#') {
            continue;
        }
        const std::string where = source + ":" + std::to_string(line_no);
        if (!header_seen) {
            if (line != kCsvHeader) {
                throw ParseError(where + ": expected header \"" + std::string(kCsvHeader) + "\"");
            }
            header_seen = true;
            continue;
        }
        const auto f = split_csv_line(line, where);
        if (f.size() != 6) {
            throw ParseError(where + ": expected 6 fields, found " + std::to_string(f.size()));
        }
        CsvRow row;
        try {
            std::size_t used = 0;
            row.trial = std::stoi(f[0], &used);
            if (used != f[0].size()) {
                throw std::invalid_argument("trial");
            }
        } catch (const std::exception&) {
            throw ParseError(where + ": trial: not an integer: \"" + f[0] + "\"");
        }
        auto id = parse_bound_id(f[1]);
        if (!id) {
            throw ParseError(where + ": bound_id: unknown bound \"" + f[1] + "\"");
        }
        row.bound_id = *id;
        row.branch = f[2];
        row.value = parse_double(f[3], where + ": value");
        row.d2 = parse_double(f[4], where + ": d2");
        row.slack = parse_double(f[5], where + ": slack");
        rows.push_back(std::move(row));
    }
    if (!header_seen) {
        throw ParseError(source + ": missing header line");
    }
    return rows;
}

Json sweep_config_to_json(const SweepConfig& c) {
    Json j = Json::object();
    j["seed"] = c.seed;
    j["trials"] = c.trials;
    j["n_min"] = c.n_min;
    j["n_max"] = c.n_max;
    j["block_profile"] = std::string(to_string(c.block_profile));
    j["user_spec"] = c.user_spec ? spec_to_json(*c.user_spec) : Json(nullptr);
    Json pert = Json::object();
    pert["kind"] = std::string(to_string(c.perturbation.kind));
    Json scales = Json::array();
    for (double s : c.perturbation.scales) {
        scales.push_back(num(s));
    }
    pert["scales"] = std::move(scales);
    j["perturbation"] = std::move(pert);
    Json kappas = Json::array();
    for (double k : c.target_kappas) {
        kappas.push_back(num(k));
    }
    j["target_kappas"] = std::move(kappas);
    j["s_mode"] = std::string(to_string(c.s_mode));
    Json tol = Json::object();
    tol["slack"] = num(c.tolerances.slack);
    tol["lemma"] = num(c.tolerances.lemma);
    tol["sharpness"] = num(c.tolerances.sharpness);
    tol["s_tol"] = num(c.tolerances.block.tol);
    tol["gap_tol"] = num(c.tolerances.block.gap_tol);
    tol["block_tol"] = num(c.tolerances.block.block_tol);
    tol["draws"] = c.tolerances.block.draws;
    j["tolerances"] = std::move(tol);
    j["eps_grid_points"] = c.eps_grid_points;
    return j;
}

SweepConfig sweep_config_from_json(const Json& j, const std::string& path) {
    SweepConfig c;
    const Json& seed = at(j, "seed", path);
    if (!seed.is_number_unsigned() && !(seed.is_number_integer() && seed.get<long long>() >= 0)) {
        throw ParseError(path + ".seed: expected a nonnegative integer");
    }
    c.seed = seed.get<std::uint64_t>();
    c.trials = get_int(j, "trials", path);
    c.n_min = get_int(j, "n_min", path);
    c.n_max = get_int(j, "n_max", path);
    c.block_profile = get_enum<BlockProfile>(j, "block_profile", path, parse_block_profile);
    const Json& us = at(j, "user_spec", path);
    if (!us.is_null()) {
        c.user_spec = spec_from_json(us, path + ".user_spec");
    }
    const Json& pert = at(j, "perturbation", path);
    c.perturbation.kind = get_enum<PerturbationKind>(pert, "kind", path + ".perturbation", parse_perturbation_kind);
    c.perturbation.scales.clear();
    const Json& scales = get_array(pert, "scales", path + ".perturbation");
    for (std::size_t k = 0; k < scales.size(); ++k) {
        Json wrap = Json::object();
        wrap["v"] = scales[k];
        c.perturbation.scales.push_back(get_double(wrap, "v", index_path(path + ".perturbation", "scales", k)));
    }
    c.target_kappas.clear();
    const Json& kappas = get_array(j, "target_kappas", path);
    for (std::size_t k = 0; k < kappas.size(); ++k) {
        Json wrap = Json::object();
        wrap["v"] = kappas[k];
        c.target_kappas.push_back(get_double(wrap, "v", index_path(path, "target_kappas", k)));
    }
    c.s_mode = get_enum<SMode>(j, "s_mode", path, parse_s_mode);
    const Json& tol = at(j, "tolerances", path);
    const std::string tp = path + ".tolerances";
    c.tolerances.slack = get_double(tol, "slack", tp);
    c.tolerances.lemma = get_double(tol, "lemma", tp);
    c.tolerances.sharpness = get_double(tol, "sharpness", tp);
    c.tolerances.block.tol = get_double(tol, "s_tol", tp);
    c.tolerances.block.gap_tol = get_double(tol, "gap_tol", tp);
    c.tolerances.block.block_tol = get_double(tol, "block_tol", tp);
    c.tolerances.block.draws = get_int(tol, "draws", tp);
    c.eps_grid_points = get_int(j, "eps_grid_points", path);
    return c;
}

Json record_to_json(const TrialRecord& r) {
    Json j = Json::object();
    j["trial"] = r.trial;
    j["digest"] = r.digest;
    j["status"] = std::string(to_string(r.status));
    j["failure"] = r.failure;
    j["n"] = r.n;
    j["p"] = r.p;
    j["m"] = r.m;
    j["kappa_q"] = num(r.kappa_q);
    j["norm_e"] = num(r.norm_e);
    j["norm_eq"] = num(r.norm_eq);
    j["delta_eq"] = num(r.delta_eq);
    j["trace_e"] = Json::array({num(r.trace_e.real()), num(r.trace_e.imag())});
    j["kappa_majorant"] = num(r.kappa_majorant);
    j["rank_majorant"] = num(r.rank_majorant);
    j["s_values"] = Json::array({r.s_values.s1, r.s_values.s2, r.s_values.s3, r.s_values.s4});
    j["s_tilde"] = r.s_tilde;
    j["spectrum_route"] = std::string(to_string(r.spectrum_route));
    j["d2"] = num(r.d2);
    j["d_inf"] = num(r.d_inf);
    Json bounds = Json::array();
    for (const auto& b : r.bounds) {
        bounds.push_back(bound_to_json(b));
    }
    j["bounds"] = std::move(bounds);
    Json slacks = Json::array();
    for (const auto& s : r.slacks) {
        slacks.push_back(slack_to_json(s));
    }
    j["slacks"] = std::move(slacks);
    Json lemma = Json::array();
    for (const auto& lc : r.lemma24) {
        lemma.push_back(lemma_to_json(lc));
    }
    j["lemma24"] = std::move(lemma);
    return j;
}

TrialRecord record_from_json(const Json& j, const std::string& path) {
    TrialRecord r;
    r.trial = get_int(j, "trial", path);
    r.digest = get_string(j, "digest", path);
    r.status = get_enum<TrialStatus>(j, "status", path, parse_trial_status);
    r.failure = get_string(j, "failure", path);
    r.n = get_int(j, "n", path);
    r.p = get_int(j, "p", path);
    r.m = get_int(j, "m", path);
    r.kappa_q = get_double(j, "kappa_q", path);
    r.norm_e = get_double(j, "norm_e", path);
    r.norm_eq = get_double(j, "norm_eq", path);
    r.delta_eq = get_double(j, "delta_eq", path);
    const Json& tr = get_array(j, "trace_e", path);
    if (tr.size() != 2) {
        throw ParseError(path + ".trace_e: expected a [re, im] pair");
    }
    Json wrap = Json::object();
    wrap["re"] = tr[0];
    wrap["im"] = tr[1];
    r.trace_e = Complex(get_double(wrap, "re", path + ".trace_e"), get_double(wrap, "im", path + ".trace_e"));
    r.kappa_majorant = get_double(j, "kappa_majorant", path);
    r.rank_majorant = get_double(j, "rank_majorant", path);
    const Json& sv = get_array(j, "s_values", path);
    if (sv.size() != 4 || !std::all_of(sv.begin(), sv.end(), [](const Json& v) { return v.is_number_integer(); })) {
        throw ParseError(path + ".s_values: expected four integers");
    }
    r.s_values = {sv[0].get<int>(), sv[1].get<int>(), sv[2].get<int>(), sv[3].get<int>()};
    r.s_tilde = get_int(j, "s_tilde", path);
    r.spectrum_route = get_enum<SpectrumRoute>(j, "spectrum_route", path, parse_spectrum_route);
    r.d2 = get_double(j, "d2", path);
    r.d_inf = get_double(j, "d_inf", path);
    const Json& bounds = get_array(j, "bounds", path);
    for (std::size_t k = 0; k < bounds.size(); ++k) {
        r.bounds.push_back(bound_from_json(bounds[k], index_path(path, "bounds", k)));
    }
    const Json& slacks = get_array(j, "slacks", path);
    for (std::size_t k = 0; k < slacks.size(); ++k) {
        r.slacks.push_back(slack_from_json(slacks[k], index_path(path, "slacks", k)));
    }
    const Json& lemma = get_array(j, "lemma24", path);
    for (std::size_t k = 0; k < lemma.size(); ++k) {
        r.lemma24.push_back(lemma_from_json(lemma[k], index_path(path, "lemma24", k)));
    }
    return r;
}

Json report_to_json(const Report& report) {
    Json j = Json::object();
    j["config"] = sweep_config_to_json(report.config);
    Json records = Json::array();
    for (const auto& r : report.records) {
        records.push_back(record_to_json(r));
    }
    j["records"] = std::move(records);
    j["summary"] = summary_to_json(report.summary);
    return j;
}

Report report_from_json(const Json& j, const std::string& path) {
    Report report;
    report.config = sweep_config_from_json(at(j, "config", path), path + ".config");
    const Json& records = get_array(j, "records", path);
    for (std::size_t k = 0; k < records.size(); ++k) {
        report.records.push_back(record_from_json(records[k], index_path(path, "records", k)));
    }
    report.summary = summary_from_json(at(j, "summary", path), path + ".summary");
    return report;
}

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void write_report(const Report& report, const std::filesystem::path& path, ReportFormat format) {
    if (format == ReportFormat::Csv) {
        write_text_file(path, report_to_csv(report, utc_timestamp()));
    } else {
        write_text_file(path, report_to_json(report).dump(2) + "\n");
    }
}

Report read_report_json(const std::filesystem::path& path) {
    const std::string source = path.string();
    return report_from_json(parse_text(read_text_file(path), source), source);
}

std::vector<CsvRow> read_report_csv(const std::filesystem::path& path) {
    return csv_from_text(read_text_file(path), path.string());
}

} // namespace specvar::io
