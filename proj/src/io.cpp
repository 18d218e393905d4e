#include "specvar/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "specvar/error.hpp"
#include "specvar/random_matrices.hpp"

namespace specvar::io {

namespace {

double component(const Json& j, const std::string& path) {
    double x = 0.0;
    if (j.is_number()) {
        x = j.get<double>();
    } else if (j.is_string()) {
        x = parse_double(j.get<std::string>(), path);
    } else {
        throw ParseError(path + ": expected a number");
    }
    if (!std::isfinite(x)) {
        throw ParseError(path + ": non-finite value is not admitted");
    }
    return x;
}

const Json& member(const Json& j, const char* key, const std::string& path) {
    if (!j.is_object()) {
        throw ParseError(path + ": expected an object");
    }
    auto it = j.find(key);
    if (it == j.end()) {
        throw ParseError(path + ": missing field \"" + key + "\"");
    }
    return *it;
}

long long integer(const Json& j, const std::string& path) {
    if (!j.is_number_integer()) {
        throw ParseError(path + ": expected an integer");
    }
    return j.get<long long>();
}

} // namespace

std::string format_double(double x) {
    if (std::isnan(x)) {
        return "nan";
    }
    if (std::isinf(x)) {
        return x > 0 ? "inf" : "-inf";
    }
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

double parse_double(const std::string& text, const std::string& path) {
    if (text == "nan" || text == "NaN") {
        return std::numeric_limits<double>::quiet_NaN();
    }
    if (text == "inf" || text == "Infinity") {
        return std::numeric_limits<double>::infinity();
    }
    if (text == "-inf" || text == "-Infinity") {
        return -std::numeric_limits<double>::infinity();
    }
    double x = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    auto res = std::from_chars(first, last, x);
    if (res.ec != std::errc() || res.ptr != last) {
        throw ParseError(path + ": not a number: \"" + text + "\"");
    }
    return x;
}

Json complex_to_json(const Complex& z) {
    return Json::array({z.real(), z.imag()});
}

Complex complex_from_json(const Json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 2) {
        throw ParseError(path + ": expected a [re, im] pair");
    }
    return {component(j[0], path + "[0]"), component(j[1], path + "[1]")};
}

Json matrix_to_json(const ComplexMatrix& m) {
    Json entries = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            entries.push_back(complex_to_json(m(i, j)));
        }
    }
    Json out = Json::object();
    out["n_rows"] = m.rows();
    out["n_cols"] = m.cols();
    out["entries"] = std::move(entries);
    return out;
}

ComplexMatrix matrix_from_json(const Json& j, const std::string& path) {
    const long long rows = integer(member(j, "n_rows", path), path + ".n_rows");
    const long long cols = integer(member(j, "n_cols", path), path + ".n_cols");
    if (rows < 1 || cols < 1) {
        throw ParseError(path + ": n_rows and n_cols must be positive");
    }
    const Json& entries = member(j, "entries", path);
    if (!entries.is_array()) {
        throw ParseError(path + ".entries: expected an array");
    }
    if (entries.size() != static_cast<std::size_t>(rows * cols)) {
        throw ParseError(path + ".entries: expected " + std::to_string(rows * cols) + " entries, found " +
                         std::to_string(entries.size()));
    }
    ComplexMatrix m(rows, cols);
    std::size_t k = 0;
    for (Eigen::Index r = 0; r < rows; ++r) {
        for (Eigen::Index c = 0; c < cols; ++c, ++k) {
            m(r, c) = complex_from_json(entries[k], path + ".entries[" + std::to_string(k) + "]");
        }
    }
    return m;
}

Json spec_to_json(const JordanSpec& spec) {
    Json blocks = Json::array();
    for (const auto& b : spec.blocks()) {
        Json jb = Json::object();
        jb["lambda"] = complex_to_json(b.lambda);
        jb["size"] = b.size;
        blocks.push_back(std::move(jb));
    }
    Json out = Json::object();
    out["blocks"] = std::move(blocks);
    out["q"] = matrix_to_json(spec.q());
    return out;
}

JordanSpec spec_from_json(const Json& j, const std::string& path) {
    const Json& jblocks = member(j, "blocks", path);
    if (!jblocks.is_array() || jblocks.empty()) {
        throw ParseError(path + ".blocks: expected a nonempty array");
    }
    std::vector<JordanBlock> blocks;
    int n = 0;
    for (std::size_t k = 0; k < jblocks.size(); ++k) {
        const std::string bp = path + ".blocks[" + std::to_string(k) + "]";
        JordanBlock b;
        b.lambda = complex_from_json(member(jblocks[k], "lambda", bp), bp + ".lambda");
        const long long size = integer(member(jblocks[k], "size", bp), bp + ".size");
        if (size < 1 || size > 100000) {
            throw ParseError(bp + ".size: must be a positive integer");
        }
        b.size = static_cast<int>(size);
        n += b.size;
        blocks.push_back(b);
    }

    const Json& jq = member(j, "q", path);
    ComplexMatrix q;
    if (jq.is_string()) {
        if (jq.get<std::string>() != "identity") {
            throw ParseError(path + ".q: unknown keyword \"" + jq.get<std::string>() + "\"");
        }
        q = ComplexMatrix::Identity(n, n);
    } else if (jq.is_object() && jq.contains("random_seed")) {
        const long long seed = integer(member(jq, "random_seed", path + ".q"), path + ".q.random_seed");
        const double kappa = component(member(jq, "target_kappa", path + ".q"), path + ".q.target_kappa");
        if (kappa < 1.0) {
            throw ParseError(path + ".q.target_kappa: must be >= 1");
        }
        Rng rng = make_rng(static_cast<std::uint64_t>(seed));
        q = conditioned_matrix(n, kappa, rng);
    } else {
        q = matrix_from_json(jq, path + ".q");
    }
    try {
        return JordanSpec(std::move(blocks), std::move(q));
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        throw ParseError(path + ": " + e.what());
    }
}

Json spectrum_to_json(const Spectrum& s) {
    Json values = Json::array();
    for (const auto& z : s.values()) {
        values.push_back(complex_to_json(z));
    }
    Json out = Json::object();
    out["values"] = std::move(values);
    return out;
}

Spectrum spectrum_from_json(const Json& j, const std::string& path) {
    const Json* arr = &j;
    std::string base = path;
    if (j.is_object()) {
        arr = &member(j, "values", path);
        base = path + ".values";
    }
    if (!arr->is_array() || arr->empty()) {
        throw ParseError(base + ": expected a nonempty array of [re, im] pairs");
    }
    std::vector<Complex> values;
    for (std::size_t k = 0; k < arr->size(); ++k) {
        values.push_back(complex_from_json((*arr)[k], base + "[" + std::to_string(k) + "]"));
    }
    return Spectrum(std::move(values));
}

Json parse_text(const std::string& text, const std::string& source) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(source + ": " + e.what());
    }
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError(path.string() + ": cannot open file for reading");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error(path.string() + ": cannot open file for writing");
    }
    out << text;
    if (!out) {
        throw Error(path.string() + ": write failed");
    }
}

ComplexMatrix read_matrix_file(const std::filesystem::path& path) {
    const std::string source = path.string();
    return matrix_from_json(parse_text(read_text_file(path), source), source);
}

void write_matrix_file(const std::filesystem::path& path, const ComplexMatrix& m) {
    write_text_file(path, matrix_to_json(m).dump(2) + "\n");
}

JordanSpec read_spec_file(const std::filesystem::path& path) {
    const std::string source = path.string();
    return spec_from_json(parse_text(read_text_file(path), source), source);
}

void write_spec_file(const std::filesystem::path& path, const JordanSpec& spec) {
    write_text_file(path, spec_to_json(spec).dump(2) + "\n");
}

Spectrum read_spectrum_file(const std::filesystem::path& path) {
    const std::string source = path.string();
    return spectrum_from_json(parse_text(read_text_file(path), source), source);
}

} // namespace specvar::io
