#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "specvar/jordan.hpp"
#include "specvar/matrix.hpp"
#include "specvar/spectrum.hpp"

namespace specvar::io {

using Json = nlohmann::ordered_json;

// Matrix documents:
//
//   {"n_rows": 2, "n_cols": 2, "entries": [[re, im], [re, im], [re, im], [re, im]]}
//
// Entries are row-major [re, im] pairs. A component may also be one of the
// strings "nan", "inf" or "-inf" so that such values can be written down and
// rejected with a field path rather than a syntax error.
//
// JordanSpec documents:
//
//   {"blocks": [{"lambda": [re, im], "size": 2}, ...],
//    "q": <matrix document> | "identity" | {"random_seed": 7, "target_kappa": 10.0}}
//
// Spectrum documents: {"values": [[re, im], ...]} or a bare array of pairs.

Json complex_to_json(const Complex& z);
Complex complex_from_json(const Json& j, const std::string& path);

Json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& j, const std::string& path = "$");

Json spec_to_json(const JordanSpec& spec);
JordanSpec spec_from_json(const Json& j, const std::string& path = "$");

Json spectrum_to_json(const Spectrum& s);
Spectrum spectrum_from_json(const Json& j, const std::string& path = "$");

/// Parses text; syntax errors become ParseError with the line and column.
Json parse_text(const std::string& text, const std::string& source);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

ComplexMatrix read_matrix_file(const std::filesystem::path& path);
void write_matrix_file(const std::filesystem::path& path, const ComplexMatrix& m);

JordanSpec read_spec_file(const std::filesystem::path& path);
void write_spec_file(const std::filesystem::path& path, const JordanSpec& spec);

Spectrum read_spectrum_file(const std::filesystem::path& path);

/// Shortest decimal string that parses back to exactly `x`.
std::string format_double(double x);

/// Inverse of format_double; accepts "nan", "inf" and "-inf".
double parse_double(const std::string& text, const std::string& path);

} // namespace specvar::io
