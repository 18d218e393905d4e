#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <limits>
#include <string>

#include "specvar/error.hpp"
#include "specvar/io.hpp"
#include "specvar/random_matrices.hpp"

using namespace specvar;
using io::Json;

namespace {

std::string parse_error_message(const std::string& text) {
    try {
        io::matrix_from_json(io::parse_text(text, "doc"));
    } catch (const ParseError& e) {
        return e.what();
    }
    return "";
}

} // namespace

TEST_CASE("matrix documents round-trip exactly") {
    Rng rng = make_rng(61);
    ComplexMatrix m = complex_gaussian(3, 4, rng);
    m(0, 0) = Complex(0.1, -1e-300);
    m(2, 3) = Complex(1.0 / 3.0, std::numeric_limits<double>::max());
    const std::string text = io::matrix_to_json(m).dump();
    const ComplexMatrix back = io::matrix_from_json(io::parse_text(text, "doc"));
    CHECK(back == m);
}

TEST_CASE("matrix layout is row-major") {
    const ComplexMatrix m = io::matrix_from_json(
        io::parse_text(R"({"n_rows": 2, "n_cols": 2, "entries": [[1,0],[2,0],[3,0],[4,1]]})", "doc"));
    CHECK(m(0, 1) == Complex(2, 0));
    CHECK(m(1, 0) == Complex(3, 0));
    CHECK(m(1, 1) == Complex(4, 1));
}

TEST_CASE("matrix parse errors name the field") {
    CHECK(parse_error_message(R"({"n_rows": 1, "n_cols": 2, "entries": [[1,0],[2,"nan"]]})").find("$.entries[1][1]") !=
          std::string::npos);
    CHECK(parse_error_message(R"({"n_rows": 1, "n_cols": 1, "entries": [["-inf",0]]})").find("$.entries[0][0]") !=
          std::string::npos);
    CHECK(parse_error_message(R"({"n_rows": 1, "n_cols": 2, "entries": [[1,0]]})").find("expected 2 entries") !=
          std::string::npos);
    CHECK(parse_error_message(R"({"n_cols": 2, "entries": []})").find("n_rows") != std::string::npos);
    CHECK(parse_error_message(R"({"n_rows": 1, "n_cols": 1, "entries": [[1]]})").find("[re, im]") !=
          std::string::npos);
    // syntax errors carry a position
    CHECK(parse_error_message("{\"n_rows\": 1,\n \"n_cols\" 1}").find("line 2") != std::string::npos);
}

TEST_CASE("spec documents") {
    const JordanSpec id = io::spec_from_json(
        io::parse_text(R"({"blocks": [{"lambda": [1, 0], "size": 2}, {"lambda": [0, 1], "size": 1}], "q": "identity"})",
                       "doc"));
    CHECK(id.n() == 3);
    CHECK(id.m() == 2);
    CHECK(id.q() == ComplexMatrix::Identity(3, 3));

    const JordanSpec rnd = io::spec_from_json(
        io::parse_text(R"({"blocks": [{"lambda": [1, 0], "size": 3}], "q": {"random_seed": 3, "target_kappa": 20}})",
                       "doc"));
    CHECK(rnd.kappa_q() == doctest::Approx(20.0).epsilon(1e-8));

    const JordanSpec back = io::spec_from_json(io::parse_text(io::spec_to_json(rnd).dump(), "doc"));
    CHECK(back.q() == rnd.q());
    CHECK(back.blocks() == rnd.blocks());

    CHECK_THROWS_AS(io::spec_from_json(io::parse_text(R"({"blocks": [{"lambda": [1, 0], "size": 2}], "q": "identity3"})",
                                                      "doc")),
                    ParseError);
    CHECK_THROWS_AS(io::spec_from_json(io::parse_text(
                        R"({"blocks": [{"lambda": [1, 0], "size": 2}], "q": {"n_rows": 2, "n_cols": 2,
                           "entries": [[1,0],[1,0],[1,0],[1,0]]}})",
                        "doc")),
                    ParseError);
    CHECK_THROWS_AS(io::spec_from_json(io::parse_text(R"({"blocks": [], "q": "identity"})", "doc")), ParseError);
}

TEST_CASE("spectrum documents") {
    const Spectrum a = io::spectrum_from_json(io::parse_text(R"({"values": [[2, 0], [1, 1]]})", "doc"));
    const Spectrum b = io::spectrum_from_json(io::parse_text(R"([[1, 1], [2, 0]])", "doc"));
    CHECK(a == b);
    CHECK(io::spectrum_from_json(io::spectrum_to_json(a)) == a);
}

TEST_CASE("shortest round-trip decimal") {
    for (double x : {0.1, 1.0 / 3.0, 1e-310, 123456789.125, -2.5e300}) {
        const std::string s = io::format_double(x);
        CHECK(io::parse_double(s, "x") == x);
    }
    CHECK(io::format_double(0.1) == "0.1");
    CHECK(std::isnan(io::parse_double("nan", "x")));
    CHECK(io::parse_double("-inf", "x") == -std::numeric_limits<double>::infinity());
    CHECK_THROWS_AS(io::parse_double("1.0x", "x"), ParseError);
}

TEST_CASE("files") {
    const auto dir = std::filesystem::temp_directory_path();
    const auto path = dir / "specvar_test_io_matrix.json";
    Rng rng = make_rng(62);
    const ComplexMatrix m = complex_gaussian(2, 2, rng);
    io::write_matrix_file(path, m);
    CHECK(io::read_matrix_file(path) == m);
    std::filesystem::remove(path);
    CHECK_THROWS_AS(io::read_matrix_file(dir / "specvar_no_such_file.json"), ParseError);
}
