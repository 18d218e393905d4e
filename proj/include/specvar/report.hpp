#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "specvar/harness.hpp"
#include "specvar/io.hpp"

namespace specvar::io {

enum class ReportFormat { Csv, Json };

std::optional<ReportFormat> parse_report_format(std::string_view s);

// CSV reports have one row per applicable bound of every trial:
//
//   # generated_at=2026-01-01T00:00:00Z
//   trial,bound_id,branch,value,d2,slack
//   0,SUN,A normal,0.123,0.045,0.078
//
// The first line is a timestamp comment; everything after it depends only on
// the report. Numbers use the shortest decimal form that parses back exactly.

struct CsvRow {
    int trial = 0;
    BoundId bound_id = BoundId::HW;
    std::string branch;
    double value = 0.0;
    double d2 = 0.0;
    double slack = 0.0;

    friend bool operator==(const CsvRow&, const CsvRow&) = default;
};

std::vector<CsvRow> csv_rows(const Report& report);

/// Header comment with the given timestamp, then the rows.
std::string report_to_csv(const Report& report, const std::string& generated_at);
/// Ignores '#' comment lines. Throws ParseError with the line number.
std::vector<CsvRow> csv_from_text(const std::string& text, const std::string& source = "csv");

/// Full report, including configuration, every record and the summary.
Json report_to_json(const Report& report);
Report report_from_json(const Json& j, const std::string& path = "$");

Json sweep_config_to_json(const SweepConfig& config);
SweepConfig sweep_config_from_json(const Json& j, const std::string& path = "$");

Json record_to_json(const TrialRecord& record);
TrialRecord record_from_json(const Json& j, const std::string& path);

/// Current UTC time as 2026-01-01T00:00:00Z.
std::string utc_timestamp();

void write_report(const Report& report, const std::filesystem::path& path, ReportFormat format);
Report read_report_json(const std::filesystem::path& path);
std::vector<CsvRow> read_report_csv(const std::filesystem::path& path);

} // namespace specvar::io
