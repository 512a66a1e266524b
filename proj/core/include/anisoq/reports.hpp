#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "anisoq/reference_tables.hpp"

namespace anisoq {

enum class Mode { Exact, Simulated };
enum class OutputFormat { Csv, Markdown, Json };

Mode parse_mode(std::string_view text);
OutputFormat parse_format(std::string_view text);
std::string_view to_string(Mode mode);

struct ReportConfig {
  Mode mode = Mode::Exact;
  std::uint64_t shots_per_setting = 5000;
  std::uint64_t seed = 1;
  std::size_t resamples = 200;
};

// "agree" when |value - reference| <= max(5 sigma, 0.05); otherwise the
// reference cell is flagged as carrying an unmodelled systematic.
inline constexpr const char* kStatusAgree = "agree";
inline constexpr const char* kStatusSystematic = "reference-systematic";

struct ReportCell {
  std::string header;
  std::string statistic;
  double value = 0.0;
  std::optional<double> error;  // bootstrap std error, simulated mode only
  double exact = 0.0;
  ReferenceCell reference;
  double tolerance = 0.0;
  std::string status;
};

struct ReportRow {
  std::string label;
  std::vector<ReportCell> cells;
};

struct TableReport {
  TableId id = TableId::T1;
  std::string title;
  ReportConfig config;
  std::string version;
  std::vector<std::string> headers;
  std::vector<ReportRow> rows;
};

TableReport build_table_report(TableId id, const ReportConfig& config);

std::string render(const TableReport& report, OutputFormat format);
nlohmann::json to_json(const TableReport& report);

}  // namespace anisoq
