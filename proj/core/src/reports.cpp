#include "anisoq/reports.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

#include "anisoq/errors.hpp"
#include "anisoq/experiment.hpp"
#include "anisoq/version.hpp"

namespace anisoq {

using nlohmann::json;

namespace {

std::string fixed(double v, int digits = 4) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << v;
  return os.str();
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

// Statistics for one table with CHSH cells pinned to the optimal settings of
// the exact state, matching how the measurement directions are chosen in the lab.
std::vector<Statistic> table_statistics(const ReferenceTable& table, const CorrelationData& exact) {
  std::vector<Statistic> stats;
  for (const auto& name : table.statistics) {
    Statistic s = Statistic::parse(name);
    if (s.kind == Statistic::Kind::Chsh2) s.dirs = optimal_chsh_settings(exact.of(s.pair)).dirs;
    stats.push_back(s);
  }
  return stats;
}

}  // namespace

Mode parse_mode(std::string_view text) {
  if (text == "exact") return Mode::Exact;
  if (text == "simulated") return Mode::Simulated;
  throw UsageError("unknown mode '" + std::string(text) + "' (expected exact or simulated)");
}

OutputFormat parse_format(std::string_view text) {
  if (text == "csv") return OutputFormat::Csv;
  if (text == "markdown" || text == "md") return OutputFormat::Markdown;
  if (text == "json") return OutputFormat::Json;
  throw UsageError("unknown format '" + std::string(text) + "' (expected csv, markdown or json)");
}

std::string_view to_string(Mode mode) { return mode == Mode::Exact ? "exact" : "simulated"; }

TableReport build_table_report(TableId id, const ReportConfig& config) {
  if (config.mode == Mode::Simulated && config.resamples < 100)
    throw UsageError("simulated reports need at least 100 bootstrap resamples");
  if (config.shots_per_setting < 1) throw UsageError("shots per setting must be >= 1");

  const ReferenceTable& table = reference_table(id);
  TableReport report;
  report.id = id;
  report.title = table.title;
  report.config = config;
  report.version = kVersion;
  report.headers = table.headers;

  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const ReferenceRow& ref = table.rows[r];
    const PureState3 state = prepare(ref.state);
    const CorrelationData exact = exact_correlations(state);
    const std::vector<Statistic> stats = table_statistics(table, exact);

    std::vector<double> values(stats.size());
    std::vector<std::optional<double>> errors(stats.size());
    if (config.mode == Mode::Exact) {
      for (std::size_t c = 0; c < stats.size(); ++c) values[c] = stats[c].evaluate(exact);
    } else {
      const auto records =
          simulate_counts(state, config.shots_per_setting, derive_seed(config.seed, 2 * r));
      const auto boot =
          bootstrap_errors(records, stats, config.resamples, derive_seed(config.seed, 2 * r + 1));
      for (std::size_t c = 0; c < stats.size(); ++c) {
        values[c] = boot[c].estimate;
        errors[c] = boot[c].std_error;
      }
    }

    ReportRow row{ref.label, {}};
    for (std::size_t c = 0; c < stats.size(); ++c) {
      ReportCell cell;
      cell.header = table.headers[c];
      cell.statistic = table.statistics[c];
      cell.value = values[c];
      cell.error = errors[c];
      cell.exact = stats[c].evaluate(exact);
      cell.reference = ref.cells[c];
      cell.tolerance = comparison_tolerance(cell.reference);
      cell.status = std::abs(cell.value - cell.reference.value) <= cell.tolerance
                        ? kStatusAgree
                        : kStatusSystematic;
      row.cells.push_back(std::move(cell));
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

json to_json(const TableReport& report) {
  json rows = json::array();
  for (const auto& row : report.rows) {
    json cells = json::array();
    for (const auto& c : row.cells) {
      json cell = {{"header", c.header},
                   {"statistic", c.statistic},
                   {"value", c.value},
                   {"exact", c.exact},
                   {"reference", {{"text", c.reference.text},
                                  {"value", c.reference.value},
                                  {"sigma", c.reference.sigma}}},
                   {"tolerance", c.tolerance},
                   {"status", c.status}};
      cell["error"] = c.error ? json(*c.error) : json(nullptr);
      cells.push_back(cell);
    }
    rows.push_back({{"label", row.label}, {"cells", cells}});
  }
  json provenance = {{"mode", to_string(report.config.mode)}, {"tool_version", report.version}};
  if (report.config.mode == Mode::Simulated) {
    provenance["seed"] = report.config.seed;
    provenance["shots_per_setting"] = report.config.shots_per_setting;
    provenance["resamples"] = report.config.resamples;
  }
  return {{"table", to_string(report.id)},
          {"title", report.title},
          {"provenance", provenance},
          {"headers", report.headers},
          {"rows", rows}};
}

std::string render(const TableReport& report, OutputFormat format) {
  std::ostringstream os;
  const bool simulated = report.config.mode == Mode::Simulated;
  switch (format) {
    case OutputFormat::Json:
      os << to_json(report).dump(2) << "\n";
      break;

    case OutputFormat::Csv:
      os << "# table=" << to_string(report.id) << " mode=" << to_string(report.config.mode);
      if (simulated)
        os << " seed=" << report.config.seed << " shots=" << report.config.shots_per_setting
           << " resamples=" << report.config.resamples;
      os << " version=" << report.version << "\n";
      os << "table,row,column,statistic,value,error,exact,reference,reference_sigma,tolerance,"
            "status\n";
      for (const auto& row : report.rows)
        for (const auto& c : row.cells) {
          os << to_string(report.id) << "," << csv_quote(row.label) << "," << csv_quote(c.header)
             << "," << c.statistic << "," << std::setprecision(10) << c.value << ","
             << (c.error ? fixed(*c.error, 6) : "") << "," << std::setprecision(10) << c.exact
             << "," << c.reference.value << "," << c.reference.sigma << "," << c.tolerance << ","
             << c.status << "\n";
        }
      break;

    case OutputFormat::Markdown: {
      os << "### " << to_string(report.id) << ": " << report.title << "\n\n";
      os << "mode: " << to_string(report.config.mode);
      if (simulated)
        os << ", seed: " << report.config.seed << ", shots/setting: "
           << report.config.shots_per_setting << ", resamples: " << report.config.resamples;
      os << ", version: " << report.version << "\n\n";
      os << "| state |";
      for (const auto& h : report.headers) os << " " << h << " |";
      os << "\n|---|";
      for (std::size_t i = 0; i < report.headers.size(); ++i) os << "---|";
      os << "\n";
      for (const auto& row : report.rows) {
        os << "| " << row.label << " |";
        for (const auto& c : row.cells) {
          os << " " << fixed(c.value, 3);
          if (c.error) os << "±" << fixed(*c.error, 3);
          os << " (ref " << c.reference.text << ")";
          if (c.status != kStatusAgree) os << " †";
          os << " |";
        }
        os << "\n";
      }
      os << "\n† reference cell outside max(5σ, 0.05) of the computed value\n";
      break;
    }
  }
  return os.str();
}

}  // namespace anisoq
