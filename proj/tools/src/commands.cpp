#include <CLI11.hpp>

#include <cmath>
#include <optional>
#include <sstream>

#include "anisoq/analysis.hpp"
#include "anisoq/errors.hpp"
#include "anisoq/experiment.hpp"
#include "anisoq/io.hpp"
#include "anisoq/reports.hpp"
#include "anisoq/version.hpp"
#include "anisoq_cli/cli.hpp"

namespace anisoq::cli {

namespace {

using nlohmann::json;

struct Options {
  std::string family;
  std::optional<double> phi, theta, phi_prime;
  std::string amplitudes;
  std::string input;
  std::string state_file;
  std::uint64_t shots = 5000;
  std::uint64_t seed = 1;
  std::size_t resamples = 200;
  std::string mode = "exact";
  std::string table;
  std::string suite;
  std::size_t trials = 10000;
  std::string out;
  std::string format = "csv";
};

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty())
    out << text;
  else
    io::write_text_file(path, text);
}

Amplitudes parse_amplitudes(const std::string& text) {
  std::string cleaned = text;
  for (char& c : cleaned)
    if (c == ',' || c == ';' || c == '[' || c == ']' || c == '(' || c == ')') c = ' ';
  std::istringstream is(cleaned);
  std::vector<double> values;
  std::string token;
  while (is >> token) {
    try {
      std::size_t used = 0;
      values.push_back(std::stod(token, &used));
      if (used != token.size()) throw std::invalid_argument(token);
    } catch (const std::exception&) {
      throw UsageError("--amplitudes: '" + token + "' is not a number");
    }
  }
  if (values.size() != 16)
    throw UsageError("--amplitudes: expected 8 re,im pairs (16 numbers), got " +
                     std::to_string(values.size()));
  Amplitudes a{};
  for (std::size_t i = 0; i < 8; ++i) a[i] = Complex(values[2 * i], values[2 * i + 1]);
  return a;
}

double require(const std::optional<double>& v, const char* flag, const std::string& family) {
  if (!v) throw UsageError(std::string(flag) + " is required for --family " + family);
  if (!std::isfinite(*v)) throw UsageError(std::string(flag) + " must be finite");
  return *v;
}

FamilyParams family_from_options(const Options& o) {
  if (o.family == "w") return FamilyParams::w(require(o.phi, "--phi", o.family),
                                              require(o.theta, "--theta", o.family));
  if (o.family == "ghz") return FamilyParams::ghz(require(o.phi_prime, "--phi-prime", o.family));
  if (o.family == "custom") {
    if (o.amplitudes.empty()) throw UsageError("--amplitudes is required for --family custom");
    return FamilyParams::custom(parse_amplitudes(o.amplitudes));
  }
  throw UsageError("--family must be w, ghz or custom, got '" + o.family + "'");
}

double norm_of(const PureState3& s) {
  double n = 0.0;
  for (const auto& z : s.amplitudes()) n += std::norm(z);
  return std::sqrt(n);
}

int cmd_prepare(const Options& o, std::ostream& out) {
  const FamilyParams params = family_from_options(o);
  // Validates the recipe (and custom normalization) before anything is written.
  const PureState3 state = prepare(params);
  const std::string text = io::state_to_json(params);
  if (o.out.empty()) {
    out << text;
    return kExitOk;
  }
  io::write_text_file(o.out, text);
  std::ostringstream os;
  os.precision(12);
  os << "family=" << o.family;
  if (params.family == Family::W_CLASS) os << " phi=" << params.phi_deg << " theta=" << params.theta_deg;
  if (params.family == Family::GHZ_CLASS) os << " phi_prime=" << params.phi_prime_deg;
  os << " norm=" << std::fixed << norm_of(state) << " -> " << o.out << "\n";
  out << os.str();
  return kExitOk;
}

int cmd_analyze(const Options& o, std::ostream& out) {
  const FamilyParams params = io::read_state_file(o.input);
  const PureState3 state = prepare(params);
  json report = {{"state", json::parse(io::state_to_json(params))},
                 {"analysis", to_json(analyze(state))}};
  emit(report.dump(2) + "\n", o.out, out);
  return kExitOk;
}

int cmd_simulate(const Options& o, std::ostream& out) {
  if (o.shots < 1) throw UsageError("--shots must be >= 1");
  const PureState3 state = prepare(io::read_state_file(o.input));
  const auto records = simulate_counts(state, o.shots, o.seed);
  std::ostringstream csv;
  io::write_counts_csv(csv, records);
  if (o.out.empty()) {
    out << csv.str();
    return kExitOk;
  }
  io::write_text_file(o.out, csv.str());
  std::uint64_t total = 0;
  for (const auto& r : records) total += r.total();
  out << "wrote " << o.out << ": 216 rows, " << total << " counts, seed " << o.seed << "\n";
  return kExitOk;
}

std::vector<Statistic> headline_statistics() {
  std::vector<std::string> names{"iso_sum"};
  for (Pair p : kPairs) {
    const std::string s(to_string(p));
    for (const char* prefix : {"iso_", "ds1_", "ds2_", "ds3_", "M_", "chsh2_", "conc_"})
      names.push_back(prefix + s);
  }
  for (const char* n : {"tangle", "conc2_diff_AB_AC", "M_half_diff_AB_AC", "iso_diff_AB_AC",
                        "bloch2_diff_C_B"})
    names.push_back(n);
  std::vector<Statistic> stats;
  for (const auto& n : names) stats.push_back(Statistic::parse(n));
  return stats;
}

int cmd_estimate(const Options& o, std::ostream& out) {
  const auto records = io::read_counts_file(o.input);
  const CorrelationData data = estimate_correlations(records);
  const auto stats = headline_statistics();
  const auto boot = bootstrap_errors(records, stats, o.resamples, o.seed);

  std::uint64_t total = 0;
  for (const auto& r : records) total += r.total();
  json statistics = json::array();
  for (std::size_t i = 0; i < stats.size(); ++i)
    statistics.push_back(
        {{"name", stats[i].name()}, {"value", boot[i].estimate}, {"std_error", boot[i].std_error}});

  json report = {{"source", {{"counts_file", o.input},
                             {"total_counts", total},
                             {"resamples", o.resamples},
                             {"seed", o.seed},
                             {"tool_version", kVersion}}},
                 {"analysis", to_json(analyze(data))},
                 {"statistics", statistics}};
  if (!o.state_file.empty()) {
    const FamilyParams params = io::read_state_file(o.state_file);
    const PureState3 target = prepare(params);
    const ThreeQubitDensity rho = tomography_reconstruct(records);
    report["tomography"] = {{"target", json::parse(io::state_to_json(params))},
                            {"fidelity", fidelity(rho, target)},
                            {"root_fidelity", root_fidelity(rho, target)}};
  }
  emit(report.dump(2) + "\n", o.out, out);
  return kExitOk;
}

int cmd_report(const Options& o, std::ostream& out) {
  ReportConfig cfg;
  cfg.mode = parse_mode(o.mode);
  cfg.seed = o.seed;
  cfg.shots_per_setting = o.shots;
  cfg.resamples = o.resamples;
  const OutputFormat format = parse_format(o.format);
  const TableReport report = build_table_report(parse_table_id(o.table), cfg);
  emit(render(report, format), o.out, out);
  return kExitOk;
}

int cmd_verify(const Options& o, std::ostream& out) {
  const VerifyResult r = run_verify_suite(o.suite, o.trials, o.seed);
  out << "suite " << r.suite << ": " << r.trials << " trials, seed " << o.seed << "\n";
  for (const auto& [name, value] : r.metrics) out << "  max " << name << " = " << value << "\n";
  if (r.passed) {
    out << "PASS\n";
    return kExitOk;
  }
  const std::string path = o.out.empty() ? "counterexample-" + r.suite + ".json" : o.out;
  io::write_state_file(path, FamilyParams::custom(r.counterexample->amplitudes()));
  out << "FAIL " << r.failure << "\n  counterexample written to " << path << "\n";
  return kExitVerification;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Anisotropic invariants of pure three-qubit states", "anisoq"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  auto* prepare_cmd = app.add_subcommand("prepare", "Write a state file for a state family");
  prepare_cmd->add_option("--family", o.family, "w, ghz or custom")->required();
  prepare_cmd->add_option("--phi", o.phi, "W-class phi in degrees");
  prepare_cmd->add_option("--theta", o.theta, "W-class theta in degrees");
  prepare_cmd->add_option("--phi-prime", o.phi_prime, "GHZ-class phi' in degrees");
  prepare_cmd->add_option("--amplitudes", o.amplitudes, "8 re,im pairs for --family custom");
  prepare_cmd->add_option("--out", o.out, "output path (default: stdout)");

  auto* analyze_cmd = app.add_subcommand("analyze", "Exact invariants of a state file");
  analyze_cmd->add_option("state", o.input, "state file")->required();
  analyze_cmd->add_option("--out", o.out, "output path (default: stdout)");

  auto* simulate_cmd = app.add_subcommand("simulate", "Poisson counts for all 27 settings");
  simulate_cmd->add_option("state", o.input, "state file")->required();
  simulate_cmd->add_option("--shots", o.shots, "mean shots per setting")->capture_default_str();
  simulate_cmd->add_option("--seed", o.seed, "master seed")->capture_default_str();
  simulate_cmd->add_option("--out", o.out, "output path (default: stdout)");

  auto* estimate_cmd = app.add_subcommand("estimate", "Invariants and bootstrap errors from counts");
  estimate_cmd->add_option("counts", o.input, "counts CSV")->required();
  estimate_cmd->add_option("--state", o.state_file, "target state file for tomography fidelity");
  estimate_cmd->add_option("--resamples", o.resamples, "bootstrap resamples")->capture_default_str();
  estimate_cmd->add_option("--seed", o.seed, "bootstrap seed")->capture_default_str();
  estimate_cmd->add_option("--out", o.out, "output path (default: stdout)");

  auto* report_cmd = app.add_subcommand("report", "Regenerate a published table");
  report_cmd->add_option("--table", o.table, "1, 2, 3, 5 or 6")->required();
  report_cmd->add_option("--mode", o.mode, "exact or simulated")->capture_default_str();
  report_cmd->add_option("--shots", o.shots, "shots per setting")->capture_default_str();
  report_cmd->add_option("--seed", o.seed, "master seed")->capture_default_str();
  report_cmd->add_option("--resamples", o.resamples, "bootstrap resamples")->capture_default_str();
  report_cmd->add_option("--format", o.format, "csv, markdown or json")->capture_default_str();
  report_cmd->add_option("--out", o.out, "output path (default: stdout)");

  auto* verify_cmd = app.add_subcommand("verify", "Property suite over Haar-random states");
  verify_cmd->add_option("--suite", o.suite, "suite name")->required();
  verify_cmd->add_option("--trials", o.trials, "number of random states")->capture_default_str();
  verify_cmd->add_option("--seed", o.seed, "master seed")->capture_default_str();
  verify_cmd->add_option("--out", o.out, "counterexample path on failure");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*prepare_cmd) return cmd_prepare(o, out);
    if (*analyze_cmd) return cmd_analyze(o, out);
    if (*simulate_cmd) return cmd_simulate(o, out);
    if (*estimate_cmd) return cmd_estimate(o, out);
    if (*report_cmd) return cmd_report(o, out);
    if (*verify_cmd) return cmd_verify(o, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ContractViolation& e) {
    err << "invalid input: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const IncompleteDataError& e) {
    err << "incomplete data: " << e.what() << "\n";
    return kExitIncomplete;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace anisoq::cli
