#include "anisoq/io.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

#include "anisoq/errors.hpp"

namespace anisoq::io {

using nlohmann::json;

namespace {

double require_number(const json& obj, const char* field) {
  if (!obj.contains(field)) throw ParseError(std::string("state file: missing field '") + field + "'");
  const json& v = obj.at(field);
  if (!v.is_number())
    throw ParseError(std::string("state file: field '") + field + "' must be a number");
  return v.get<double>();
}

Vec3 require_vec3(const json& obj, const char* field) {
  if (!obj.contains(field))
    throw ParseError(std::string("directions file: missing field '") + field + "'");
  const json& v = obj.at(field);
  if (!v.is_array() || v.size() != 3)
    throw ParseError(std::string("directions file: field '") + field + "' must be [x, y, z]");
  Vec3 out{};
  for (std::size_t i = 0; i < 3; ++i) {
    if (!v[i].is_number())
      throw ParseError(std::string("directions file: field '") + field + "' has a non-number");
    out[i] = v[i].get<double>();
  }
  return out;
}

json parse_json(const std::string& text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  }
}

long parse_int(const std::string& cell, std::size_t line, const char* column) {
  long value = 0;
  const char* begin = cell.data();
  const char* end = cell.data() + cell.size();
  if (!cell.empty() && cell.front() == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || begin == end) {
    std::ostringstream os;
    os << "counts file line " << line << ": column '" << column << "' is not an integer: '"
       << cell << "'";
    throw ParseError(os.str());
  }
  return value;
}

std::string strip(std::string s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) s.pop_back();
  std::size_t i = 0;
  while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
  return s.substr(i);
}

}  // namespace

std::string state_to_json(const FamilyParams& params) {
  json j;
  switch (params.family) {
    case Family::W_CLASS:
      j["family"] = "w";
      j["phi_deg"] = params.phi_deg;
      j["theta_deg"] = params.theta_deg;
      break;
    case Family::GHZ_CLASS:
      j["family"] = "ghz";
      j["phi_prime_deg"] = params.phi_prime_deg;
      break;
    case Family::CUSTOM: {
      if (!params.amplitudes) throw UsageError("custom state has no amplitudes");
      j["family"] = "custom";
      json amps = json::array();
      for (const auto& z : *params.amplitudes) amps.push_back({z.real(), z.imag()});
      j["amplitudes"] = amps;
      break;
    }
  }
  return j.dump(2) + "\n";
}

FamilyParams state_from_json(const std::string& text) {
  const json j = parse_json(text, "state file");
  if (!j.is_object()) throw ParseError("state file: top level must be an object");
  if (!j.contains("family") || !j.at("family").is_string())
    throw ParseError("state file: missing string field 'family'");
  const std::string family = j.at("family").get<std::string>();
  if (family == "w") return FamilyParams::w(require_number(j, "phi_deg"), require_number(j, "theta_deg"));
  if (family == "ghz") return FamilyParams::ghz(require_number(j, "phi_prime_deg"));
  if (family == "custom") {
    if (!j.contains("amplitudes")) throw ParseError("state file: missing field 'amplitudes'");
    const json& a = j.at("amplitudes");
    if (!a.is_array() || a.size() != 8)
      throw ParseError("state file: field 'amplitudes' must hold 8 [re, im] pairs");
    Amplitudes amps{};
    for (std::size_t i = 0; i < 8; ++i) {
      const json& z = a[i];
      if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number()) {
        std::ostringstream os;
        os << "state file: amplitudes[" << i << "] must be [re, im]";
        throw ParseError(os.str());
      }
      amps[i] = Complex(z[0].get<double>(), z[1].get<double>());
    }
    return FamilyParams::custom(amps);
  }
  throw ParseError("state file: field 'family' must be \"w\", \"ghz\" or \"custom\", got \"" +
                   family + "\"");
}

void write_state_file(const std::filesystem::path& path, const FamilyParams& params) {
  write_text_file(path, state_to_json(params));
}

FamilyParams read_state_file(const std::filesystem::path& path) {
  return state_from_json(read_text_file(path));
}

std::string directions_to_json(const MeasurementDirections& dirs) {
  json j;
  j["a1"] = dirs.a1;
  j["a2"] = dirs.a2;
  j["b1"] = dirs.b1;
  j["b2"] = dirs.b2;
  return j.dump(2) + "\n";
}

MeasurementDirections directions_from_json(const std::string& text) {
  const json j = parse_json(text, "directions file");
  if (!j.is_object()) throw ParseError("directions file: top level must be an object");
  MeasurementDirections d{require_vec3(j, "a1"), require_vec3(j, "a2"), require_vec3(j, "b1"),
                          require_vec3(j, "b2")};
  d.validate();
  return d;
}

MeasurementDirections read_directions_file(const std::filesystem::path& path) {
  return directions_from_json(read_text_file(path));
}

void write_counts_csv(std::ostream& out, const std::vector<CountRecord>& records) {
  out << kCountsHeader << "\n";
  for (const auto& rec : records)
    for (int o = 0; o < 8; ++o) {
      out << rec.setting.j << "," << rec.setting.k << "," << rec.setting.l << ",";
      for (Party p : kParties) out << (outcome_sign(o, p) > 0 ? "+1" : "-1") << ",";
      out << rec.counts[o] << "\n";
    }
}

std::vector<CountRecord> read_counts_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line) || strip(line) != kCountsHeader)
    throw ParseError(std::string("counts file line 1: expected header '") + kCountsHeader + "'");

  std::map<int, CountRecord> by_setting;
  std::map<std::pair<int, int>, std::size_t> seen_rows;
  static constexpr std::array<const char*, 7> columns = {"j", "k", "l", "alpha", "beta", "gamma",
                                                         "count"};
  while (std::getline(in, line)) {
    ++line_no;
    line = strip(line);
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(strip(cell));
    if (cells.size() != 7) {
      std::ostringstream os;
      os << "counts file line " << line_no << ": expected 7 columns, got " << cells.size();
      throw ParseError(os.str());
    }
    std::array<long, 7> v{};
    for (std::size_t i = 0; i < 7; ++i) v[i] = parse_int(cells[i], line_no, columns[i]);
    for (std::size_t i = 0; i < 3; ++i)
      if (v[i] < 1 || v[i] > 3) {
        std::ostringstream os;
        os << "counts file line " << line_no << ": column '" << columns[i] << "' must be 1, 2 or 3";
        throw ParseError(os.str());
      }
    for (std::size_t i = 3; i < 6; ++i)
      if (v[i] != 1 && v[i] != -1) {
        std::ostringstream os;
        os << "counts file line " << line_no << ": column '" << columns[i] << "' must be +1 or -1";
        throw ParseError(os.str());
      }
    if (v[6] < 0) {
      std::ostringstream os;
      os << "counts file line " << line_no << ": negative count";
      throw ParseError(os.str());
    }
    const Setting s{static_cast<int>(v[0]), static_cast<int>(v[1]), static_cast<int>(v[2])};
    const int o = outcome_index(static_cast<int>(v[3]), static_cast<int>(v[4]), static_cast<int>(v[5]));
    const auto key = std::make_pair(s.index(), o);
    if (auto it = seen_rows.find(key); it != seen_rows.end()) {
      std::ostringstream os;
      os << "counts file line " << line_no << ": duplicate of line " << it->second;
      throw ParseError(os.str());
    }
    seen_rows[key] = line_no;
    auto [it, inserted] = by_setting.try_emplace(s.index(), CountRecord{s, {}});
    it->second.counts[o] = static_cast<std::uint64_t>(v[6]);
  }

  std::string missing;
  std::size_t n_missing = 0;
  for (int idx = 0; idx < 27; ++idx)
    for (int o = 0; o < 8; ++o)
      if (!seen_rows.contains({idx, o}) && ++n_missing <= 10) {
        const Setting s = Setting::from_index(idx);
        std::ostringstream os;
        os << "(" << s.j << "," << s.k << "," << s.l << ";" << outcome_sign(o, Party::A) << ","
           << outcome_sign(o, Party::B) << "," << outcome_sign(o, Party::C) << ")";
        if (!missing.empty()) missing += " ";
        missing += os.str();
      }
  if (n_missing > 10) missing += " ...";
  if (n_missing > 0)
    throw IncompleteDataError("counts file is missing " + std::to_string(n_missing) +
                              " of 216 rows: " + missing);

  std::vector<CountRecord> records;
  records.reserve(by_setting.size());
  for (auto& [idx, rec] : by_setting) records.push_back(rec);
  return records;
}

void write_counts_file(const std::filesystem::path& path, const std::vector<CountRecord>& records) {
  std::ostringstream os;
  write_counts_csv(os, records);
  write_text_file(path, os.str());
}

std::vector<CountRecord> read_counts_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open counts file " + path.string());
  return read_counts_csv(in);
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace anisoq::io
