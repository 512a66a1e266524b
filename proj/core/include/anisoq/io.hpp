#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "anisoq/experiment.hpp"
#include "anisoq/nonlocality.hpp"
#include "anisoq/states.hpp"

namespace anisoq::io {

// State file:
//   {"family": "w",      "phi_deg": 45, "theta_deg": 15}
//   {"family": "ghz",    "phi_prime_deg": 30}
//   {"family": "custom", "amplitudes": [[re, im] x 8]}
// Only the fields of the named family are read; they are all required.
std::string state_to_json(const FamilyParams& params);
FamilyParams state_from_json(const std::string& text);
void write_state_file(const std::filesystem::path& path, const FamilyParams& params);
FamilyParams read_state_file(const std::filesystem::path& path);

// Directions file: {"a1": [x,y,z], "a2": [...], "b1": [...], "b2": [...]}.
std::string directions_to_json(const MeasurementDirections& dirs);
MeasurementDirections directions_from_json(const std::string& text);
MeasurementDirections read_directions_file(const std::filesystem::path& path);

// Counts CSV: header "j,k,l,alpha,beta,gamma,count", one row per
// (setting, outcome), settings in (j,k,l) lexicographic order and outcomes in
// (+,+,+), (+,+,-), ... order. A complete dataset has 216 rows.
inline constexpr const char* kCountsHeader = "j,k,l,alpha,beta,gamma,count";
void write_counts_csv(std::ostream& out, const std::vector<CountRecord>& records);
std::vector<CountRecord> read_counts_csv(std::istream& in);
void write_counts_file(const std::filesystem::path& path, const std::vector<CountRecord>& records);
std::vector<CountRecord> read_counts_file(const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace anisoq::io
