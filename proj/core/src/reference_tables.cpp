#include "anisoq/reference_tables.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>

#include "anisoq/errors.hpp"

namespace anisoq {

namespace {

struct RawRow {
  const char* label;
  FamilyParams state;
  std::vector<const char*> cells;
};

ReferenceTable make_table(TableId id, std::string title, std::vector<std::string> headers,
                          std::vector<std::string> statistics, const std::vector<RawRow>& raw) {
  ReferenceTable t{id, std::move(title), std::move(headers), std::move(statistics), {}};
  for (const auto& r : raw) {
    ReferenceRow row{r.label, r.state, {}};
    for (const char* c : r.cells) row.cells.push_back(parse_reference_value(c));
    t.rows.push_back(std::move(row));
  }
  return t;
}

const std::vector<std::string> kSpectrumHeaders = {
    "s_iso^AB+s_iso^AC+s_iso^BC", "δs_1^AB", "δs_1^AC", "δs_1^BC", "δs_2^AB",
    "δs_2^AC",                    "δs_2^BC", "δs_3^AB", "δs_3^AC", "δs_3^BC"};
const std::vector<std::string> kSpectrumStats = {"iso_sum", "ds1_AB", "ds1_AC", "ds1_BC", "ds2_AB",
                                                 "ds2_AC",  "ds2_BC", "ds3_AB", "ds3_AC", "ds3_BC"};
const std::vector<std::string> kOrderingHeaders = {"(C^AB)^2-(C^AC)^2", "(M^AB-M^AC)/2",
                                                   "s_iso^AB-s_iso^AC", "|c|^2-|b|^2"};
const std::vector<std::string> kOrderingStats = {"conc2_diff_AB_AC", "M_half_diff_AB_AC",
                                                 "iso_diff_AB_AC", "bloch2_diff_C_B"};

std::map<TableId, ReferenceTable> build_tables() {
  using F = FamilyParams;
  std::map<TableId, ReferenceTable> tables;

  tables.emplace(TableId::T1, make_table(
      TableId::T1, "Isotropic strengths and anisotropies of W-class states", kSpectrumHeaders,
      kSpectrumStats,
      {
          {"(0,0)", F::w(0, 0), {"1.006(2)", "0.665(9)", "0.667(4)", "0.667(3)", "-0.332(7)", "-0.333(4)", "-0.331(4)", "-0.332(7)", "-0.333(8)", "-0.335(5)"}},
          {"(20°,0)", F::w(20, 0), {"0.993(3)", "0.396(2)", "0.393(2)", "0.385(3)", "-0.197(4)", "-0.190(2)", "-0.192(5)", "-0.198(4)", "-0.202(2)", "-0.193(1)"}},
          {"(30°,0)", F::w(30, 0), {"1.007(6)", "0.175(3)", "0.168(4)", "0.165(3)", "-0.104(1)", "-0.107(5)", "-0.081(8)", "-0.093(3)", "-0.098(5)", "-0.087(2)"}},
          {"(45°,0)", F::w(45, 0), {"1.012(2)", "0.003(1)", "0.012(5)", "0.012(2)", "-0.037(3)", "-0.036(7)", "-0.029(7)", "-0.037(6)", "-0.032(5)", "-0.041(3)"}},
          {"(30°,45°)", F::w(30, 45), {"1.004(2)", "0.127(3)", "0.110(2)", "0.116(2)", "-0.056(5)", "-0.044(2)", "-0.056(3)", "-0.071(2)", "-0.066(2)", "-0.063(3)"}},
          {"(45°,45°)", F::w(45, 45), {"0.981(9)", "0.095(4)", "0.112(6)", "0.109(6)", "0.071(4)", "0.075(5)", "0.076(4)", "-0.166(3)", "-0.187(4)", "-0.175(5)"}},
          {"(30°,30°)", F::w(30, 30), {"1.010(9)", "0.139(4)", "0.136(5)", "0.131(5)", "-0.062(9)", "-0.059(1)", "-0.063(8)", "-0.075(8)", "-0.076(7)", "-0.067(1)"}},
          {"(45°,30°)", F::w(45, 30), {"1.007(7)", "0.074(2)", "0.065(4)", "0.066(6)", "-0.053(3)", "-0.052(3)", "-0.059(8)", "-0.128(3)", "-0.117(2)", "-0.126(4)"}},
          {"(45°,15°)", F::w(45, 15), {"1.002(7)", "0.024(1)", "0.033(1)", "0.025(7)", "0.021(5)", "0.015(7)", "0.013(7)", "-0.045(6)", "-0.048(8)", "-0.039(4)"}},
      }));

  tables.emplace(TableId::T2, make_table(
      TableId::T2, "Horodecki parameters and maximal CHSH values of W-class states",
      {"M^AB", "M^AC", "<B_AB>_max^2/4", "<B_AC>_max^2/4"},
      {"M_AB", "M_AC", "chsh2_AB", "chsh2_AC"},
      {
          {"(30°,45°)", F::w(30, 45), {"0.323(3)", "0.931(2)", "0.257(3)", "0.925(3)"}},
          {"(45°,45°)", F::w(45, 45), {"0.499(2)", "1.014(6)", "0.493(9)", "0.988(4)"}},
          {"(30°,30°)", F::w(30, 30), {"0.310(9)", "1.334(4)", "0.257(6)", "1.300(2)"}},
          {"(45°,30°)", F::w(45, 30), {"0.384(4)", "1.500(3)", "0.367(2)", "1.485(6)"}},
          {"(45°,15°)", F::w(45, 15), {"0.136(7)", "1.864(6)", "0.119(4)", "1.857(2)"}},
      }));

  tables.emplace(TableId::T3, make_table(
      TableId::T3, "Ordering of pairwise correlations for W-class states", kOrderingHeaders,
      kOrderingStats,
      {
          {"(0,0)", F::w(0, 0), {"-2.783e-04", "8.000e-04", "-0.002(1)", "-7.960e-04"}},
          {"(20°,0)", F::w(20, 0), {"-0.412(4)", "-0.405(3)", "-0.403(3)", "-0.410(5)"}},
          {"(30°,0)", F::w(30, 0), {"-0.745(6)", "-0.735(4)", "-0.738(8)", "-0.746(8)"}},
          {"(45°,0)", F::w(45, 0), {"-0.985(3)", "-0.977(7)", "-0.980(2)", "-0.995(6)"}},
          {"(30°,45°)", F::w(30, 45), {"-0.309(7)", "-0.304(4)", "-0.306(2)", "-0.309(4)"}},
          {"(45°,45°)", F::w(45, 45), {"-0.237(7)", "-0.257(5)", "-0.247(5)", "-0.251(2)"}},
          {"(30°,30°)", F::w(30, 30), {"-0.502(5)", "-0.512(2)", "-0.512(2)", "-0.517(3)"}},
          {"(45°,30°)", F::w(45, 30), {"-0.543(6)", "-0.558(2)", "-0.563(5)", "-0.558(3)"}},
          {"(45°,15°)", F::w(45, 15), {"-0.861(2)", "-0.862(4)", "-0.870(5)", "-0.867(9)"}},
      }));

  tables.emplace(TableId::T5, make_table(
      TableId::T5, "Isotropic strengths and anisotropies of GHZ-class states", kSpectrumHeaders,
      kSpectrumStats,
      {
          {"20°", F::ghz(20), {"0.995(6)", "0.525(3)", "0.525(4)", "0.524(8)", "-0.262(5)", "-0.259(9)", "-0.262(2)", "-0.262(6)", "-0.264(5)", "-0.262(1)"}},
          {"30°", F::ghz(30), {"0.992(6)", "0.413(4)", "0.413(3)", "0.415(4)", "-0.206(7)", "-0.201(9)", "-0.207(5)", "-0.206(7)", "-0.210(7)", "-0.207(5)"}},
          {"45°", F::ghz(45), {"0.996(8)", "0.333(4)", "0.331(4)", "0.334(3)", "-0.202(5)", "-0.166(3)", "-0.156(6)", "-0.166(8)", "-0.166(9)", "-0.174(1)"}},
      }));

  tables.emplace(TableId::T6, make_table(
      TableId::T6, "Ordering of pairwise correlations for GHZ-class states", kOrderingHeaders,
      kOrderingStats,
      {
          {"20°", F::ghz(20), {"-0.199(5)", "-0.209(8)", "-0.208(1)", "-0.199(6)"}},
          {"30°", F::ghz(30), {"-0.372(1)", "-0.373(3)", "-0.371(7)", "-0.367(5)"}},
          {"45°", F::ghz(45), {"-0.456(6)", "-0.499(7)", "-0.495(2)", "-0.480(3)"}},
      }));
  return tables;
}

}  // namespace

ReferenceCell parse_reference_value(std::string_view text) {
  ReferenceCell cell{std::string(text), 0.0, 0.0};
  const std::size_t open = text.find('(');
  const std::string_view number = text.substr(0, open);
  const auto [ptr, ec] = std::from_chars(number.data(), number.data() + number.size(), cell.value);
  if (ec != std::errc() || ptr != number.data() + number.size())
    throw ParseError("reference value '" + std::string(text) + "' is not a number");
  if (open == std::string_view::npos) return cell;

  const std::size_t close = text.find(')', open);
  if (close == std::string_view::npos || close != text.size() - 1)
    throw ParseError("reference value '" + std::string(text) + "' has a malformed uncertainty");
  int digits = 0;
  const std::string_view err = text.substr(open + 1, close - open - 1);
  const auto [eptr, eec] = std::from_chars(err.data(), err.data() + err.size(), digits);
  if (eec != std::errc() || eptr != err.data() + err.size())
    throw ParseError("reference value '" + std::string(text) + "' has a malformed uncertainty");

  const std::size_t dot = number.find('.');
  const int decimals = dot == std::string_view::npos ? 0 : static_cast<int>(number.size() - dot - 1);
  cell.sigma = digits * std::pow(10.0, -decimals);
  return cell;
}

double comparison_tolerance(const ReferenceCell& cell) { return std::max(5.0 * cell.sigma, 0.05); }

const ReferenceTable& reference_table(TableId id) {
  static const std::map<TableId, ReferenceTable> tables = build_tables();
  return tables.at(id);
}

std::vector<TableId> all_table_ids() {
  return {TableId::T1, TableId::T2, TableId::T3, TableId::T5, TableId::T6};
}

TableId parse_table_id(std::string_view text) {
  if (!text.empty() && (text.front() == 'T' || text.front() == 't')) text.remove_prefix(1);
  if (text == "1") return TableId::T1;
  if (text == "2") return TableId::T2;
  if (text == "3") return TableId::T3;
  if (text == "5") return TableId::T5;
  if (text == "6") return TableId::T6;
  throw UsageError("unknown table '" + std::string(text) + "' (expected 1, 2, 3, 5 or 6)");
}

std::string_view to_string(TableId id) {
  switch (id) {
    case TableId::T1: return "T1";
    case TableId::T2: return "T2";
    case TableId::T3: return "T3";
    case TableId::T5: return "T5";
    case TableId::T6: return "T6";
  }
  return "?";
}

}  // namespace anisoq
