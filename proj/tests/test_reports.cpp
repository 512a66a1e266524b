#include <doctest.h>

#include <set>
#include <sstream>

#include "anisoq/errors.hpp"
#include "anisoq/reports.hpp"

using namespace anisoq;

namespace {

std::set<std::string> systematic_cells(const TableReport& r) {
  std::set<std::string> out;
  for (const auto& row : r.rows)
    for (const auto& c : row.cells)
      if (c.status != kStatusAgree) out.insert(row.label + " " + c.statistic);
  return out;
}

}  // namespace

TEST_SUITE("reports") {
  TEST_CASE("reference values") {
    const auto a = parse_reference_value("0.396(2)");
    CHECK(a.value == doctest::Approx(0.396));
    CHECK(a.sigma == doctest::Approx(0.002));
    const auto b = parse_reference_value("-0.002(1)");
    CHECK(b.value == doctest::Approx(-0.002));
    CHECK(b.sigma == doctest::Approx(0.001));
    const auto c = parse_reference_value("-2.783e-04");
    CHECK(c.value == doctest::Approx(-2.783e-4));
    CHECK(c.sigma == 0.0);
    CHECK(parse_reference_value("1.5(12)").sigma == doctest::Approx(1.2));
    CHECK_THROWS_AS(parse_reference_value("abc"), ParseError);
    CHECK_THROWS_AS(parse_reference_value("0.3(2"), ParseError);
    CHECK_THROWS_AS(parse_reference_value("0.3(x)"), ParseError);
  }

  TEST_CASE("comparison tolerance") {
    CHECK(comparison_tolerance(parse_reference_value("0.396(2)")) == doctest::Approx(0.05));
    CHECK(comparison_tolerance(parse_reference_value("0.981(9)")) == doctest::Approx(0.05));
    CHECK(comparison_tolerance(parse_reference_value("0.5(2)")) == doctest::Approx(1.0));
  }

  TEST_CASE("table ids") {
    CHECK(parse_table_id("1") == TableId::T1);
    CHECK(parse_table_id("T6") == TableId::T6);
    CHECK_THROWS_AS(parse_table_id("4"), UsageError);
    for (TableId id : all_table_ids()) {
      CHECK(parse_table_id(to_string(id)) == id);
      const auto& t = reference_table(id);
      CHECK(t.headers.size() == t.statistics.size());
      for (const auto& row : t.rows) CHECK(row.cells.size() == t.headers.size());
    }
    CHECK(reference_table(TableId::T1).rows.size() == 9);
    CHECK(reference_table(TableId::T2).rows.size() == 5);
    CHECK(reference_table(TableId::T6).rows.size() == 3);
  }

  TEST_CASE("exact reports against the published cells") {
    // The printed (45°,30°) anisotropies sum to -0.11 rather than 0; the
    // middle column looks sign-flipped.
    CHECK(systematic_cells(build_table_report(TableId::T1, {})) ==
          std::set<std::string>{"(45°,30°) ds2_AB", "(45°,30°) ds2_AC", "(45°,30°) ds2_BC"});
    CHECK(systematic_cells(build_table_report(TableId::T3, {})).empty());
    CHECK(systematic_cells(build_table_report(TableId::T5, {})).empty());
    CHECK(systematic_cells(build_table_report(TableId::T6, {})).empty());
    // One published CHSH cell sits 0.055 from the exact value.
    CHECK(systematic_cells(build_table_report(TableId::T2, {})) ==
          std::set<std::string>{"(30°,45°) chsh2_AB"});
  }

  TEST_CASE("exact T1 row (20°,0)") {
    const auto r = build_table_report(TableId::T1, {});
    const auto& row = r.rows[1];
    CHECK(row.label == "(20°,0)");
    CHECK(row.cells[0].value == doctest::Approx(1.0));
    for (const auto& c : row.cells) {
      CHECK(c.value == c.exact);
      CHECK_FALSE(c.error);
    }
    // Equal anisotropy across pairs.
    CHECK(row.cells[1].value == doctest::Approx(row.cells[2].value));
    CHECK(row.cells[1].value == doctest::Approx(row.cells[3].value));
  }

  TEST_CASE("exact T6 ordering cells coincide") {
    const auto r = build_table_report(TableId::T6, {});
    const std::array<double, 3> tangles{0.20658795558326734, 0.375, 0.5};
    for (std::size_t i = 0; i < 3; ++i)
      for (const auto& c : r.rows[i].cells) CHECK(c.value == doctest::Approx(-tangles[i]));
  }

  TEST_CASE("simulated reports") {
    ReportConfig cfg{Mode::Simulated, 5000, 3, 100};
    const auto r = build_table_report(TableId::T2, cfg);
    for (const auto& row : r.rows) {
      for (const auto& c : row.cells) {
        REQUIRE(c.error);
        CHECK(*c.error > 0.0);
      }
      // Fixed settings cannot beat the Horodecki value by more than noise.
      for (int pair = 0; pair < 2; ++pair) {
        const auto& m = row.cells[pair];
        const auto& b = row.cells[pair + 2];
        CHECK(b.value <= m.value + 3.0 * std::max(*m.error, *b.error));
      }
    }
    const auto again = build_table_report(TableId::T2, cfg);
    CHECK(render(r, OutputFormat::Csv) == render(again, OutputFormat::Csv));
    cfg.seed = 4;
    CHECK(render(r, OutputFormat::Csv) != render(build_table_report(TableId::T2, cfg),
                                                  OutputFormat::Csv));

    CHECK_THROWS_AS(build_table_report(TableId::T2, {Mode::Simulated, 5000, 1, 50}), UsageError);
    CHECK_THROWS_AS(build_table_report(TableId::T2, {Mode::Simulated, 0, 1, 200}), UsageError);
  }

  TEST_CASE("rendering") {
    const auto r = build_table_report(TableId::T2, {});
    const std::string csv = render(r, OutputFormat::Csv);
    std::istringstream is(csv);
    std::string first, second;
    std::getline(is, first);
    std::getline(is, second);
    CHECK(first.starts_with("# table=T2 mode=exact version="));
    CHECK(second ==
          "table,row,column,statistic,value,error,exact,reference,reference_sigma,tolerance,status");
    std::size_t lines = 0;
    for (std::string l; std::getline(is, l);) ++lines;
    CHECK(lines == 5 * 4);
    CHECK(csv.find("\"(30°,45°)\"") != std::string::npos);
    CHECK(csv.find(kStatusSystematic) != std::string::npos);

    const std::string md = render(r, OutputFormat::Markdown);
    CHECK(md.find("| state | M^AB |") != std::string::npos);
    CHECK(md.find("†") != std::string::npos);

    const auto j = nlohmann::json::parse(render(r, OutputFormat::Json));
    CHECK(j["table"] == "T2");
    CHECK(j["provenance"]["mode"] == "exact");
    CHECK(j["rows"].size() == 5);
    CHECK(j["rows"][0]["cells"][0]["error"].is_null());

    const auto sim = build_table_report(TableId::T6, {Mode::Simulated, 1000, 9, 100});
    const auto js = to_json(sim);
    CHECK(js["provenance"]["seed"] == 9);
    CHECK(js["provenance"]["shots_per_setting"] == 1000);
    CHECK(js["rows"][0]["cells"][0]["error"].is_number());
  }

  TEST_CASE("format and mode names") {
    CHECK(parse_mode("exact") == Mode::Exact);
    CHECK(parse_mode("simulated") == Mode::Simulated);
    CHECK_THROWS_AS(parse_mode("fast"), UsageError);
    CHECK(parse_format("md") == OutputFormat::Markdown);
    CHECK_THROWS_AS(parse_format("xml"), UsageError);
  }
}
