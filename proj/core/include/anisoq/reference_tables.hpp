#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "anisoq/states.hpp"

namespace anisoq {

enum class TableId { T1, T2, T3, T5, T6 };

// A published measurement such as "0.396(2)": the parenthetical is a standard
// error in units of the last printed digit. Cells printed without one carry
// sigma = 0.
struct ReferenceCell {
  std::string text;
  double value = 0.0;
  double sigma = 0.0;
};

ReferenceCell parse_reference_value(std::string_view text);

// Agreement window used when comparing a computed value to a published cell.
double comparison_tolerance(const ReferenceCell& cell);

struct ReferenceRow {
  std::string label;
  FamilyParams state;
  std::vector<ReferenceCell> cells;
};

struct ReferenceTable {
  TableId id;
  std::string title;
  std::vector<std::string> headers;     // printed column headers
  std::vector<std::string> statistics;  // Statistic names, parallel to headers
  std::vector<ReferenceRow> rows;
};

const ReferenceTable& reference_table(TableId id);
std::vector<TableId> all_table_ids();

TableId parse_table_id(std::string_view text);
std::string_view to_string(TableId id);

}  // namespace anisoq
