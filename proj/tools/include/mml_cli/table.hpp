#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace mml::cli {

using Cell = std::variant<std::string, double>;

/// A rectangular report. Every command renders through one of these so CSV
/// and JSON output share a single code path.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row);
  friend bool operator==(const Table&, const Table&) = default;
};

/// Nine significant digits, "nan"/"inf"/"-inf" for non-finite values.
std::string format_number(double x);
/// The value format_number(x) reads back as.
double round_to_printed(double x);

void render_csv(std::ostream& out, const Table& table);
/// Inverse of render_csv: cells that parse fully as numbers become doubles.
Table parse_csv(std::istream& in, const std::string& source);

/// The same table with every number rounded as it would be printed.
Table rounded(Table table);

}  // namespace mml::cli
