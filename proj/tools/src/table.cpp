#include "mml_cli/table.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>

#include "mml/errors.hpp"

namespace mml::cli {

namespace {

bool needs_quotes(const std::string& s) { return s.find_first_of(",\"\n") != std::string::npos; }

void write_cell(std::ostream& out, const Cell& c) {
  if (const double* d = std::get_if<double>(&c)) {
    out << format_number(*d);
    return;
  }
  const std::string& s = std::get<std::string>(c);
  if (!needs_quotes(s)) {
    out << s;
    return;
  }
  out << '"';
  for (char ch : s) {
    if (ch == '"') out << '"';
    out << ch;
  }
  out << '"';
}

Cell read_cell(const std::string& raw, bool quoted) {
  if (quoted) return raw;
  if (raw == "nan") return std::nan("");
  if (raw == "inf") return HUGE_VAL;
  if (raw == "-inf") return -HUGE_VAL;
  double v = 0.0;
  const auto [p, ec] = std::from_chars(raw.data(), raw.data() + raw.size(), v);
  if (!raw.empty() && ec == std::errc() && p == raw.data() + raw.size()) return v;
  return raw;
}

std::vector<Cell> split_row(const std::string& line, const std::string& origin) {
  std::vector<Cell> cells;
  std::string cur;
  bool quoted = false, in_quotes = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (in_quotes) {
      if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (ch == '"') {
        in_quotes = false;
      } else {
        cur += ch;
      }
    } else if (ch == '"' && cur.empty()) {
      in_quotes = quoted = true;
    } else if (ch == ',') {
      cells.push_back(read_cell(cur, quoted));
      cur.clear();
      quoted = false;
    } else {
      cur += ch;
    }
  }
  if (in_quotes) throw ParseError(origin + ": unterminated quoted field");
  cells.push_back(read_cell(cur, quoted));
  return cells;
}

}  // namespace

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size()) throw ConfigError("table row width does not match header");
  rows.push_back(std::move(row));
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

double round_to_printed(double x) {
  if (!std::isfinite(x)) return x;
  return std::strtod(format_number(x).c_str(), nullptr);
}

void render_csv(std::ostream& out, const Table& table) {
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i) out << ',';
    write_cell(out, table.columns[i]);
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      write_cell(out, row[i]);
    }
    out << '\n';
  }
}

Table parse_csv(std::istream& in, const std::string& source) {
  Table t;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string origin = source + ":" + std::to_string(lineno);
    std::vector<Cell> cells = split_row(line, origin);
    if (lineno == 1) {
      for (Cell& c : cells) {
        // Header cells are names even if they look numeric.
        if (const double* d = std::get_if<double>(&c)) c = format_number(*d);
        t.columns.push_back(std::get<std::string>(c));
      }
      continue;
    }
    if (cells.size() != t.columns.size())
      throw ParseError(origin + ": expected " + std::to_string(t.columns.size()) + " fields, got " +
                       std::to_string(cells.size()));
    t.rows.push_back(std::move(cells));
  }
  if (lineno == 0) throw ParseError(source + ": empty table");
  return t;
}

Table rounded(Table table) {
  for (auto& row : table.rows)
    for (Cell& c : row)
      if (double* d = std::get_if<double>(&c)) *d = round_to_printed(*d);
  return table;
}

}  // namespace mml::cli
