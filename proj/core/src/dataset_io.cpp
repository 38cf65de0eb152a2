#include "mml/dataset_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

#include "mml/errors.hpp"

namespace mml {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

DataSet parse_dataset(std::istream& in, const std::string& source) {
  DataSet data;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view body = line;
    if (const auto hash = body.find('#'); hash != std::string_view::npos) body = body.substr(0, hash);
    body = trim(body);
    if (body.empty()) continue;
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), v);
    if (ec != std::errc() || ptr != body.data() + body.size()) {
      std::ostringstream os;
      os << source << ":" << lineno << ": cannot parse '" << body << "' as a number";
      throw ParseError(os.str());
    }
    if (!std::isfinite(v) || !(v > 0.0)) {
      std::ostringstream os;
      os << source << ":" << lineno << ": observation " << body << " is not strictly positive";
      throw ParseError(os.str());
    }
    data.observations.push_back(v);
  }
  return data;
}

DataSet read_dataset(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open data file '" + path.string() + "'");
  return parse_dataset(in, path.string());
}

void write_dataset(std::ostream& out, const DataSet& data, const std::string& header_comment) {
  if (!header_comment.empty()) {
    std::istringstream lines(header_comment);
    std::string l;
    while (std::getline(lines, l)) out << "# " << l << '\n';
  }
  out << std::setprecision(17);
  for (double x : data.observations) out << x << '\n';
}

}  // namespace mml
