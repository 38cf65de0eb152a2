#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "mml/model.hpp"

namespace mml {

/// One observation per line in decimal notation. Blank lines are skipped and
/// '#' starts a comment that runs to end of line. Throws ParseError naming
/// `source` and the 1-based line on malformed or non-positive values.
DataSet parse_dataset(std::istream& in, const std::string& source);

/// Throws IoError (with the path) when the file cannot be opened.
DataSet read_dataset(const std::filesystem::path& path);

/// Writes with 17 significant digits so the values round-trip exactly.
void write_dataset(std::ostream& out, const DataSet& data, const std::string& header_comment = {});

}  // namespace mml
