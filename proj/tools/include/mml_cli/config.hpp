#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mml/matrix.hpp"

namespace mml::cli {

/// Flat key = value settings. Every entry remembers where it came from so
/// errors can point at the offending line or override.
class RunConfig {
 public:
  void set(std::string key, std::string value, std::string origin);
  bool has(std::string_view key) const;
  std::vector<std::string> keys() const;

  const std::string& str(std::string_view key) const;
  std::string str_or(std::string_view key, std::string fallback) const;
  double real(std::string_view key) const;
  double real_or(std::string_view key, double fallback) const;
  std::size_t count(std::string_view key) const;
  std::size_t count_or(std::string_view key, std::size_t fallback) const;
  std::uint64_t u64_or(std::string_view key, std::uint64_t fallback) const;
  bool flag_or(std::string_view key, bool fallback) const;
  /// Comma-separated lists.
  Vector reals(std::string_view key) const;
  std::vector<std::size_t> counts(std::string_view key) const;
  std::vector<std::string> words(std::string_view key) const;

  /// ConfigError naming the first key not in `allowed`.
  void require_known(std::span<const std::string_view> allowed, std::string_view command) const;

 private:
  struct Entry {
    std::string value;
    std::string origin;
  };
  const Entry& entry(std::string_view key) const;
  std::map<std::string, Entry, std::less<>> entries_;
};

RunConfig parse_config(std::istream& in, const std::string& source);
RunConfig read_config(const std::filesystem::path& path);

/// Applies a "key=value" override from the command line.
void apply_override(RunConfig& config, std::string_view assignment);

}  // namespace mml::cli
