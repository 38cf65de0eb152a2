#include "mml_cli/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>

#include "mml/errors.hpp"

namespace mml::cli {

namespace {

std::string trim(std::string_view s) {
  const auto not_space = [](unsigned char c) { return !std::isspace(c); };
  const auto b = std::find_if(s.begin(), s.end(), not_space);
  const auto e = std::find_if(s.rbegin(), s.rend(), not_space).base();
  return b < e ? std::string(b, e) : std::string();
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const std::size_t comma = s.find(',', start);
    const std::size_t end = comma == std::string::npos ? s.size() : comma;
    out.push_back(trim(std::string_view(s).substr(start, end - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

[[noreturn]] void bad_value(const std::string& origin, std::string_view key, const std::string& value,
                            const char* expected) {
  throw ConfigError(origin + ": field '" + std::string(key) + "': expected " + expected + ", got '" + value + "'");
}

double to_real(const std::string& s, const std::string& origin, std::string_view key) {
  double v = 0.0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || s.empty()) bad_value(origin, key, s, "a number");
  return v;
}

std::uint64_t to_u64(const std::string& s, const std::string& origin, std::string_view key) {
  std::uint64_t v = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || s.empty()) bad_value(origin, key, s, "a non-negative integer");
  return v;
}

}  // namespace

void RunConfig::set(std::string key, std::string value, std::string origin) {
  entries_[std::move(key)] = Entry{std::move(value), std::move(origin)};
}

bool RunConfig::has(std::string_view key) const { return entries_.find(key) != entries_.end(); }

std::vector<std::string> RunConfig::keys() const {
  std::vector<std::string> out;
  for (const auto& [k, v] : entries_) out.push_back(k);
  return out;
}

const RunConfig::Entry& RunConfig::entry(std::string_view key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) throw ConfigError("missing required field '" + std::string(key) + "'");
  return it->second;
}

const std::string& RunConfig::str(std::string_view key) const { return entry(key).value; }

std::string RunConfig::str_or(std::string_view key, std::string fallback) const {
  return has(key) ? str(key) : std::move(fallback);
}

double RunConfig::real(std::string_view key) const {
  const Entry& e = entry(key);
  return to_real(e.value, e.origin, key);
}

double RunConfig::real_or(std::string_view key, double fallback) const { return has(key) ? real(key) : fallback; }

std::size_t RunConfig::count(std::string_view key) const {
  const Entry& e = entry(key);
  return static_cast<std::size_t>(to_u64(e.value, e.origin, key));
}

std::size_t RunConfig::count_or(std::string_view key, std::size_t fallback) const {
  return has(key) ? count(key) : fallback;
}

std::uint64_t RunConfig::u64_or(std::string_view key, std::uint64_t fallback) const {
  if (!has(key)) return fallback;
  const Entry& e = entry(key);
  return to_u64(e.value, e.origin, key);
}

bool RunConfig::flag_or(std::string_view key, bool fallback) const {
  if (!has(key)) return fallback;
  const Entry& e = entry(key);
  if (e.value == "true" || e.value == "1" || e.value == "yes") return true;
  if (e.value == "false" || e.value == "0" || e.value == "no") return false;
  bad_value(e.origin, key, e.value, "true or false");
}

Vector RunConfig::reals(std::string_view key) const {
  const Entry& e = entry(key);
  Vector out;
  for (const std::string& item : split_list(e.value)) out.push_back(to_real(item, e.origin, key));
  return out;
}

std::vector<std::size_t> RunConfig::counts(std::string_view key) const {
  const Entry& e = entry(key);
  std::vector<std::size_t> out;
  for (const std::string& item : split_list(e.value))
    out.push_back(static_cast<std::size_t>(to_u64(item, e.origin, key)));
  return out;
}

std::vector<std::string> RunConfig::words(std::string_view key) const { return split_list(entry(key).value); }

void RunConfig::require_known(std::span<const std::string_view> allowed, std::string_view command) const {
  for (const auto& [key, e] : entries_)
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      throw ConfigError(e.origin + ": unknown field '" + key + "' for command '" + std::string(command) + "'");
}

RunConfig parse_config(std::istream& in, const std::string& source) {
  RunConfig cfg;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string origin = source + ":" + std::to_string(lineno);
    const std::string body = trim(line.substr(0, line.find('#')));
    if (body.empty()) continue;
    const std::size_t eq = body.find('=');
    if (eq == std::string::npos) throw ParseError(origin + ": expected 'key = value', got '" + body + "'");
    std::string key = trim(std::string_view(body).substr(0, eq));
    std::string value = trim(std::string_view(body).substr(eq + 1));
    if (key.empty()) throw ParseError(origin + ": empty key");
    if (cfg.has(key)) throw ParseError(origin + ": duplicate field '" + key + "'");
    cfg.set(std::move(key), std::move(value), origin);
  }
  return cfg;
}

RunConfig read_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path.string() + "'");
  return parse_config(in, path.string());
}

void apply_override(RunConfig& config, std::string_view assignment) {
  const std::size_t eq = assignment.find('=');
  if (eq == std::string_view::npos || eq == 0)
    throw ConfigError("command line: expected key=value override, got '" + std::string(assignment) + "'");
  config.set(trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)), "command line");
}

}  // namespace mml::cli
