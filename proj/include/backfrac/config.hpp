#pragma once

#include <istream>
#include <map>
#include <string>
#include <variant>
#include <vector>

namespace backfrac::config {

// TOML subset: [section] headers, key = value lines, # comments. Values are
// booleans, numbers, quoted strings, or flat arrays of numbers/strings.
// Covers the experiment-config schema; nothing more.
using Value =
    std::variant<bool, double, std::string, std::vector<double>, std::vector<std::string>>;
using Section = std::map<std::string, Value>;
using Table = std::map<std::string, Section>;

Table parse_toml(std::istream& in);
Table parse_toml_file(const std::string& path);

// Typed lookups; throw config_error on type mismatch, return fallback when
// the key is absent.
bool get_bool(const Table& t, const std::string& section, const std::string& key, bool fallback);
double get_number(const Table& t, const std::string& section, const std::string& key,
                  double fallback);
std::string get_string(const Table& t, const std::string& section, const std::string& key,
                       const std::string& fallback);
std::vector<double> get_numbers(const Table& t, const std::string& section,
                                const std::string& key, std::vector<double> fallback);
bool has_key(const Table& t, const std::string& section, const std::string& key);

}  // namespace backfrac::config
