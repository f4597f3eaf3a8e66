#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "gmh/types.hpp"

namespace gmh {

/// Flat sectioned key = value configuration. Accessors mark keys as
/// consumed; validate() rejects anything left over, so unknown keys fail
/// loudly.
class Config {
 public:
  static Config parse_file(const std::string& path);
  static Config parse_string(const std::string& text);

  void set(const std::string& section, const std::string& key,
           const std::string& value);
  /// "section.key=value" override, as accepted on the command line.
  void set_override(const std::string& spec);

  bool has(const std::string& section, const std::string& key) const;
  std::string get(const std::string& section, const std::string& key) const;
  std::string get_or(const std::string& section, const std::string& key,
                     const std::string& fallback) const;
  double get_double(const std::string& section, const std::string& key) const;
  double get_double_or(const std::string& section, const std::string& key,
                       double fallback) const;
  long get_long(const std::string& section, const std::string& key) const;
  long get_long_or(const std::string& section, const std::string& key,
                   long fallback) const;
  std::vector<double> get_doubles(const std::string& section,
                                  const std::string& key) const;

  /// Throws ConfigError naming every key that was never consumed.
  void validate_consumed() const;

 private:
  std::map<std::string, std::map<std::string, std::string>> sections_;
  mutable std::set<std::string> consumed_;
};

std::vector<double> parse_doubles(const std::string& text);

}  // namespace gmh
