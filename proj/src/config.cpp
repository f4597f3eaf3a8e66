#include "gmh/config.hpp"

#include <fstream>
#include <sstream>

namespace gmh {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

}  // namespace

std::vector<double> parse_doubles(const std::string& text) {
  std::vector<double> out;
  std::istringstream is(text);
  std::string tok;
  while (is >> tok) {
    size_t used = 0;
    const double v = std::stod(tok, &used);
    if (used != tok.size())
      throw ConfigError("expected a number, got '" + tok + "'");
    out.push_back(v);
  }
  return out;
}

Config Config::parse_string(const std::string& text) {
  Config cfg;
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("config line " + std::to_string(lineno) +
                          ": malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty())
        throw ConfigError("config line " + std::to_string(lineno) +
                          ": empty section name");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": empty key");
    if (section.empty())
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": key outside any section");
    cfg.sections_[section][key] = value;
  }
  return cfg;
}

Config Config::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_string(buf.str());
}

void Config::set(const std::string& section, const std::string& key,
                 const std::string& value) {
  sections_[section][key] = value;
}

void Config::set_override(const std::string& spec) {
  const auto eq = spec.find('=');
  const auto dot = spec.find('.');
  if (eq == std::string::npos || dot == std::string::npos || dot > eq)
    throw ConfigError("override must look like section.key=value: " + spec);
  set(spec.substr(0, dot), spec.substr(dot + 1, eq - dot - 1),
      spec.substr(eq + 1));
}

bool Config::has(const std::string& section, const std::string& key) const {
  const auto s = sections_.find(section);
  return s != sections_.end() && s->second.count(key) > 0;
}

std::string Config::get(const std::string& section,
                        const std::string& key) const {
  const auto s = sections_.find(section);
  if (s == sections_.end() || s->second.count(key) == 0)
    throw ConfigError("missing config key [" + section + "] " + key);
  consumed_.insert(section + "." + key);
  return s->second.at(key);
}

std::string Config::get_or(const std::string& section, const std::string& key,
                           const std::string& fallback) const {
  if (!has(section, key)) return fallback;
  return get(section, key);
}

double Config::get_double(const std::string& section,
                          const std::string& key) const {
  const std::string v = get(section, key);
  try {
    size_t used = 0;
    const double d = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError("config key [" + section + "] " + key +
                      ": expected a number, got '" + v + "'");
  }
}

double Config::get_double_or(const std::string& section, const std::string& key,
                             double fallback) const {
  if (!has(section, key)) return fallback;
  return get_double(section, key);
}

long Config::get_long(const std::string& section, const std::string& key) const {
  const double d = get_double(section, key);
  const long l = static_cast<long>(d);
  if (static_cast<double>(l) != d)
    throw ConfigError("config key [" + section + "] " + key +
                      ": expected an integer");
  return l;
}

long Config::get_long_or(const std::string& section, const std::string& key,
                         long fallback) const {
  if (!has(section, key)) return fallback;
  return get_long(section, key);
}

std::vector<double> Config::get_doubles(const std::string& section,
                                        const std::string& key) const {
  try {
    return parse_doubles(get(section, key));
  } catch (const ConfigError&) {
    throw ConfigError("config key [" + section + "] " + key +
                      ": expected numbers");
  }
}

void Config::validate_consumed() const {
  std::string unknown;
  for (const auto& [section, kv] : sections_) {
    for (const auto& [key, value] : kv) {
      if (consumed_.count(section + "." + key) == 0) {
        if (!unknown.empty()) unknown += ", ";
        unknown += section + "." + key;
      }
    }
  }
  if (!unknown.empty())
    throw ConfigError("unknown config keys: " + unknown);
}

}  // namespace gmh
