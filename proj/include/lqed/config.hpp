// Copyright 2026 The lqed Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Flat key/value experiment configuration.
//
//   # comment
//   model.omega_ghz = 8.0
//   scan.variants = full,drop_HCR
//
// Keys are dotted lowercase identifiers. Later sources override earlier ones
// (preset < file < --set).

#include <cctype>
#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace lqed {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

inline bool valid_key(std::string_view k) {
  if (k.empty() || k.front() == '.' || k.back() == '.') return false;
  if (k.find('.') == std::string_view::npos) return false;
  if (k.find("..") != std::string_view::npos) return false;
  for (char c : k) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') ||
                    c == '_' || c == '.';
    if (!ok) return false;
  }
  return true;
}

}  // namespace detail

class Config {
 public:
  static Config parse(std::string_view text, std::string_view origin = "config") {
    Config c;
    std::istringstream in{std::string(text)};
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
      ++line_no;
      std::string_view line = raw;
      if (const size_t hash = line.find('#'); hash != std::string_view::npos)
        line = line.substr(0, hash);
      line = detail::trim(line);
      if (line.empty()) continue;
      const auto where = std::string(origin) + ":" + std::to_string(line_no);
      const size_t eq = line.find('=');
      if (eq == std::string_view::npos) {
        throw ConfigError(where + ": expected 'key = value'");
      }
      try {
        c.set(std::string(detail::trim(line.substr(0, eq))),
              std::string(detail::trim(line.substr(eq + 1))));
      } catch (const ConfigError& e) {
        throw ConfigError(where + ": " + e.what());
      }
    }
    return c;
  }

  static Config from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str(), path);
  }

  void set(const std::string& key, const std::string& value) {
    if (!detail::valid_key(key)) {
      throw ConfigError("invalid key '" + key +
                        "' (expected dotted lowercase, e.g. model.omega_ghz)");
    }
    if (value.empty()) throw ConfigError("empty value for '" + key + "'");
    entries_[key] = value;
  }

  /// "key=value" as given to --set.
  void apply_override(std::string_view kv) {
    const size_t eq = kv.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("override '" + std::string(kv) +
                        "' is not of the form key=value");
    }
    set(std::string(detail::trim(kv.substr(0, eq))),
        std::string(detail::trim(kv.substr(eq + 1))));
  }

  void merge(const Config& other) {
    for (const auto& [k, v] : other.entries_) entries_[k] = v;
  }

  void erase(const std::string& key) { entries_.erase(key); }

  bool has(const std::string& key) const { return entries_.count(key) != 0; }

  const std::string& get(const std::string& key) const {
    auto it = entries_.find(key);
    if (it == entries_.end()) {
      throw ConfigError("missing required field '" + key + "'");
    }
    return it->second;
  }

  double get_double(const std::string& key) const {
    const std::string& s = get(key);
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0' || errno == ERANGE ||
        !std::isfinite(v)) {
      throw ConfigError("field '" + key + "': '" + s + "' is not a finite number");
    }
    return v;
  }

  double get_double(const std::string& key, double fallback) const {
    return has(key) ? get_double(key) : fallback;
  }

  long get_int(const std::string& key) const {
    const std::string& s = get(key);
    long v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) {
      throw ConfigError("field '" + key + "': '" + s + "' is not an integer");
    }
    return v;
  }

  bool get_bool(const std::string& key) const {
    const std::string& s = get(key);
    if (s == "true" || s == "1" || s == "yes") return true;
    if (s == "false" || s == "0" || s == "no") return false;
    throw ConfigError("field '" + key + "': '" + s + "' is not a boolean");
  }

  bool get_bool(const std::string& key, bool fallback) const {
    return has(key) ? get_bool(key) : fallback;
  }

  const std::map<std::string, std::string>& entries() const { return entries_; }

  /// Canonical form: one "key = value" line per entry, sorted by key.
  std::string serialize() const {
    std::string out;
    for (const auto& [k, v] : entries_) out += k + " = " + v + "\n";
    return out;
  }

  /// FNV-1a over serialize().
  std::uint64_t hash() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : serialize()) {
      h ^= c;
      h *= 0x100000001b3ULL;
    }
    return h;
  }

  std::string hash_hex() const {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(hash()));
    return buf;
  }

 private:
  std::map<std::string, std::string> entries_;
};

}  // namespace lqed
