// Copyright 2026 The coxmax Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "coxmax/config.hpp"

#include <fstream>
#include <limits>
#include <sstream>

#include "coxmax/errors.hpp"

namespace coxmax {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

double parse_number(const std::string& raw, const std::string& key) {
  const std::string v = trim(raw);
  if (v == "inf" || v == "Inf" || v == "INF") {
    return std::numeric_limits<double>::infinity();
  }
  try {
    std::size_t used = 0;
    const double value = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return value;
  } catch (const std::exception&) {
    throw IoError("config: key '" + key + "' has non-numeric value '" + v + "'");
  }
}

}  // namespace

Config Config::from_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw IoError("config: cannot open " + path);
  std::stringstream buffer;
  buffer << is.rdbuf();
  return from_string(buffer.str());
}

Config Config::from_string(const std::string& text) {
  Config config;
  std::istringstream is(text);
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw IoError("config: line " + std::to_string(line_no) + " is not 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      throw IoError("config: empty key on line " + std::to_string(line_no));
    }
    config.kv_[key] = value;
  }
  return config;
}

bool Config::has(const std::string& key) const { return kv_.count(key) != 0; }

const std::string& Config::get(const std::string& key) const {
  const auto it = kv_.find(key);
  if (it == kv_.end()) throw IoError("config: missing required key '" + key + "'");
  return it->second;
}

std::string Config::get_or(const std::string& key, const std::string& fallback) const {
  const auto it = kv_.find(key);
  return it == kv_.end() ? fallback : it->second;
}

double Config::get_double(const std::string& key) const {
  return parse_number(get(key), key);
}

double Config::get_double_or(const std::string& key, double fallback) const {
  const auto it = kv_.find(key);
  return it == kv_.end() ? fallback : parse_number(it->second, key);
}

long long Config::get_int_or(const std::string& key, long long fallback) const {
  const auto it = kv_.find(key);
  if (it == kv_.end()) return fallback;
  return static_cast<long long>(parse_number(it->second, key));
}

bool Config::get_bool_or(const std::string& key, bool fallback) const {
  const auto it = kv_.find(key);
  if (it == kv_.end()) return fallback;
  const std::string v = trim(it->second);
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw IoError("config: key '" + key + "' is not a boolean");
}

std::vector<double> Config::get_list_or(const std::string& key,
                                        const std::vector<double>& fallback) const {
  const auto it = kv_.find(key);
  if (it == kv_.end()) return fallback;
  std::vector<double> values;
  std::string item;
  std::istringstream is(it->second);
  while (std::getline(is, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    values.push_back(parse_number(item, key));
  }
  if (values.empty()) throw IoError("config: key '" + key + "' holds no values");
  return values;
}

void Config::set(const std::string& key, const std::string& value) { kv_[key] = value; }

std::string Config::canonical_text() const {
  std::string out;
  for (const auto& [key, value] : kv_) {
    out += key;
    out += " = ";
    out += value;
    out += "\n";
  }
  return out;
}

std::uint64_t Config::content_hash() const {
  const std::string text = canonical_text();
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (const unsigned char c : text) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

}  // namespace coxmax
