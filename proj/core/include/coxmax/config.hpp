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

#ifndef COXMAX_CONFIG_HPP
#define COXMAX_CONFIG_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace coxmax {

// Flat "key = value" config file. '#' starts a comment; blank lines ignored.
class Config {
 public:
  Config() = default;
  static Config from_file(const std::string& path);
  static Config from_string(const std::string& text);

  bool has(const std::string& key) const;
  const std::string& get(const std::string& key) const;
  std::string get_or(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key) const;
  double get_double_or(const std::string& key, double fallback) const;
  long long get_int_or(const std::string& key, long long fallback) const;
  bool get_bool_or(const std::string& key, bool fallback) const;
  // Comma-separated list of numbers; "inf" allowed.
  std::vector<double> get_list_or(const std::string& key,
                                  const std::vector<double>& fallback) const;

  void set(const std::string& key, const std::string& value);

  // Sorted "key = value" lines; the canonical form backing content_hash().
  std::string canonical_text() const;
  // FNV-1a over the canonical text, for output metadata.
  std::uint64_t content_hash() const;

  const std::map<std::string, std::string>& entries() const { return kv_; }

 private:
  std::map<std::string, std::string> kv_;
};

}  // namespace coxmax

#endif  // COXMAX_CONFIG_HPP
