// include/artic/config.hpp

// Copyright 2026  artic authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ARTIC_CONFIG_HPP_
#define ARTIC_CONFIG_HPP_

#include <istream>
#include <map>
#include <string>
#include <vector>

#include "artic/dsp.hpp"
#include "artic/types.hpp"
#include "artic/vocoder.hpp"

namespace artic {

// Key-value text config: "key = value" lines under "[section]" headers,
// '#' comments. Keys are stored as "section.key".
class KeyValueConfig {
 public:
  static KeyValueConfig load(const std::string& path);
  static KeyValueConfig parse(std::istream& in, const std::string& origin);

  bool has(const std::string& key) const { return entries_.count(key) > 0; }
  void set(const std::string& key, const std::string& value) {
    entries_[key] = value;
  }

  std::string get_str(const std::string& key, const std::string& dflt) const;
  int64_t get_int(const std::string& key, int64_t dflt) const;
  double get_double(const std::string& key, double dflt) const;
  std::vector<int> get_int_list(const std::string& key,
                                const std::vector<int>& dflt) const;

  const std::map<std::string, std::string>& entries() const {
    return entries_;
  }

 private:
  std::map<std::string, std::string> entries_;
};

GeneratorConfig generator_config_from(const KeyValueConfig& cfg,
                                      const GeneratorConfig& defaults);
TrainConfig train_config_from(const KeyValueConfig& cfg,
                              const TrainConfig& defaults);
MelConfig mel_config_from(const KeyValueConfig& cfg, const MelConfig& defaults);

void save_generator_config(const std::string& path, const GeneratorConfig& g);

// Factorization of an upsample product into per-stage factors <= 12,
// largest first (80 -> {10, 8}).
std::vector<int> default_upsample_factors(int product);

}  // namespace artic

#endif  // ARTIC_CONFIG_HPP_
