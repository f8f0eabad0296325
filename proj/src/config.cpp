// src/config.cpp

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

#include "artic/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace artic {

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return {};
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

KeyValueConfig KeyValueConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("config: cannot open " + path);
  return parse(in, path);
}

KeyValueConfig KeyValueConfig::parse(std::istream& in,
                                     const std::string& origin) {
  KeyValueConfig cfg;
  std::string line, section;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw Error("config: bad section header at " + origin + ":" +
                    std::to_string(lineno));
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw Error("config: expected 'key = value' at " + origin + ":" +
                  std::to_string(lineno));
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw Error("config: empty key at " + origin + ":" +
                  std::to_string(lineno));
    cfg.entries_[section.empty() ? key : section + "." + key] = value;
  }
  return cfg;
}

std::string KeyValueConfig::get_str(const std::string& key,
                                    const std::string& dflt) const {
  auto it = entries_.find(key);
  return it == entries_.end() ? dflt : it->second;
}

int64_t KeyValueConfig::get_int(const std::string& key, int64_t dflt) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) return dflt;
  int64_t v = 0;
  auto res = std::from_chars(it->second.data(),
                             it->second.data() + it->second.size(), v);
  if (res.ec != std::errc() || res.ptr != it->second.data() + it->second.size())
    throw Error("config: '" + key + "' is not an integer: '" + it->second +
                "'");
  return v;
}

double KeyValueConfig::get_double(const std::string& key, double dflt) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) return dflt;
  double v = 0;
  auto res = std::from_chars(it->second.data(),
                             it->second.data() + it->second.size(), v);
  if (res.ec != std::errc() || res.ptr != it->second.data() + it->second.size())
    throw Error("config: '" + key + "' is not a number: '" + it->second + "'");
  return v;
}

std::vector<int> KeyValueConfig::get_int_list(
    const std::string& key, const std::vector<int>& dflt) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) return dflt;
  std::vector<int> out;
  std::stringstream ss(it->second);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    cell = trim(cell);
    int v = 0;
    auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (res.ec != std::errc() || res.ptr != cell.data() + cell.size())
      throw Error("config: '" + key + "' has a non-integer entry: '" + cell +
                  "'");
    out.push_back(v);
  }
  if (out.empty())
    throw Error("config: '" + key + "' is an empty list");
  return out;
}

GeneratorConfig generator_config_from(const KeyValueConfig& cfg,
                                      const GeneratorConfig& d) {
  GeneratorConfig g;
  g.in_channels = static_cast<int>(cfg.get_int("generator.in_channels",
                                               d.in_channels));
  g.base_channels = static_cast<int>(
      cfg.get_int("generator.base_channels", d.base_channels));
  g.upsample_factors =
      cfg.get_int_list("generator.upsample_factors", d.upsample_factors);
  g.resblock_kernel = static_cast<int>(
      cfg.get_int("generator.resblock_kernel", d.resblock_kernel));
  g.resblock_dilations =
      cfg.get_int_list("generator.resblock_dilations", d.resblock_dilations);
  g.ar_chunk = static_cast<int>(cfg.get_int("generator.ar_chunk", d.ar_chunk));
  g.ar_embed = static_cast<int>(cfg.get_int("generator.ar_embed", d.ar_embed));
  g.sample_rate =
      static_cast<int>(cfg.get_int("generator.sample_rate", d.sample_rate));
  g.frame_rate = cfg.get_double("generator.frame_rate", d.frame_rate);
  return g;
}

TrainConfig train_config_from(const KeyValueConfig& cfg,
                              const TrainConfig& d) {
  TrainConfig t = d;
  t.steps = cfg.get_int("train.steps", d.steps);
  t.adam.lr = static_cast<float>(cfg.get_double("train.lr", d.adam.lr));
  t.adam.beta1 = static_cast<float>(cfg.get_double("train.beta1", d.adam.beta1));
  t.adam.beta2 = static_cast<float>(cfg.get_double("train.beta2", d.adam.beta2));
  t.adam.eps = static_cast<float>(cfg.get_double("train.eps", d.adam.eps));
  t.crop_chunks =
      static_cast<int>(cfg.get_int("train.crop_chunks", d.crop_chunks));
  t.wav_l1_weight = static_cast<float>(
      cfg.get_double("train.wav_l1_weight", d.wav_l1_weight));
  t.seed = static_cast<uint64_t>(cfg.get_int("train.seed",
                                             static_cast<int64_t>(d.seed)));
  t.checkpoint_every =
      cfg.get_int("train.checkpoint_every", d.checkpoint_every);
  return t;
}

MelConfig mel_config_from(const KeyValueConfig& cfg, const MelConfig& d) {
  MelConfig m;
  m.n_fft = static_cast<int>(cfg.get_int("mel.n_fft", d.n_fft));
  m.hop = static_cast<int>(cfg.get_int("mel.hop", d.hop));
  m.win = static_cast<int>(cfg.get_int("mel.win", d.win));
  m.n_mels = static_cast<int>(cfg.get_int("mel.n_mels", d.n_mels));
  m.fmin = cfg.get_double("mel.fmin", d.fmin);
  m.fmax = cfg.get_double("mel.fmax", d.fmax);
  m.sample_rate =
      static_cast<int>(cfg.get_int("mel.sample_rate", d.sample_rate));
  m.log_floor = cfg.get_double("mel.log_floor", d.log_floor);
  return m;
}

void save_generator_config(const std::string& path, const GeneratorConfig& g) {
  std::ofstream out(path);
  if (!out) throw Error("save_generator_config: cannot open " + path);
  auto list = [](const std::vector<int>& v) {
    std::string s;
    for (size_t i = 0; i < v.size(); ++i)
      s += (i ? "," : "") + std::to_string(v[i]);
    return s;
  };
  out << "[generator]\n";
  out << "in_channels = " << g.in_channels << "\n";
  out << "base_channels = " << g.base_channels << "\n";
  out << "upsample_factors = " << list(g.upsample_factors) << "\n";
  out << "resblock_kernel = " << g.resblock_kernel << "\n";
  out << "resblock_dilations = " << list(g.resblock_dilations) << "\n";
  out << "ar_chunk = " << g.ar_chunk << "\n";
  out << "ar_embed = " << g.ar_embed << "\n";
  out << "sample_rate = " << g.sample_rate << "\n";
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.17g", g.frame_rate);
  out << "frame_rate = " << buf << "\n";
  if (!out) throw Error("save_generator_config: write failed for " + path);
}

std::vector<int> default_upsample_factors(int product) {
  if (product < 1) throw Error("default_upsample_factors: product must be >= 1");
  std::vector<int> factors;
  int rest = product;
  while (rest > 1) {
    int f = 0;
    for (int cand = 12; cand >= 2; --cand)
      if (rest % cand == 0) {
        f = cand;
        break;
      }
    if (f == 0) {  // prime remainder above 12
      f = rest;
    }
    factors.push_back(f);
    rest /= f;
  }
  if (factors.empty()) factors.push_back(1);
  return factors;
}

}  // namespace artic
