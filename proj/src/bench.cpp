// src/bench.cpp

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

#include "artic/bench.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>

#include "json.hpp"

namespace artic {

ClockFn steady_clock_fn() {
  return [] {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
  };
}

std::string format_param_count(int64_t count) {
  if (count < 0) throw Error("format_param_count: negative count");
  if (count < 1000) return std::to_string(count);
  int exponent = static_cast<int>(std::floor(std::log10(static_cast<double>(count))));
  double mantissa = static_cast<double>(count) / std::pow(10.0, exponent);
  mantissa = std::round(mantissa * 10.0) / 10.0;
  if (mantissa >= 10.0) {
    mantissa = 1.0;
    ++exponent;
  }
  static const char* kSuperscripts[10] = {"⁰", "¹", "²",
                                          "³", "⁴", "⁵",
                                          "⁶", "⁷", "⁸",
                                          "⁹"};
  std::string exp_str;
  for (char c : std::to_string(exponent)) exp_str += kSuperscripts[c - '0'];
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.1f", mantissa);
  return std::string(buf) + "×10" + exp_str;
}

std::pair<int64_t, std::string> report_params(const Generator& g) {
  int64_t n = count_params(g);
  return {n, format_param_count(n)};
}

BenchReport time_synthesis(const Generator& g,
                           std::span<const FeatureTrack> test_set, int trials,
                           ClockFn clock, int thread_count,
                           const std::string& hardware_note) {
  if (test_set.empty()) throw Error("time_synthesis: empty test set");
  if (trials < 1) throw Error("time_synthesis: trials must be >= 1");
  if (!clock) clock = steady_clock_fn();

  BenchReport rep;
  rep.trials = trials;
  rep.param_count = count_params(g);
  rep.thread_count = thread_count;
  rep.hardware_note = hardware_note;

  double total_time = 0.0, total_audio = 0.0;
  for (int trial = 0; trial < trials; ++trial) {
    synthesize(g, test_set[0]);  // warm-up, untimed
    double trial_total = 0.0;
    for (const auto& feats : test_set) {
      double t0 = clock();
      Waveform w = synthesize(g, feats);
      double dt = clock() - t0;
      trial_total += dt;
      total_time += dt;
      total_audio += w.duration_s();
    }
    rep.trial_means_s.push_back(trial_total /
                                static_cast<double>(test_set.size()));
  }

  double mean = 0.0;
  for (double t : rep.trial_means_s) mean += t;
  mean /= trials;
  double ss = 0.0;
  for (double t : rep.trial_means_s) ss += (t - mean) * (t - mean);
  rep.mean_s = mean;
  rep.std_s = trials > 1 ? std::sqrt(ss / (trials - 1)) : 0.0;
  rep.rtf = total_audio > 0.0 ? total_time / total_audio : 0.0;
  return rep;
}

std::string BenchReport::to_json() const {
  nlohmann::json j;
  j["trials"] = trials;
  j["trial_means_s"] = trial_means_s;
  j["mean_s"] = mean_s;
  j["std_s"] = std_s;
  j["rtf"] = rtf;
  j["param_count"] = param_count;
  j["param_count_sci"] = format_param_count(param_count);
  j["thread_count"] = thread_count;
  j["hardware_note"] = hardware_note;
  j["timed_region"] = "synthesize only (features to waveform)";
  return j.dump(2);
}

std::string BenchReport::to_table() const {
  char buf[256];
  std::string out;
  std::snprintf(buf, sizeof(buf), "trials        %d\n", trials);
  out += buf;
  std::snprintf(buf, sizeof(buf),
                "time/utt (s)  %.3f ± %.3f  (mean ± std over trials)\n",
                mean_s, std_s);
  out += buf;
  std::snprintf(buf, sizeof(buf), "rtf           %.4f\n", rtf);
  out += buf;
  std::snprintf(buf, sizeof(buf), "params        %s (%lld)\n",
                format_param_count(param_count).c_str(),
                static_cast<long long>(param_count));
  out += buf;
  std::snprintf(buf, sizeof(buf), "threads       %d\n", thread_count);
  out += buf;
  std::snprintf(buf, sizeof(buf), "hardware      %s\n", hardware_note.c_str());
  out += buf;
  out += "timed region  synthesize only (features to waveform)\n";
  return out;
}

}  // namespace artic
