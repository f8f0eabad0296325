// include/artic/bench.hpp

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

#ifndef ARTIC_BENCH_HPP_
#define ARTIC_BENCH_HPP_

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "artic/types.hpp"
#include "artic/vocoder.hpp"

namespace artic {

struct BenchReport {
  int trials = 0;
  std::vector<double> trial_means_s;  // mean per-utterance time, one per trial
  double mean_s = 0.0;                // mean of trial means
  double std_s = 0.0;                 // unbiased sample std of trial means
  double rtf = 0.0;                   // total synthesis time / total audio time
  int64_t param_count = 0;
  int thread_count = 1;
  std::string hardware_note;

  std::string to_json() const;
  std::string to_table() const;
};

// Monotonic clock in seconds; injectable for deterministic tests.
using ClockFn = std::function<double()>;
ClockFn steady_clock_fn();

// Times feats -> waveform only (no preprocessing). Each trial runs one
// untimed warm-up synthesis, then times every utterance once; the report
// carries the per-trial means and their mean +/- sample std.
BenchReport time_synthesis(const Generator& g,
                           std::span<const FeatureTrack> test_set,
                           int trials = 5, ClockFn clock = {},
                           int thread_count = 1,
                           const std::string& hardware_note = "cpu");

// "0" below 1000, otherwise scientific "d.d x 10^e" with UTF-8 superscripts
// (13000000 -> "1.3×10⁷").
std::string format_param_count(int64_t count);

// Exact parameter count plus its scientific-notation rendering.
std::pair<int64_t, std::string> report_params(const Generator& g);

}  // namespace artic

#endif  // ARTIC_BENCH_HPP_
