// tests/testing_util.hpp

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

#ifndef ARTIC_TESTS_TESTING_UTIL_HPP_
#define ARTIC_TESTS_TESTING_UTIL_HPP_

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <string>
#include <vector>

#include "artic/autodiff.hpp"
#include "artic/storage.hpp"
#include "artic/types.hpp"

namespace artic::testing {

inline Waveform make_sine(int sample_rate, double freq, double seconds,
                          double amp = 0.5) {
  Waveform w;
  w.sample_rate = sample_rate;
  auto n = static_cast<size_t>(std::llround(seconds * sample_rate));
  w.samples.resize(n);
  for (size_t i = 0; i < n; ++i)
    w.samples[i] = static_cast<float>(
        amp * std::sin(2.0 * std::numbers::pi * freq * i / sample_rate));
  return w;
}

inline Waveform make_noise(int sample_rate, double seconds, uint64_t seed,
                           double amp = 0.5) {
  ad::Rng rng(seed);
  Waveform w;
  w.sample_rate = sample_rate;
  auto n = static_cast<size_t>(std::llround(seconds * sample_rate));
  w.samples.resize(n);
  for (auto& s : w.samples)
    s = rng.uniform(static_cast<float>(-amp), static_cast<float>(amp));
  return w;
}

inline FeatureTrack random_track(double frame_rate, int64_t n_frames,
                                 int64_t n_channels, uint64_t seed,
                                 float lo = -2.0f, float hi = 2.0f) {
  ad::Rng rng(seed);
  FeatureTrack t;
  t.frame_rate = frame_rate;
  for (int64_t c = 0; c < n_channels; ++c)
    t.channel_names.push_back("ch_" + std::to_string(c));
  t.n_frames = n_frames;
  t.data.resize(static_cast<size_t>(n_frames * n_channels));
  for (auto& v : t.data) v = rng.uniform(lo, hi);
  return t;
}

class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    auto base = std::filesystem::temp_directory_path();
    for (int i = 0; i < 10000; ++i) {
      auto candidate = base / ("artic_" + tag + "_" + std::to_string(i));
      std::error_code ec;
      if (std::filesystem::create_directory(candidate, ec)) {
        path_ = candidate;
        return;
      }
    }
    throw Error("TempDir: could not create a scratch directory");
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::filesystem::path path() const { return path_; }
  std::string file(const std::string& name) const {
    return (path_ / name).string();
  }

 private:
  std::filesystem::path path_;
};

// Articulatory-style synthetic utterance: 12 sensor channels at 200 Hz whose
// f0/amplitude channels actually drive the audio, so a model can learn the
// mapping.
struct SynthUtt {
  FeatureTrack ema;
  Waveform audio;
};

inline SynthUtt synthetic_utterance(uint64_t seed, double seconds = 1.0,
                                    int sample_rate = 16000,
                                    double frame_rate = 200.0) {
  const char* names[12] = {"jaw_x", "jaw_y", "ul_x", "ul_y", "ll_x", "ll_y",
                           "tt_x",  "tt_y",  "tb_x", "tb_y", "td_x", "td_y"};
  ad::Rng rng(seed);
  double f0_mid = rng.uniform_d(120.0, 220.0);
  double f0_dev = rng.uniform_d(10.0, 40.0);
  double f0_rate = rng.uniform_d(0.5, 2.0);
  double amp_mid = rng.uniform_d(0.15, 0.3);
  double amp_rate = rng.uniform_d(0.5, 2.0);
  double sensor_f[12], sensor_a[12], sensor_p[12];
  for (int c = 0; c < 12; ++c) {
    sensor_f[c] = rng.uniform_d(0.3, 3.0);
    sensor_a[c] = rng.uniform_d(0.2, 1.0);
    sensor_p[c] = rng.uniform_d(0.0, 6.28);
  }

  auto f0_at = [&](double t) {
    return f0_mid + f0_dev * std::sin(2.0 * std::numbers::pi * f0_rate * t);
  };
  auto amp_at = [&](double t) {
    return amp_mid *
           (0.6 + 0.4 * std::sin(2.0 * std::numbers::pi * amp_rate * t));
  };

  SynthUtt utt;
  // Audio: four-harmonic tone following the f0/amplitude contours.
  utt.audio.sample_rate = sample_rate;
  auto n = static_cast<size_t>(std::llround(seconds * sample_rate));
  utt.audio.samples.resize(n);
  double phase = 0.0;
  for (size_t i = 0; i < n; ++i) {
    double t = static_cast<double>(i) / sample_rate;
    phase += 2.0 * std::numbers::pi * f0_at(t) / sample_rate;
    double v = 0.0;
    for (int h = 1; h <= 4; ++h) v += std::sin(h * phase) / h;
    utt.audio.samples[i] = static_cast<float>(amp_at(t) * v / 2.0);
  }

  // Features: the tongue-tip channels carry the audio's control signals,
  // the rest are smooth decorations.
  utt.ema.frame_rate = frame_rate;
  utt.ema.channel_names.assign(names, names + 12);
  utt.ema.n_frames = static_cast<int64_t>(std::llround(seconds * frame_rate));
  utt.ema.data.resize(static_cast<size_t>(utt.ema.n_frames) * 12);
  for (int64_t f = 0; f < utt.ema.n_frames; ++f) {
    double t = static_cast<double>(f) / frame_rate;
    for (int c = 0; c < 12; ++c) {
      double v;
      if (c == 7)       // tt_y follows f0
        v = f0_at(t) / 200.0;
      else if (c == 9)  // tb_y follows amplitude
        v = amp_at(t) * 4.0;
      else
        v = sensor_a[c] * std::sin(2.0 * std::numbers::pi * sensor_f[c] * t +
                                   sensor_p[c]);
      utt.ema.at(f, c) = static_cast<float>(v);
    }
  }
  return utt;
}

// Writes <utt>.csv and <utt>.wav per utterance into dir.
inline void write_synthetic_corpus(const std::string& dir, int n_utts,
                                   double seconds, uint64_t seed,
                                   int sample_rate = 16000,
                                   double frame_rate = 200.0) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  for (int u = 0; u < n_utts; ++u) {
    SynthUtt utt = synthetic_utterance(ad::Rng::derive(seed, uint64_t(u)),
                                       seconds, sample_rate, frame_rate);
    std::string id = "utt" + std::string(u < 10 ? "0" : "") + std::to_string(u);
    write_wav((fs::path(dir) / (id + ".wav")).string(), utt.audio);
    std::ofstream csv((fs::path(dir) / (id + ".csv")).string());
    for (int64_t c = 0; c < 12; ++c)
      csv << (c ? "," : "") << utt.ema.channel_names[size_t(c)];
    csv << "\n";
    for (int64_t f = 0; f < utt.ema.n_frames; ++f) {
      for (int64_t c = 0; c < 12; ++c) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.8f", utt.ema.at(f, c));
        csv << (c ? "," : "") << buf;
      }
      csv << "\n";
    }
  }
}

}  // namespace artic::testing

#endif  // ARTIC_TESTS_TESTING_UTIL_HPP_
