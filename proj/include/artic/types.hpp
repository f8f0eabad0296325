// include/artic/types.hpp

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

#ifndef ARTIC_TYPES_HPP_
#define ARTIC_TYPES_HPP_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace artic {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Mono audio signal. Samples are nominally in [-1, 1]; writers clamp.
struct Waveform {
  int sample_rate = 0;
  std::vector<float> samples;

  double duration_s() const {
    return sample_rate > 0 ? static_cast<double>(samples.size()) / sample_rate
                           : 0.0;
  }
};

// Multichannel time series sampled at a fixed frame rate.
// data is row-major: data[frame * n_channels() + channel].
struct FeatureTrack {
  double frame_rate = 0.0;
  std::vector<std::string> channel_names;
  int64_t n_frames = 0;
  std::vector<float> data;

  int64_t n_channels() const {
    return static_cast<int64_t>(channel_names.size());
  }
  float at(int64_t frame, int64_t channel) const {
    return data[frame * n_channels() + channel];
  }
  float& at(int64_t frame, int64_t channel) {
    return data[frame * n_channels() + channel];
  }
  // Index of a named channel, or -1.
  int64_t channel_index(const std::string& name) const {
    for (size_t i = 0; i < channel_names.size(); ++i)
      if (channel_names[i] == name) return static_cast<int64_t>(i);
    return -1;
  }

  static FeatureTrack zeros(double frame_rate,
                            std::vector<std::string> channel_names,
                            int64_t n_frames) {
    FeatureTrack t;
    t.frame_rate = frame_rate;
    t.channel_names = std::move(channel_names);
    t.n_frames = n_frames;
    t.data.assign(static_cast<size_t>(n_frames) * t.channel_names.size(),
                  0.0f);
    return t;
  }
};

// Per-frame fundamental frequency in Hz; 0 marks an unvoiced frame.
struct F0Track {
  double frame_rate = 0.0;
  std::vector<float> values;
};

}  // namespace artic

#endif  // ARTIC_TYPES_HPP_
