// include/artic/storage.hpp

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

#ifndef ARTIC_STORAGE_HPP_
#define ARTIC_STORAGE_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "artic/types.hpp"

namespace artic {

// PCM16 mono RIFF/WAVE. Anything else (stereo, float, compressed) is
// rejected rather than converted.
Waveform read_wav(const std::string& path);
void write_wav(const std::string& path, const Waveform& w);

// AFT: binary feature-track container.
//   8-byte magic "AFTRK\0\0\1", little-endian throughout;
//   u32 version; f64 frame_rate; u64 n_frames; u32 n_channels;
//   per channel: u32 byte length + UTF-8 name; row-major f32 payload.
FeatureTrack read_aft(const std::string& path);
void write_aft(const std::string& path, const FeatureTrack& t);

// CSV with a header row of channel names and a numeric body.
FeatureTrack import_csv_features(const std::string& path, double frame_rate);

struct TensorEntry {
  std::vector<int64_t> shape;
  std::vector<float> values;

  int64_t numel() const {
    int64_t n = 1;
    for (int64_t d : shape) n *= d;
    return n;
  }
};

// Named-tensor table with optional optimizer moments. Round trips are
// bit-exact; config_digest lets loaders detect architecture mismatches.
struct Checkpoint {
  uint32_t format_version = 1;
  std::string config_digest;
  int64_t step = 0;
  std::map<std::string, TensorEntry> tensors;
  std::map<std::string, TensorEntry> optimizer_state;
};

Checkpoint read_checkpoint(const std::string& path);
void write_checkpoint(const std::string& path, const Checkpoint& c);

}  // namespace artic

#endif  // ARTIC_STORAGE_HPP_
