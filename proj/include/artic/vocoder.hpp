// include/artic/vocoder.hpp

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

// Time-domain feature-to-waveform generator: a stack of transposed-conv
// upsampling stages with dilated residual blocks, conditioned
// autoregressively on the previous audio chunk through a strided-conv
// encoder. Audio is produced chunk by chunk; during training the previous
// chunk is teacher-forced from ground truth, at synthesis time the
// generator feeds on its own output.

#ifndef ARTIC_VOCODER_HPP_
#define ARTIC_VOCODER_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "artic/autodiff.hpp"
#include "artic/dsp.hpp"
#include "artic/storage.hpp"
#include "artic/types.hpp"

namespace artic {

struct GeneratorConfig {
  int in_channels = 19;
  int base_channels = 256;
  std::vector<int> upsample_factors = {10, 8};
  int resblock_kernel = 3;
  std::vector<int> resblock_dilations = {1, 3, 9};
  int ar_chunk = 800;   // output samples per autoregressive step
  int ar_embed = 64;    // encoder output channels
  int sample_rate = 16000;
  double frame_rate = 200.0;

  int upsample_product() const {
    int p = 1;
    for (int f : upsample_factors) p *= f;
    return p;
  }
  int chunk_frames() const { return ar_chunk / upsample_product(); }
  void validate() const;
  std::string digest() const;

  // Small configuration that trains in minutes on a laptop CPU.
  static GeneratorConfig desk_tier();
};

class Generator {
 public:
  GeneratorConfig config;
  std::vector<std::string> names;
  std::vector<ad::Tensor> params;

  ad::Tensor& param(const std::string& name);
  const ad::Tensor& param(const std::string& name) const;
};

Generator build_generator(const GeneratorConfig& cfg, uint64_t seed);

int64_t count_params(const Generator& g);

// feats: [B, in_channels, chunk_frames], prev_audio: [B, 1, ar_chunk].
// Returns [B, 1, ar_chunk] in (-1, 1).
ad::Tensor forward_chunk(const Generator& g, const ad::Tensor& feats,
                         const ad::Tensor& prev_audio);

// Free-running chunked synthesis from zero seed audio. Output length is
// exactly n_frames * upsample_product.
Waveform synthesize(const Generator& g, const FeatureTrack& feats);

struct TrainPair {
  std::string id;
  FeatureTrack feats;
  Waveform audio;
};

struct TrainConfig {
  int64_t steps = 2000;
  ad::AdamConfig adam{.lr = 1e-3f, .beta1 = 0.9f, .beta2 = 0.999f,
                      .eps = 1e-8f};
  int crop_chunks = 2;          // training crop length, in AR chunks
  float wav_l1_weight = 0.1f;   // waveform L1 on top of the log-mel L1
  uint64_t seed = 0;
  int64_t checkpoint_every = 500;  // 0 = final checkpoint only
  std::string out_dir;             // empty = keep everything in memory
  std::optional<MelConfig> loss_mel;  // default derives from the rates
};

struct TrainStepLog {
  int64_t step = 0;
  double mel_l1 = 0.0;
  double wav_l1 = 0.0;
  double wallclock_s = 0.0;
};

// Runs optimizer steps until opt.step == cfg.steps (so resuming from a
// checkpoint continues the exact same trajectory). Returns the per-step
// loss log for the steps executed by this call.
std::vector<TrainStepLog> train(Generator& g, ad::AdamState& opt,
                                const std::vector<TrainPair>& data,
                                const TrainConfig& cfg);

// Differentiable log-mel-spectrogram L1 between two [1, 1, T] signals.
ad::Tensor spectral_l1(const ad::Tensor& a, const ad::Tensor& b,
                       const MelConfig& cfg);

Checkpoint to_checkpoint(const Generator& g, const ad::AdamState* opt,
                         int64_t step);
// Restores parameters (and optimizer moments when opt is given); throws on
// config-digest or shape mismatch.
void load_checkpoint(Generator& g, const Checkpoint& c,
                     ad::AdamState* opt = nullptr);

void append_train_log(const std::string& path,
                      const std::vector<TrainStepLog>& log, uint64_t seed,
                      bool write_header);

}  // namespace artic

#endif  // ARTIC_VOCODER_HPP_
