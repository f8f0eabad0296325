// src/vocoder.cpp

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

#include "artic/vocoder.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>

namespace artic {

namespace {

struct LayerSpec {
  int kernel = 0;
  int padding = 0;
};

// Strided layers divide the length exactly when stride | length.
LayerSpec down_spec(int s) {
  return s % 2 == 0 ? LayerSpec{2 * s, s / 2} : LayerSpec{2 * s + 1, s};
}
// Transposed layers multiply the length exactly.
LayerSpec up_spec(int s) {
  return s % 2 == 0 ? LayerSpec{2 * s, s / 2} : LayerSpec{2 * s + 1, (s + 1) / 2};
}

std::vector<int> encoder_channels(const GeneratorConfig& cfg) {
  std::vector<int> ch;
  int c = std::max(4, cfg.ar_embed / 4);
  ch.push_back(c);
  for (size_t i = 0; i < cfg.upsample_factors.size(); ++i) {
    c = std::min(cfg.ar_embed, 2 * c);
    ch.push_back(c);
  }
  return ch;
}

uint64_t fnv1a(const std::string& bytes) {
  uint64_t h = 0xcbf29ce484222325ull;
  for (char c : bytes) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ull;
  }
  return h;
}

}  // namespace

void GeneratorConfig::validate() const {
  if (in_channels < 1) throw Error("GeneratorConfig: in_channels must be >= 1");
  if (upsample_factors.empty())
    throw Error("GeneratorConfig: need at least one upsample factor");
  for (int f : upsample_factors)
    if (f < 1) throw Error("GeneratorConfig: upsample factors must be >= 1");
  int n_stages = static_cast<int>(upsample_factors.size());
  if (base_channels < (1 << n_stages) ||
      base_channels % (1 << n_stages) != 0)
    throw Error("GeneratorConfig: base_channels must be a multiple of 2^" +
                std::to_string(n_stages) + " (one halving per stage)");
  if (resblock_kernel < 1 || resblock_kernel % 2 == 0)
    throw Error("GeneratorConfig: resblock_kernel must be odd");
  if (resblock_dilations.empty())
    throw Error("GeneratorConfig: need at least one resblock dilation");
  for (int d : resblock_dilations)
    if (d < 1) throw Error("GeneratorConfig: dilations must be >= 1");
  if (ar_embed < 4 || ar_embed % 4 != 0)
    throw Error("GeneratorConfig: ar_embed must be a positive multiple of 4");
  if (sample_rate <= 0 || frame_rate <= 0)
    throw Error("GeneratorConfig: rates must be positive");
  int product = upsample_product();
  int expected = static_cast<int>(std::llround(sample_rate / frame_rate));
  if (product != expected)
    throw Error("GeneratorConfig: upsample product " + std::to_string(product) +
                " does not match round(sample_rate/frame_rate) = " +
                std::to_string(expected));
  if (ar_chunk <= 0 || ar_chunk % product != 0)
    throw Error("GeneratorConfig: ar_chunk must be a positive multiple of the "
                "upsample product " +
                std::to_string(product));
}

std::string GeneratorConfig::digest() const {
  std::string s;
  char buf[64];
  auto add_int = [&](long long v) {
    std::snprintf(buf, sizeof(buf), "%lld;", v);
    s += buf;
  };
  add_int(in_channels);
  add_int(base_channels);
  for (int f : upsample_factors) add_int(f);
  add_int(resblock_kernel);
  for (int d : resblock_dilations) add_int(d);
  add_int(ar_chunk);
  add_int(ar_embed);
  add_int(sample_rate);
  std::snprintf(buf, sizeof(buf), "%.17g;", frame_rate);
  s += buf;
  uint64_t h = fnv1a(s);
  std::snprintf(buf, sizeof(buf), "g%016llx", static_cast<unsigned long long>(h));
  return buf;
}

GeneratorConfig GeneratorConfig::desk_tier() {
  GeneratorConfig cfg;
  cfg.base_channels = 32;
  cfg.ar_embed = 32;
  return cfg;
}

ad::Tensor& Generator::param(const std::string& name) {
  for (size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return params[i];
  throw Error("Generator: no parameter named '" + name + "'");
}

const ad::Tensor& Generator::param(const std::string& name) const {
  for (size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return params[i];
  throw Error("Generator: no parameter named '" + name + "'");
}

namespace {

void add_conv_params(Generator& g, uint64_t seed, const std::string& name,
                     int64_t c_out_dim0, int64_t c_mid_dim1, int64_t k,
                     int64_t fan_in, int64_t bias_len) {
  double bound = std::sqrt(1.0 / static_cast<double>(fan_in));
  auto fill = [&](const std::string& pname, std::vector<int64_t> shape) {
    ad::Rng rng(ad::Rng::derive(seed, pname));
    int64_t n = 1;
    for (int64_t d : shape) n *= d;
    std::vector<float> v(static_cast<size_t>(n));
    for (auto& x : v)
      x = rng.uniform(static_cast<float>(-bound), static_cast<float>(bound));
    g.names.push_back(pname);
    g.params.push_back(
        ad::Tensor::from_values(std::move(shape), std::move(v), true));
  };
  fill(name + ".w", {c_out_dim0, c_mid_dim1, k});
  fill(name + ".b", {bias_len});
}

}  // namespace

Generator build_generator(const GeneratorConfig& cfg, uint64_t seed) {
  cfg.validate();
  Generator g;
  g.config = cfg;

  // Audio encoder: strides are the upsample factors reversed, taking
  // ar_chunk samples back down to chunk_frames.
  auto ench = encoder_channels(cfg);
  add_conv_params(g, seed, "enc.in", ench[0], 1, 7, 1 * 7, ench[0]);
  std::vector<int> strides(cfg.upsample_factors.rbegin(),
                           cfg.upsample_factors.rend());
  for (size_t i = 0; i < strides.size(); ++i) {
    LayerSpec spec = down_spec(strides[i]);
    add_conv_params(g, seed, "enc.down" + std::to_string(i), ench[i + 1],
                    ench[i], spec.kernel, int64_t(ench[i]) * spec.kernel,
                    ench[i + 1]);
  }
  add_conv_params(g, seed, "enc.out", cfg.ar_embed, ench.back(), 3,
                  int64_t(ench.back()) * 3, cfg.ar_embed);

  // Main stack.
  int c = cfg.base_channels;
  add_conv_params(g, seed, "gen.in", c, cfg.in_channels + cfg.ar_embed, 7,
                  int64_t(cfg.in_channels + cfg.ar_embed) * 7, c);
  for (size_t i = 0; i < cfg.upsample_factors.size(); ++i) {
    int s = cfg.upsample_factors[i];
    LayerSpec spec = up_spec(s);
    int c_out = c / 2;
    // Transposed-conv weight layout is [C_in, C_out, K].
    add_conv_params(g, seed, "gen.up" + std::to_string(i), c, c_out,
                    spec.kernel, int64_t(c) * spec.kernel, c_out);
    c = c_out;
    for (size_t j = 0; j < cfg.resblock_dilations.size(); ++j) {
      std::string base =
          "gen.up" + std::to_string(i) + ".res" + std::to_string(j);
      add_conv_params(g, seed, base + ".a", c, c, cfg.resblock_kernel,
                      int64_t(c) * cfg.resblock_kernel, c);
      add_conv_params(g, seed, base + ".b", c, c, cfg.resblock_kernel,
                      int64_t(c) * cfg.resblock_kernel, c);
    }
  }
  add_conv_params(g, seed, "gen.out", 1, c, 7, int64_t(c) * 7, 1);
  return g;
}

int64_t count_params(const Generator& g) {
  int64_t n = 0;
  for (const auto& p : g.params) n += p.numel();
  return n;
}

ad::Tensor forward_chunk(const Generator& g, const ad::Tensor& feats,
                         const ad::Tensor& prev_audio) {
  const auto& cfg = g.config;
  int64_t m = cfg.chunk_frames();
  if (feats.shape().size() != 3 || feats.shape()[1] != cfg.in_channels ||
      feats.shape()[2] != m)
    throw Error("forward_chunk: feats must be [B, " +
                std::to_string(cfg.in_channels) + ", " + std::to_string(m) +
                "]");
  if (prev_audio.shape().size() != 3 || prev_audio.shape()[1] != 1 ||
      prev_audio.shape()[2] != cfg.ar_chunk ||
      prev_audio.shape()[0] != feats.shape()[0])
    throw Error("forward_chunk: prev_audio must be [B, 1, " +
                std::to_string(cfg.ar_chunk) + "]");

  // Encode the previous chunk down to frame rate.
  ad::Tensor h = ad::conv1d(prev_audio, g.param("enc.in.w"),
                            &g.param("enc.in.b"), 1, 1, 3);
  std::vector<int> strides(cfg.upsample_factors.rbegin(),
                           cfg.upsample_factors.rend());
  for (size_t i = 0; i < strides.size(); ++i) {
    LayerSpec spec = down_spec(strides[i]);
    std::string base = "enc.down" + std::to_string(i);
    h = ad::conv1d(ad::leaky_relu(h), g.param(base + ".w"),
                   &g.param(base + ".b"), strides[i], 1, spec.padding);
  }
  ad::Tensor emb = ad::conv1d(ad::leaky_relu(h), g.param("enc.out.w"),
                              &g.param("enc.out.b"), 1, 1, 1);

  // Condition the upsampling stack on [features | embedding].
  ad::Tensor parts[] = {feats, emb};
  ad::Tensor x = ad::concat(parts, 1);
  x = ad::conv1d(x, g.param("gen.in.w"), &g.param("gen.in.b"), 1, 1, 3);
  for (size_t i = 0; i < cfg.upsample_factors.size(); ++i) {
    int s = cfg.upsample_factors[i];
    LayerSpec spec = up_spec(s);
    std::string up = "gen.up" + std::to_string(i);
    x = ad::conv_transpose1d(ad::leaky_relu(x), g.param(up + ".w"),
                             &g.param(up + ".b"), s, spec.padding);
    for (size_t j = 0; j < cfg.resblock_dilations.size(); ++j) {
      int d = cfg.resblock_dilations[j];
      std::string base = up + ".res" + std::to_string(j);
      ad::Tensor t =
          ad::conv1d(ad::leaky_relu(x), g.param(base + ".a.w"),
                     &g.param(base + ".a.b"), 1, d,
                     d * (cfg.resblock_kernel - 1) / 2);
      t = ad::conv1d(ad::leaky_relu(t), g.param(base + ".b.w"),
                     &g.param(base + ".b.b"), 1, 1,
                     (cfg.resblock_kernel - 1) / 2);
      x = ad::add(x, t);
    }
  }
  x = ad::conv1d(ad::leaky_relu(x), g.param("gen.out.w"), &g.param("gen.out.b"),
                 1, 1, 3);
  return ad::tanh(x);
}

namespace {

// [n_items, C, frames_per_item] slice of a track; frames past the end are
// zero.
ad::Tensor feats_batch_tensor(const FeatureTrack& t, int64_t frame0,
                              int64_t frames_per_item, int64_t n_items) {
  int64_t C = t.n_channels();
  std::vector<float> v(
      static_cast<size_t>(n_items * C * frames_per_item), 0.0f);
  for (int64_t b = 0; b < n_items; ++b)
    for (int64_t c = 0; c < C; ++c)
      for (int64_t f = 0; f < frames_per_item; ++f) {
        int64_t frame = frame0 + b * frames_per_item + f;
        if (frame < t.n_frames)
          v[(b * C + c) * frames_per_item + f] = t.at(frame, c);
      }
  return ad::Tensor::from_values({n_items, C, frames_per_item}, std::move(v));
}

// [n_items, 1, len] audio segments starting at start + b*len; chunk -1
// (before the signal) is zeros.
ad::Tensor audio_batch_tensor(const Waveform& w, int64_t start, int64_t len,
                              int64_t n_items) {
  std::vector<float> v(static_cast<size_t>(n_items * len), 0.0f);
  for (int64_t b = 0; b < n_items; ++b) {
    int64_t s0 = start + b * len;
    for (int64_t j = 0; j < len; ++j) {
      int64_t idx = s0 + j;
      if (idx >= 0 && idx < static_cast<int64_t>(w.samples.size()))
        v[b * len + j] = w.samples[static_cast<size_t>(idx)];
    }
  }
  return ad::Tensor::from_values({n_items, 1, len}, std::move(v));
}

struct SpectralBasis {
  MelConfig cfg;
  ad::Tensor stft_w;  // [2*n_bins, 1, win]: cos rows then sin rows
  ad::Tensor mel_w;   // [n_mels, n_bins, 1]
};

SpectralBasis make_spectral_basis(const MelConfig& cfg) {
  cfg.validate();
  int nb = cfg.n_bins();
  auto window = hann_window(cfg.win);
  std::vector<float> stft(static_cast<size_t>(2 * nb) * cfg.win);
  for (int k = 0; k < nb; ++k) {
    for (int n = 0; n < cfg.win; ++n) {
      double phase = 2.0 * std::numbers::pi * k * n / cfg.n_fft;
      stft[static_cast<size_t>(k) * cfg.win + n] =
          static_cast<float>(window[n] * std::cos(phase));
      stft[static_cast<size_t>(k + nb) * cfg.win + n] =
          static_cast<float>(window[n] * std::sin(phase));
    }
  }
  auto fb = mel_filterbank(cfg);
  std::vector<float> melw(static_cast<size_t>(cfg.n_mels) * nb);
  for (int m = 0; m < cfg.n_mels; ++m)
    for (int k = 0; k < nb; ++k)
      melw[static_cast<size_t>(m) * nb + k] = static_cast<float>(fb[m][k]);
  SpectralBasis basis;
  basis.cfg = cfg;
  basis.stft_w =
      ad::Tensor::from_values({2 * nb, 1, cfg.win}, std::move(stft));
  basis.mel_w = ad::Tensor::from_values({cfg.n_mels, nb, 1}, std::move(melw));
  return basis;
}

ad::Tensor spectral_logmel(const ad::Tensor& x, const SpectralBasis& basis) {
  if (x.shape().size() != 3 || x.shape()[0] != 1 || x.shape()[1] != 1)
    throw Error("spectral_logmel: expects [1, 1, T]");
  if (x.shape()[2] < basis.cfg.win)
    throw Error("spectral_logmel: signal shorter than analysis window");
  int nb = basis.cfg.n_bins();
  ad::Tensor spec = ad::conv1d(x, basis.stft_w, nullptr, basis.cfg.hop, 1, 0);
  ad::Tensor re = ad::slice(spec, 1, 0, nb);
  ad::Tensor im = ad::slice(spec, 1, nb, nb);
  ad::Tensor power = ad::add(ad::mul(re, re), ad::mul(im, im));
  ad::Tensor mel = ad::conv1d(power, basis.mel_w, nullptr, 1, 1, 0);
  return ad::log(
      ad::clamp_min(mel, static_cast<float>(basis.cfg.log_floor)));
}

}  // namespace

ad::Tensor spectral_l1(const ad::Tensor& a, const ad::Tensor& b,
                       const MelConfig& cfg) {
  SpectralBasis basis = make_spectral_basis(cfg);
  return ad::l1_loss(spectral_logmel(a, basis), spectral_logmel(b, basis));
}

Waveform synthesize(const Generator& g, const FeatureTrack& feats) {
  const auto& cfg = g.config;
  if (feats.n_channels() != cfg.in_channels)
    throw Error("synthesize: track has " + std::to_string(feats.n_channels()) +
                " channels, generator expects " +
                std::to_string(cfg.in_channels));
  if (feats.n_frames < 1) throw Error("synthesize: empty feature track");

  int64_t m = cfg.chunk_frames();
  int64_t n_chunks = (feats.n_frames + m - 1) / m;
  int64_t product = cfg.upsample_product();

  Waveform out;
  out.sample_rate = cfg.sample_rate;
  out.samples.reserve(static_cast<size_t>(n_chunks) * cfg.ar_chunk);

  std::vector<float> prev(static_cast<size_t>(cfg.ar_chunk), 0.0f);
  for (int64_t chunk = 0; chunk < n_chunks; ++chunk) {
    ad::Tensor feat_t = feats_batch_tensor(feats, chunk * m, m, 1);
    ad::Tensor prev_t =
        ad::Tensor::from_values({1, 1, cfg.ar_chunk}, prev);
    ad::Tensor y = forward_chunk(g, feat_t, prev_t);
    prev = y.values();
    out.samples.insert(out.samples.end(), prev.begin(), prev.end());
  }
  out.samples.resize(static_cast<size_t>(feats.n_frames * product));
  return out;
}

std::vector<TrainStepLog> train(Generator& g, ad::AdamState& opt,
                                const std::vector<TrainPair>& data,
                                const TrainConfig& cfg) {
  const auto& gcfg = g.config;
  if (data.empty()) throw Error("train: empty dataset");
  if (cfg.crop_chunks < 1) throw Error("train: crop_chunks must be >= 1");
  int64_t m = gcfg.chunk_frames();
  int64_t product = gcfg.upsample_product();

  std::vector<int64_t> usable_chunks(data.size());
  for (size_t i = 0; i < data.size(); ++i) {
    const auto& pair = data[i];
    if (pair.feats.n_channels() != gcfg.in_channels)
      throw Error("train: utterance '" + pair.id + "' has " +
                  std::to_string(pair.feats.n_channels()) +
                  " channels, generator expects " +
                  std::to_string(gcfg.in_channels));
    int64_t n_samples = static_cast<int64_t>(pair.audio.samples.size());
    int64_t target = pair.feats.n_frames * product;
    if (std::abs(n_samples - target) > gcfg.ar_chunk)
      throw Error("train: utterance '" + pair.id + "' misaligned: " +
                  std::to_string(pair.feats.n_frames) + " frames imply " +
                  std::to_string(target) + " samples, audio has " +
                  std::to_string(n_samples));
    usable_chunks[i] =
        std::min(pair.feats.n_frames / m, n_samples / gcfg.ar_chunk);
    if (usable_chunks[i] < cfg.crop_chunks)
      throw Error("train: utterance '" + pair.id + "' shorter than one crop (" +
                  std::to_string(cfg.crop_chunks) + " chunks)");
  }

  MelConfig mel_cfg = cfg.loss_mel.has_value()
                          ? *cfg.loss_mel
                          : MelConfig::for_rate(gcfg.sample_rate,
                                                gcfg.frame_rate);
  int64_t crop_len = static_cast<int64_t>(cfg.crop_chunks) * gcfg.ar_chunk;
  if (crop_len < mel_cfg.win)
    throw Error("train: crop (" + std::to_string(crop_len) +
                " samples) is shorter than the loss analysis window (" +
                std::to_string(mel_cfg.win) + ")");
  SpectralBasis basis = make_spectral_basis(mel_cfg);

  if (!opt.initialized()) opt.init(g.params);
  uint64_t stream = ad::Rng::derive(cfg.seed, "train-step");

  namespace fs = std::filesystem;
  if (!cfg.out_dir.empty()) fs::create_directories(cfg.out_dir);

  std::vector<TrainStepLog> log;
  auto t_start = std::chrono::steady_clock::now();
  while (opt.step < cfg.steps) {
    int64_t s = opt.step;
    ad::Rng rng(ad::Rng::derive(stream, static_cast<uint64_t>(s)));
    int64_t u = rng.next_index(static_cast<int64_t>(data.size()));
    int64_t c0 = rng.next_index(usable_chunks[u] - cfg.crop_chunks + 1);
    const TrainPair& pair = data[static_cast<size_t>(u)];

    ad::Tensor feat_t =
        feats_batch_tensor(pair.feats, c0 * m, m, cfg.crop_chunks);
    // Teacher forcing: the previous chunk comes from ground truth.
    ad::Tensor prev_t = audio_batch_tensor(
        pair.audio, (c0 - 1) * gcfg.ar_chunk, gcfg.ar_chunk, cfg.crop_chunks);
    ad::Tensor ref_t =
        audio_batch_tensor(pair.audio, c0 * gcfg.ar_chunk, crop_len, 1);

    ad::Tensor y = ad::merge_batch_time(forward_chunk(g, feat_t, prev_t));
    ad::Tensor mel_l1 =
        ad::l1_loss(spectral_logmel(y, basis), spectral_logmel(ref_t, basis));
    ad::Tensor wav_l1 = ad::l1_loss(y, ref_t);
    ad::Tensor total = ad::add(mel_l1, ad::scale(wav_l1, cfg.wav_l1_weight));
    ad::backward(total);
    ad::adam_step(g.params, opt);

    double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                      t_start)
            .count();
    log.push_back({s, static_cast<double>(mel_l1.item()),
                   static_cast<double>(wav_l1.item()), elapsed});

    if (!cfg.out_dir.empty() && cfg.checkpoint_every > 0 &&
        opt.step % cfg.checkpoint_every == 0 && opt.step < cfg.steps) {
      write_checkpoint(
          (fs::path(cfg.out_dir) /
           ("ckpt_step" + std::to_string(opt.step) + ".ckpt"))
              .string(),
          to_checkpoint(g, &opt, opt.step));
    }
  }

  if (!cfg.out_dir.empty()) {
    write_checkpoint((fs::path(cfg.out_dir) / "ckpt_final.ckpt").string(),
                     to_checkpoint(g, &opt, opt.step));
    fs::path log_path = fs::path(cfg.out_dir) / "train_log.tsv";
    bool write_header = !fs::exists(log_path);
    append_train_log(log_path.string(), log, cfg.seed, write_header);
  }
  return log;
}

Checkpoint to_checkpoint(const Generator& g, const ad::AdamState* opt,
                         int64_t step) {
  Checkpoint c;
  c.config_digest = g.config.digest();
  c.step = step;
  for (size_t i = 0; i < g.names.size(); ++i)
    c.tensors[g.names[i]] =
        TensorEntry{g.params[i].shape(), g.params[i].values()};
  if (opt != nullptr && opt->initialized()) {
    for (size_t i = 0; i < g.names.size(); ++i) {
      c.optimizer_state[g.names[i] + ".m"] =
          TensorEntry{g.params[i].shape(), opt->m[i]};
      c.optimizer_state[g.names[i] + ".v"] =
          TensorEntry{g.params[i].shape(), opt->v[i]};
    }
  }
  return c;
}

void load_checkpoint(Generator& g, const Checkpoint& c, ad::AdamState* opt) {
  std::string expected = g.config.digest();
  if (c.config_digest != expected)
    throw Error("load_checkpoint: config digest mismatch (checkpoint " +
                c.config_digest + ", generator " + expected + ")");
  for (size_t i = 0; i < g.names.size(); ++i) {
    auto it = c.tensors.find(g.names[i]);
    if (it == c.tensors.end())
      throw Error("load_checkpoint: missing tensor '" + g.names[i] + "'");
    if (it->second.shape != g.params[i].shape())
      throw Error("load_checkpoint: shape mismatch for '" + g.names[i] + "'");
    g.params[i].values() = it->second.values;
    g.params[i].zero_grad();
  }
  if (opt != nullptr) {
    opt->init(g.params);
    opt->step = c.step;
    if (!c.optimizer_state.empty()) {
      for (size_t i = 0; i < g.names.size(); ++i) {
        auto mi = c.optimizer_state.find(g.names[i] + ".m");
        auto vi = c.optimizer_state.find(g.names[i] + ".v");
        if (mi == c.optimizer_state.end() || vi == c.optimizer_state.end())
          throw Error("load_checkpoint: missing optimizer moments for '" +
                      g.names[i] + "'");
        opt->m[i] = mi->second.values;
        opt->v[i] = vi->second.values;
      }
    }
  }
}

void append_train_log(const std::string& path,
                      const std::vector<TrainStepLog>& log, uint64_t seed,
                      bool write_header) {
  std::ofstream out(path, std::ios::app);
  if (!out) throw Error("append_train_log: cannot open " + path);
  if (write_header) {
    out << "# seed=" << seed << "\n";
    out << "step\tmel_l1\twav_l1\twallclock_s\n";
  }
  char buf[128];
  for (const auto& e : log) {
    std::snprintf(buf, sizeof(buf), "%lld\t%.6f\t%.6f\t%.3f\n",
                  static_cast<long long>(e.step), e.mel_l1, e.wav_l1,
                  e.wallclock_s);
    out << buf;
  }
}

}  // namespace artic
