// src/dsp.cpp

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

#include "artic/dsp.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace artic {

namespace {

constexpr double kPi = std::numbers::pi;

bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

double bessel_i0(double x) {
  // Series expansion; converges quickly for the beta values used here.
  double sum = 1.0, term = 1.0;
  double half = x / 2.0;
  for (int k = 1; k < 64; ++k) {
    term *= half / k;
    double add = term * term;
    sum += add;
    if (add < 1e-18 * sum) break;
  }
  return sum;
}

double sinc(double x) {
  if (std::abs(x) < 1e-12) return 1.0;
  return std::sin(kPi * x) / (kPi * x);
}

double hz_to_mel(double f) { return 2595.0 * std::log10(1.0 + f / 700.0); }
double mel_to_hz(double m) { return 700.0 * (std::pow(10.0, m / 2595.0) - 1.0); }

}  // namespace

void MelConfig::validate() const {
  if (n_fft <= 0 || !is_pow2(n_fft))
    throw Error("MelConfig: n_fft must be a positive power of two");
  if (!(0 < hop && hop <= win && win <= n_fft))
    throw Error("MelConfig: need 0 < hop <= win <= n_fft");
  if (n_mels < 1) throw Error("MelConfig: n_mels must be >= 1");
  if (sample_rate <= 0) throw Error("MelConfig: sample_rate must be > 0");
  if (!(0.0 <= fmin && fmin < fmax && fmax <= sample_rate / 2.0))
    throw Error("MelConfig: need 0 <= fmin < fmax <= sample_rate/2");
  if (log_floor <= 0.0) throw Error("MelConfig: log_floor must be > 0");
}

MelConfig MelConfig::for_rate(int sample_rate, double frame_rate) {
  if (sample_rate <= 0 || frame_rate <= 0)
    throw Error("MelConfig::for_rate: rates must be positive");
  MelConfig cfg;
  cfg.sample_rate = sample_rate;
  cfg.hop = static_cast<int>(std::llround(sample_rate / frame_rate));
  cfg.win = sample_rate <= 22050 ? 1024 : 2048;
  cfg.n_fft = cfg.win;
  if (cfg.hop > cfg.win) cfg.win = cfg.n_fft = 4096;
  cfg.n_mels = 80;
  cfg.fmin = 0.0;
  cfg.fmax = sample_rate / 2.0;
  cfg.log_floor = 1e-5;
  cfg.validate();
  return cfg;
}

void fft_inplace(std::vector<std::complex<double>>& a) {
  size_t n = a.size();
  if (!is_pow2(static_cast<int>(n)))
    throw Error("fft_inplace: size must be a power of two");
  for (size_t i = 1, j = 0; i < n; ++i) {
    size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (size_t len = 2; len <= n; len <<= 1) {
    double ang = -2.0 * kPi / static_cast<double>(len);
    std::complex<double> wlen(std::cos(ang), std::sin(ang));
    for (size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (size_t k = 0; k < len / 2; ++k) {
        std::complex<double> u = a[i + k];
        std::complex<double> v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wlen;
      }
    }
  }
}

std::vector<double> hann_window(int n) {
  std::vector<double> w(n);
  for (int i = 0; i < n; ++i)
    w[i] = 0.5 - 0.5 * std::cos(2.0 * kPi * i / n);
  return w;
}

std::vector<double> power_spectrum(std::span<const float> frame, int n_fft) {
  if (!is_pow2(n_fft)) throw Error("power_spectrum: n_fft must be power of two");
  if (static_cast<int>(frame.size()) > n_fft)
    throw Error("power_spectrum: frame longer than n_fft");
  std::vector<std::complex<double>> buf(n_fft, {0.0, 0.0});
  for (size_t i = 0; i < frame.size(); ++i) buf[i] = {frame[i], 0.0};
  fft_inplace(buf);
  std::vector<double> p(n_fft / 2 + 1);
  for (int k = 0; k <= n_fft / 2; ++k) p[k] = std::norm(buf[k]);
  return p;
}

std::vector<std::vector<double>> mel_filterbank(const MelConfig& cfg) {
  cfg.validate();
  int n_bins = cfg.n_bins();
  double mlo = hz_to_mel(cfg.fmin);
  double mhi = hz_to_mel(cfg.fmax);
  std::vector<double> edges(cfg.n_mels + 2);
  for (int j = 0; j < cfg.n_mels + 2; ++j)
    edges[j] = mel_to_hz(mlo + (mhi - mlo) * j / (cfg.n_mels + 1));
  std::vector<std::vector<double>> fb(cfg.n_mels,
                                      std::vector<double>(n_bins, 0.0));
  for (int m = 0; m < cfg.n_mels; ++m) {
    double lo = edges[m], mid = edges[m + 1], hi = edges[m + 2];
    for (int k = 0; k < n_bins; ++k) {
      double f = static_cast<double>(k) * cfg.sample_rate / cfg.n_fft;
      double w = 0.0;
      if (f >= lo && f <= mid && mid > lo)
        w = (f - lo) / (mid - lo);
      else if (f > mid && f <= hi && hi > mid)
        w = (hi - f) / (hi - mid);
      fb[m][k] = std::max(0.0, w);
    }
  }
  return fb;
}

Waveform resample(const Waveform& w, int target_rate) {
  if (w.sample_rate <= 0) throw Error("resample: source rate must be > 0");
  if (target_rate <= 0) throw Error("resample: target rate must be > 0");
  if (target_rate == w.sample_rate) return w;

  Waveform out;
  out.sample_rate = target_rate;
  int64_t len = static_cast<int64_t>(w.samples.size());
  if (len == 0) return out;

  double ratio = static_cast<double>(target_rate) / w.sample_rate;
  int64_t out_len = std::llround(len * ratio);
  out.samples.resize(out_len);

  double cutoff = std::min(1.0, ratio);
  constexpr int kZeroCrossings = 64;
  constexpr double kBeta = 8.0;
  double half_width = kZeroCrossings / cutoff;
  double i0_beta = bessel_i0(kBeta);

  auto sample_at = [&](int64_t k) -> double {
    if (k < 0) k = 0;
    if (k >= len) k = len - 1;
    return w.samples[static_cast<size_t>(k)];
  };

  for (int64_t n = 0; n < out_len; ++n) {
    double center = static_cast<double>(n) / ratio;
    int64_t k_lo = static_cast<int64_t>(std::ceil(center - half_width));
    int64_t k_hi = static_cast<int64_t>(std::floor(center + half_width));
    double acc = 0.0, wsum = 0.0;
    for (int64_t k = k_lo; k <= k_hi; ++k) {
      double tau = static_cast<double>(k) - center;
      double frac = tau / half_width;
      double win = bessel_i0(kBeta * std::sqrt(std::max(0.0, 1.0 - frac * frac))) /
                   i0_beta;
      double h = cutoff * sinc(cutoff * tau) * win;
      acc += h * sample_at(k);
      wsum += h;
    }
    out.samples[static_cast<size_t>(n)] =
        static_cast<float>(wsum != 0.0 ? acc / wsum : 0.0);
  }
  return out;
}

FeatureTrack log_mel(const Waveform& w, const MelConfig& cfg) {
  cfg.validate();
  int64_t len = static_cast<int64_t>(w.samples.size());
  if (len < cfg.win)
    throw Error("log_mel: waveform shorter than one analysis window (" +
                std::to_string(len) + " < " + std::to_string(cfg.win) + ")");
  int64_t n_frames = 1 + (len - cfg.win) / cfg.hop;

  auto window = hann_window(cfg.win);
  auto fb = mel_filterbank(cfg);

  FeatureTrack t;
  t.frame_rate = static_cast<double>(cfg.sample_rate) / cfg.hop;
  t.channel_names.reserve(cfg.n_mels);
  for (int m = 0; m < cfg.n_mels; ++m)
    t.channel_names.push_back("mel_" + std::to_string(m));
  t.n_frames = n_frames;
  t.data.resize(static_cast<size_t>(n_frames) * cfg.n_mels);

  std::vector<std::complex<double>> buf(cfg.n_fft);
  for (int64_t f = 0; f < n_frames; ++f) {
    int64_t start = f * cfg.hop;
    // Windowing stays in double; leakage bins are near-cancellation sums
    // and f32 rounding there is visible against the dense oracle.
    for (int i = 0; i < cfg.win; ++i)
      buf[i] = {w.samples[start + i] * window[i], 0.0};
    for (int i = cfg.win; i < cfg.n_fft; ++i) buf[i] = {0.0, 0.0};
    fft_inplace(buf);
    std::vector<double> power(cfg.n_bins());
    for (int k = 0; k < cfg.n_bins(); ++k) power[k] = std::norm(buf[k]);
    for (int m = 0; m < cfg.n_mels; ++m) {
      double acc = 0.0;
      const auto& row = fb[m];
      for (int k = 0; k < cfg.n_bins(); ++k) acc += row[k] * power[k];
      t.data[f * cfg.n_mels + m] =
          static_cast<float>(std::log(std::max(acc, cfg.log_floor)));
    }
  }
  return t;
}

FeatureTrack mel_cepstrum(const FeatureTrack& logmel, int n_coeffs) {
  int64_t n_mels = logmel.n_channels();
  if (n_coeffs < 1 || n_coeffs > n_mels)
    throw Error("mel_cepstrum: n_coeffs out of range [1, " +
                std::to_string(n_mels) + "]");
  // Orthonormal DCT-II basis.
  std::vector<double> basis(static_cast<size_t>(n_coeffs) * n_mels);
  for (int64_t k = 0; k < n_coeffs; ++k) {
    double scale = std::sqrt((k == 0 ? 1.0 : 2.0) / static_cast<double>(n_mels));
    for (int64_t n = 0; n < n_mels; ++n)
      basis[k * n_mels + n] =
          scale * std::cos(kPi * (2.0 * n + 1.0) * k / (2.0 * n_mels));
  }

  FeatureTrack t;
  t.frame_rate = logmel.frame_rate;
  for (int k = 0; k < n_coeffs; ++k)
    t.channel_names.push_back("mcep_" + std::to_string(k));
  t.n_frames = logmel.n_frames;
  t.data.resize(static_cast<size_t>(t.n_frames) * n_coeffs);
  for (int64_t f = 0; f < t.n_frames; ++f) {
    const float* row = logmel.data.data() + f * n_mels;
    for (int64_t k = 0; k < n_coeffs; ++k) {
      double acc = 0.0;
      const double* b = basis.data() + k * n_mels;
      for (int64_t n = 0; n < n_mels; ++n) acc += b[n] * row[n];
      t.data[f * n_coeffs + k] = static_cast<float>(acc);
    }
  }
  return t;
}

F0Track estimate_f0(const Waveform& w, double frame_rate, double f0_min,
                    double f0_max) {
  if (w.sample_rate <= 0) throw Error("estimate_f0: sample rate must be > 0");
  if (frame_rate <= 0) throw Error("estimate_f0: frame_rate must be > 0");
  if (!(0 < f0_min && f0_min < f0_max && f0_max < w.sample_rate / 2.0))
    throw Error("estimate_f0: need 0 < f0_min < f0_max < sample_rate/2");

  constexpr double kVoicingThreshold = 0.3;
  double sr = w.sample_rate;
  double hop = sr / frame_rate;
  int64_t len = static_cast<int64_t>(w.samples.size());

  F0Track f0;
  f0.frame_rate = frame_rate;
  int64_t n_frames = static_cast<int64_t>(std::floor(len / hop));
  f0.values.assign(static_cast<size_t>(std::max<int64_t>(n_frames, 0)), 0.0f);
  if (n_frames <= 0) return f0;

  int tau_min = std::max(2, static_cast<int>(std::floor(sr / f0_max)));
  int tau_max = static_cast<int>(std::ceil(sr / f0_min));
  // The difference function needs 2*tau_max samples; shrink the search
  // range for very short signals.
  if (2 * tau_max > len) tau_max = static_cast<int>(len / 2) - 1;
  if (tau_max <= tau_min) return f0;  // too short to analyze: all unvoiced

  int window = tau_max;
  std::vector<double> diff(tau_max + 1), cmnd(tau_max + 1);

  for (int64_t fi = 0; fi < n_frames; ++fi) {
    int64_t start = static_cast<int64_t>(std::llround(fi * hop));
    start = std::min(start, len - 2 * static_cast<int64_t>(tau_max));
    start = std::max<int64_t>(start, 0);
    const float* x = w.samples.data() + start;

    double energy = 0.0;
    for (int j = 0; j < 2 * tau_max; ++j)
      energy += static_cast<double>(x[j]) * x[j];
    if (energy < 1e-12) continue;  // silence

    for (int tau = 1; tau <= tau_max; ++tau) {
      double d = 0.0;
      for (int j = 0; j < window; ++j) {
        double delta = static_cast<double>(x[j]) - x[j + tau];
        d += delta * delta;
      }
      diff[tau] = d;
    }
    double cum = 0.0;
    for (int tau = 1; tau <= tau_max; ++tau) {
      cum += diff[tau];
      cmnd[tau] = cum > 0.0 ? diff[tau] * tau / cum : 1.0;
    }

    // First dip under threshold, extended to its local minimum.
    int best = -1;
    for (int tau = tau_min; tau <= tau_max; ++tau) {
      if (cmnd[tau] < kVoicingThreshold) {
        while (tau + 1 <= tau_max && cmnd[tau + 1] < cmnd[tau]) ++tau;
        best = tau;
        break;
      }
    }
    if (best < 0) continue;  // unvoiced

    double tau_hat = best;
    if (best > 1 && best < tau_max) {
      double a = cmnd[best - 1], b = cmnd[best], c = cmnd[best + 1];
      double denom = a - 2.0 * b + c;
      if (std::abs(denom) > 1e-12) {
        double delta = 0.5 * (a - c) / denom;
        if (delta > 1.0) delta = 1.0;
        if (delta < -1.0) delta = -1.0;
        tau_hat = best + delta;
      }
    }
    double hz = sr / tau_hat;
    hz = std::clamp(hz, f0_min, f0_max);
    f0.values[static_cast<size_t>(fi)] = static_cast<float>(hz);
  }
  return f0;
}

}  // namespace artic
