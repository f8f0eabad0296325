// include/artic/dsp.hpp

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

#ifndef ARTIC_DSP_HPP_
#define ARTIC_DSP_HPP_

#include <complex>
#include <span>
#include <vector>

#include "artic/types.hpp"

namespace artic {

struct MelConfig {
  int n_fft = 1024;
  int hop = 80;
  int win = 1024;
  int n_mels = 80;
  double fmin = 0.0;
  double fmax = 8000.0;
  int sample_rate = 16000;
  double log_floor = 1e-5;

  void validate() const;
  int n_bins() const { return n_fft / 2 + 1; }

  // hop = one spectral frame per feature frame; fmax at Nyquist.
  static MelConfig for_rate(int sample_rate, double frame_rate);
};

// Band-limited rate conversion (Kaiser-windowed sinc, beta = 8,
// 64 zero crossings per side). Edges use replicate padding so constants
// survive to the boundary.
Waveform resample(const Waveform& w, int target_rate);

// Log mel power spectrogram. Hann window, no center padding;
// n_frames = 1 + floor((len - win) / hop). Values are
// ln(max(mel_power, log_floor)).
FeatureTrack log_mel(const Waveform& w, const MelConfig& cfg);

// Per-frame orthonormal DCT-II of the log-mel vector, coefficients
// 0..n_coeffs-1.
FeatureTrack mel_cepstrum(const FeatureTrack& logmel, int n_coeffs);

// Pitch tracking: cumulative-mean-normalized difference function with
// parabolic interpolation; frames whose minimum exceeds the voicing
// threshold come out as 0.
F0Track estimate_f0(const Waveform& w, double frame_rate, double f0_min = 50.0,
                    double f0_max = 400.0);

// Triangular mel filterbank, [n_mels][n_fft/2 + 1].
std::vector<std::vector<double>> mel_filterbank(const MelConfig& cfg);

// Periodic Hann window of the given length.
std::vector<double> hann_window(int n);

// |FFT|^2 of one zero-padded frame (n_fft a power of two), bins 0..n_fft/2.
std::vector<double> power_spectrum(std::span<const float> frame, int n_fft);

// In-place radix-2 FFT; size must be a power of two.
void fft_inplace(std::vector<std::complex<double>>& a);

}  // namespace artic

#endif  // ARTIC_DSP_HPP_
