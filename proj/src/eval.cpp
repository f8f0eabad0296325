// src/eval.cpp

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

#include "artic/eval.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace artic {

AlignmentReport align(std::span<const std::string> ref,
                      std::span<const std::string> hyp) {
  size_t R = ref.size(), H = hyp.size();
  // cost[i][j]: min edits aligning ref[0..i) with hyp[0..j).
  std::vector<int32_t> cost((R + 1) * (H + 1));
  auto at = [&](size_t i, size_t j) -> int32_t& { return cost[i * (H + 1) + j]; };
  for (size_t i = 0; i <= R; ++i) at(i, 0) = static_cast<int32_t>(i);
  for (size_t j = 0; j <= H; ++j) at(0, j) = static_cast<int32_t>(j);
  for (size_t i = 1; i <= R; ++i)
    for (size_t j = 1; j <= H; ++j) {
      int32_t diag = at(i - 1, j - 1) + (ref[i - 1] == hyp[j - 1] ? 0 : 1);
      int32_t del = at(i - 1, j) + 1;
      int32_t ins = at(i, j - 1) + 1;
      at(i, j) = std::min({diag, del, ins});
    }

  AlignmentReport rep;
  rep.ref_len = static_cast<int64_t>(R);
  // Backtrace, preferring match > substitution > deletion > insertion.
  size_t i = R, j = H;
  std::vector<AlignedOp> rev;
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0 && ref[i - 1] == hyp[j - 1] &&
        at(i, j) == at(i - 1, j - 1)) {
      rev.push_back({EditOp::kMatch, ref[i - 1], hyp[j - 1]});
      --i, --j;
    } else if (i > 0 && j > 0 && at(i, j) == at(i - 1, j - 1) + 1) {
      rev.push_back({EditOp::kSubstitute, ref[i - 1], hyp[j - 1]});
      --i, --j;
    } else if (i > 0 && at(i, j) == at(i - 1, j) + 1) {
      rev.push_back({EditOp::kDelete, ref[i - 1], {}});
      --i;
    } else {
      rev.push_back({EditOp::kInsert, {}, hyp[j - 1]});
      --j;
    }
  }
  rep.ops.assign(rev.rbegin(), rev.rend());
  for (const auto& op : rep.ops) {
    switch (op.op) {
      case EditOp::kMatch: ++rep.matches; break;
      case EditOp::kSubstitute: ++rep.substitutions; break;
      case EditOp::kDelete: ++rep.deletions; break;
      case EditOp::kInsert: ++rep.insertions; break;
    }
  }
  return rep;
}

double wer(std::span<const AlignmentReport> reports) {
  if (reports.empty()) throw Error("wer: no alignment reports");
  int64_t errors = 0, ref_len = 0;
  for (const auto& r : reports) {
    errors += r.errors();
    ref_len += r.ref_len;
  }
  if (ref_len == 0) throw Error("wer: total reference length is zero");
  return static_cast<double>(errors) / static_cast<double>(ref_len);
}

double mcd(const Waveform& ref, const Waveform& hyp, const MelConfig& cfg,
           int n_coeffs) {
  if (ref.sample_rate != hyp.sample_rate)
    throw Error("mcd: sample rates differ (" +
                std::to_string(ref.sample_rate) + " vs " +
                std::to_string(hyp.sample_rate) + ")");
  size_t la = ref.samples.size(), lb = hyp.samples.size();
  size_t longer = std::max(la, lb);
  if (longer == 0) throw Error("mcd: empty waveforms");
  if (static_cast<double>(longer - std::min(la, lb)) >
      0.10 * static_cast<double>(longer))
    throw Error("mcd: length gap exceeds 10% (" + std::to_string(la) + " vs " +
                std::to_string(lb) + " samples); pairs must be pre-aligned");

  FeatureTrack ca = mel_cepstrum(log_mel(ref, cfg), n_coeffs);
  FeatureTrack cb = mel_cepstrum(log_mel(hyp, cfg), n_coeffs);
  return mcd_from_cepstra(ca, cb, n_coeffs);
}

double mcd_from_cepstra(const FeatureTrack& ref, const FeatureTrack& hyp,
                        int n_coeffs) {
  if (ref.n_channels() < n_coeffs || hyp.n_channels() < n_coeffs)
    throw Error("mcd_from_cepstra: tracks carry fewer than " +
                std::to_string(n_coeffs) + " coefficients");
  int64_t n_frames = std::min(ref.n_frames, hyp.n_frames);
  if (n_frames < 1) throw Error("mcd: too short for one frame");

  const double scale = 10.0 / std::log(10.0);
  double total = 0.0;
  for (int64_t f = 0; f < n_frames; ++f) {
    double ss = 0.0;
    for (int d = 1; d < n_coeffs; ++d) {  // coefficient 0 excluded
      double diff = static_cast<double>(ref.at(f, d)) - hyp.at(f, d);
      ss += diff * diff;
    }
    total += scale * std::sqrt(2.0 * ss);
  }
  return total / static_cast<double>(n_frames);
}

ConfusionTable phoneme_confusions(
    std::span<const std::pair<std::vector<std::string>,
                              std::vector<std::string>>> pairs,
    int min_count) {
  ConfusionTable table;
  std::map<std::pair<std::string, std::string>, int64_t> raw;
  for (const auto& [ref, hyp] : pairs) {
    AlignmentReport rep = align(ref, hyp);
    for (const auto& op : rep.ops)
      if (op.op == EditOp::kSubstitute) raw[{op.ref, op.hyp}] += 1;
  }
  for (const auto& [pair, count] : raw)
    if (count >= min_count) table.counts[pair] = count;
  return table;
}

std::vector<std::pair<std::string, std::vector<std::string>>> read_transcripts(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("read_transcripts: cannot open " + path);
  std::vector<std::pair<std::string, std::vector<std::string>>> out;
  std::string line;
  size_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    size_t tab = line.find('\t');
    if (tab == std::string::npos || tab == 0)
      throw Error("read_transcripts: line " + std::to_string(row) +
                  " is not 'utt_id<TAB>tokens...': " + path);
    std::string id = line.substr(0, tab);
    std::vector<std::string> tokens;
    std::istringstream body(line.substr(tab + 1));
    std::string tok;
    while (body >> tok) tokens.push_back(tok);
    out.emplace_back(std::move(id), std::move(tokens));
  }
  return out;
}

}  // namespace artic
