// src/interp.cpp

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

#include "artic/interp.hpp"

#include <cmath>
#include <fstream>

namespace artic {

FeatureTrack lerp_tracks(const FeatureTrack& a, const FeatureTrack& b,
                         double alpha) {
  if (a.channel_names != b.channel_names)
    throw Error("lerp_tracks: channel names differ");
  if (a.n_frames != b.n_frames)
    throw Error("lerp_tracks: frame counts differ (" +
                std::to_string(a.n_frames) + " vs " +
                std::to_string(b.n_frames) + ")");
  if (a.frame_rate != b.frame_rate)
    throw Error("lerp_tracks: frame rates differ");
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw Error("lerp_tracks: alpha must be in [0, 1]");

  FeatureTrack out = a;
  // a + alpha*(b - a): endpoints and the a == b case are bit-exact.
  for (size_t i = 0; i < out.data.size(); ++i)
    out.data[i] = static_cast<float>(
        a.data[i] + alpha * (static_cast<double>(b.data[i]) - a.data[i]));
  return out;
}

std::vector<FeatureTrack> interpolation_grid(const FeatureTrack& a,
                                             const FeatureTrack& b, int n) {
  if (n < 2) throw Error("interpolation_grid: need n >= 2");
  std::vector<FeatureTrack> grid;
  grid.reserve(n);
  for (int i = 0; i < n; ++i)
    grid.push_back(lerp_tracks(a, b, static_cast<double>(i) / (n - 1)));
  return grid;
}

std::vector<VoteRecord> read_votes_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("read_votes_csv: cannot open " + path);
  std::string line;
  if (!std::getline(in, line))
    throw Error("read_votes_csv: empty file: " + path);

  auto split = [](const std::string& s) {
    std::vector<std::string> cells;
    std::string cur;
    for (char ch : s) {
      if (ch == ',') {
        cells.push_back(cur);
        cur.clear();
      } else if (ch != '\r') {
        cur.push_back(ch);
      }
    }
    cells.push_back(cur);
    return cells;
  };

  auto header = split(line);
  if (header.size() < 3 || header[0] != "utterance_id" ||
      header[1] != "label" || header[2] != "hedged")
    throw Error(
        "read_votes_csv: expected header utterance_id,label,hedged[,listener_id]: " +
        path);
  bool has_listener = header.size() >= 4;

  std::vector<VoteRecord> votes;
  size_t row = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    ++row;
    auto cells = split(line);
    if (cells.size() != header.size())
      throw Error("read_votes_csv: row " + std::to_string(row) +
                  " has wrong field count: " + path);
    VoteRecord v;
    v.utterance_id = cells[0];
    v.choice = cells[1];
    if (cells[2] != "0" && cells[2] != "1")
      throw Error("read_votes_csv: row " + std::to_string(row) +
                  ": hedged must be 0 or 1: " + path);
    v.hedged = cells[2] == "1";
    if (has_listener) v.listener_id = cells[3];
    votes.push_back(std::move(v));
  }
  return votes;
}

std::map<std::string, std::array<double, 3>> aggregate_votes(
    std::span<const VoteRecord> votes,
    const std::array<std::string, 3>& labels) {
  if (votes.empty()) throw Error("aggregate_votes: empty vote set");
  std::map<std::string, std::array<double, 3>> sums;
  std::map<std::string, int64_t> counts;
  for (const auto& v : votes) {
    int idx = -1;
    for (int i = 0; i < 3; ++i)
      if (labels[static_cast<size_t>(i)] == v.choice) idx = i;
    if (idx < 0)
      throw Error("aggregate_votes: unknown label '" + v.choice +
                  "' for utterance '" + v.utterance_id + "'");
    auto& s = sums[v.utterance_id];
    s[static_cast<size_t>(idx)] += v.hedged ? 0.5 : 1.0;
    counts[v.utterance_id] += 1;
  }
  for (auto& [utt, s] : sums) {
    double n = static_cast<double>(counts[utt]);
    for (double& x : s) x /= n;
  }
  return sums;
}

}  // namespace artic
