// include/artic/interp.hpp

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

#ifndef ARTIC_INTERP_HPP_
#define ARTIC_INTERP_HPP_

#include <array>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "artic/types.hpp"

namespace artic {

// Elementwise (1-alpha)*a + alpha*b. Tracks must match in shape, frame
// rate, and channel names; tracks are expected to be pre-duration-matched
// (no time warping happens here).
FeatureTrack lerp_tracks(const FeatureTrack& a, const FeatureTrack& b,
                         double alpha);

// n evenly spaced interpolants with alpha_i = i/(n-1); endpoints included
// bit-exactly.
std::vector<FeatureTrack> interpolation_grid(const FeatureTrack& a,
                                             const FeatureTrack& b, int n = 7);

// One listener judgment of one utterance against a closed 3-label set;
// hedged marks a "possibly X" answer and halves the vote's weight.
struct VoteRecord {
  std::string utterance_id;
  std::string choice;
  bool hedged = false;
  std::string listener_id;  // kept for reporting only
};

// CSV columns: utterance_id,label,hedged(0/1),listener_id. Header required.
std::vector<VoteRecord> read_votes_csv(const std::string& path);

// Per-utterance mean of one-hot vote vectors (scaled by 0.5 when hedged),
// component order following `labels`.
std::map<std::string, std::array<double, 3>> aggregate_votes(
    std::span<const VoteRecord> votes, const std::array<std::string, 3>& labels);

}  // namespace artic

#endif  // ARTIC_INTERP_HPP_
