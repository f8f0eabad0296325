// include/artic/eval.hpp

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

#ifndef ARTIC_EVAL_HPP_
#define ARTIC_EVAL_HPP_

#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "artic/dsp.hpp"
#include "artic/types.hpp"

namespace artic {

enum class EditOp { kMatch, kSubstitute, kDelete, kInsert };

struct AlignedOp {
  EditOp op = EditOp::kMatch;
  std::string ref;  // empty for insertions
  std::string hyp;  // empty for deletions
};

struct AlignmentReport {
  int64_t matches = 0;
  int64_t substitutions = 0;
  int64_t deletions = 0;
  int64_t insertions = 0;
  int64_t ref_len = 0;
  std::vector<AlignedOp> ops;

  int64_t errors() const { return substitutions + deletions + insertions; }
};

// Minimum-edit-distance alignment with unit costs. Backtrace ties resolve
// match > substitution > deletion > insertion.
AlignmentReport align(std::span<const std::string> ref,
                      std::span<const std::string> hyp);

// Corpus WER = sum(S+D+I) / sum(ref_len).
double wer(std::span<const AlignmentReport> reports);

// Mel-cepstral distortion in dB: per frame
// (10/ln 10) * sqrt(2 * sum_{d=1}^{n_coeffs-1} (c_d - c'_d)^2), averaged
// over min(n_frames). Coefficient 0 is excluded; pairs must be
// frame-aligned already (lengths within 10%).
double mcd(const Waveform& ref, const Waveform& hyp, const MelConfig& cfg,
           int n_coeffs = 13);

// Same distance on precomputed mel-cepstra tracks.
double mcd_from_cepstra(const FeatureTrack& ref, const FeatureTrack& hyp,
                        int n_coeffs = 13);

// Substitution pairs (ref -> hyp) with corpus counts; matches excluded.
struct ConfusionTable {
  std::map<std::pair<std::string, std::string>, int64_t> counts;
};

// Harvests substitutions from per-pair alignments and keeps pairs seen at
// least min_count times. (a -> b) and (b -> a) stay distinct here.
ConfusionTable phoneme_confusions(
    std::span<const std::pair<std::vector<std::string>,
                              std::vector<std::string>>> pairs,
    int min_count = 2);

// One utterance per line: "utt_id<TAB>token token ...".
std::vector<std::pair<std::string, std::vector<std::string>>> read_transcripts(
    const std::string& path);

}  // namespace artic

#endif  // ARTIC_EVAL_HPP_
