// include/artic/features.hpp

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

#ifndef ARTIC_FEATURES_HPP_
#define ARTIC_FEATURES_HPP_

#include <array>
#include <span>
#include <string>
#include <vector>

#include "artic/types.hpp"

namespace artic {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

// Two palate-height curves over the midsagittal x axis, sampled on a shared
// ascending grid. hull_y is the exact upper convex hull of the fitting
// points (every hull vertex is a grid node); movmax_y is the windowed
// maximum of per-bin tongue maxima, capped by the hull so that
// hull_y[i] >= movmax_y[i] everywhere.
struct PalateModel {
  std::vector<double> x_grid;
  std::vector<double> hull_y;
  std::vector<double> movmax_y;
  int n_bins = 512;
  int window_bins = 32;
  std::string coordinate_note;  // which coordinate frame the fit ran in
};

enum class PalateKind { kHull, kMovingMax };

// Upper convex hull of a point set (monotone chain), as a polyline with
// strictly increasing x. Exposed for tests and plotting.
std::vector<Point2> upper_hull(std::span<const Point2> points);

// Centered windowed maximum; window clipped at the ends. window = 1 is the
// identity.
std::vector<double> sliding_window_max(std::span<const double> values,
                                       int window);

PalateModel fit_palate(std::span<const Point2> tongue_points, int n_bins = 512,
                       int window_bins = 32);

// Piecewise-linear interpolation on x_grid; x outside the grid clamps to
// the nearest endpoint value.
double palate_height(const PalateModel& m, double x, PalateKind kind);

// Tongue sensor channels required for palate features, in order:
// tip, body, dorsum, each with _x and _y suffixes.
inline constexpr std::array<const char*, 3> kTongueSensors = {"tt", "tb", "td"};

// All tongue sensor positions in a track, 3 points per frame.
std::vector<Point2> tongue_points(const FeatureTrack& ema);

// Six channels: for each tongue sensor, palate height minus tongue y under
// both estimates. Distances may be negative; they are not clamped.
FeatureTrack palate_distance_features(const FeatureTrack& ema,
                                      const PalateModel& m);

struct ChannelStats {
  std::vector<std::string> channel_names;
  std::vector<double> mean;
  std::vector<double> stddev;
};

// Pooled mean/std over all frames of all tracks. Constant channels are an
// error (they cannot be z-scaled).
ChannelStats fit_stats(std::span<const FeatureTrack> tracks);

FeatureTrack znormalize(const FeatureTrack& t, const ChannelStats& s);
FeatureTrack denormalize(const FeatureTrack& t, const ChannelStats& s);

// Channel concatenation [ema | f0 | palate], truncated to the shortest
// frame count (counts may differ by at most 2). Null f0/palate parts are
// skipped; with both null the track passes through unchanged.
FeatureTrack assemble_inputs(const FeatureTrack& ema, const F0Track* f0,
                             const FeatureTrack* palate);

// JSON sidecars.
void save_palate_json(const std::string& path, const PalateModel& m);
PalateModel load_palate_json(const std::string& path);
void save_stats_json(const std::string& path, const ChannelStats& s);
ChannelStats load_stats_json(const std::string& path);

}  // namespace artic

#endif  // ARTIC_FEATURES_HPP_
