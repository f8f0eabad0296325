// src/features.cpp

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

#include "artic/features.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>

#include "json.hpp"

namespace artic {

namespace {

double cross(const Point2& o, const Point2& a, const Point2& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

// Piecewise-linear evaluation with endpoint clamping. xs strictly ascending.
double interp_clamped(std::span<const double> xs, std::span<const double> ys,
                      double x) {
  if (xs.empty()) throw Error("interp: empty grid");
  if (x <= xs.front()) return ys.front();
  if (x >= xs.back()) return ys.back();
  auto it = std::upper_bound(xs.begin(), xs.end(), x);
  size_t hi = static_cast<size_t>(it - xs.begin());
  size_t lo = hi - 1;
  double t = (x - xs[lo]) / (xs[hi] - xs[lo]);
  return ys[lo] + t * (ys[hi] - ys[lo]);
}

void require_tongue_channels(const FeatureTrack& ema) {
  for (const char* sensor : kTongueSensors) {
    for (const char* axis : {"_x", "_y"}) {
      std::string name = std::string(sensor) + axis;
      if (ema.channel_index(name) < 0)
        throw Error("missing required tongue channel '" + name + "'");
    }
  }
}

}  // namespace

std::vector<Point2> upper_hull(std::span<const Point2> points) {
  // Reduce to one point per distinct x (the highest); lower points at the
  // same x can never be upper-hull vertices.
  std::map<double, double> best;
  for (const auto& p : points) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y))
      throw Error("upper_hull: non-finite point");
    auto [it, inserted] = best.emplace(p.x, p.y);
    if (!inserted) it->second = std::max(it->second, p.y);
  }
  std::vector<Point2> pts;
  pts.reserve(best.size());
  for (const auto& [x, y] : best) pts.push_back({x, y});

  if (pts.size() <= 2) return pts;
  std::vector<Point2> hull;
  hull.reserve(pts.size());
  for (const auto& p : pts) {
    while (hull.size() >= 2 &&
           cross(hull[hull.size() - 2], hull[hull.size() - 1], p) >= 0.0)
      hull.pop_back();
    hull.push_back(p);
  }
  return hull;
}

std::vector<double> sliding_window_max(std::span<const double> values,
                                       int window) {
  if (window < 1) throw Error("sliding_window_max: window must be >= 1");
  int64_t n = static_cast<int64_t>(values.size());
  std::vector<double> out(values.begin(), values.end());
  if (window == 1) return out;
  for (int64_t i = 0; i < n; ++i) {
    int64_t lo = std::max<int64_t>(0, i - (window - 1) / 2);
    int64_t hi = std::min<int64_t>(n - 1, i + window / 2);
    double m = values[lo];
    for (int64_t j = lo + 1; j <= hi; ++j) m = std::max(m, values[j]);
    out[i] = m;
  }
  return out;
}

PalateModel fit_palate(std::span<const Point2> points, int n_bins,
                       int window_bins) {
  if (points.size() < 3)
    throw Error("fit_palate: need at least 3 points, got " +
                std::to_string(points.size()));
  if (n_bins < 1 || window_bins < 1)
    throw Error("fit_palate: n_bins and window_bins must be >= 1");

  double x_min = points[0].x, x_max = points[0].x;
  for (const auto& p : points) {
    x_min = std::min(x_min, p.x);
    x_max = std::max(x_max, p.x);
  }
  if (!(x_max > x_min)) throw Error("fit_palate: zero x-range");
  double dx = (x_max - x_min) / n_bins;

  auto hull = upper_hull(points);
  std::vector<double> hull_xs(hull.size()), hull_ys(hull.size());
  for (size_t i = 0; i < hull.size(); ++i) {
    hull_xs[i] = hull[i].x;
    hull_ys[i] = hull[i].y;
  }

  // Per-bin maxima; empty bins get linearly interpolated (edges extended).
  constexpr double kEmpty = -std::numeric_limits<double>::infinity();
  std::vector<double> bin_max(n_bins, kEmpty);
  for (const auto& p : points) {
    int j = static_cast<int>((p.x - x_min) / dx);
    j = std::clamp(j, 0, n_bins - 1);
    bin_max[j] = std::max(bin_max[j], p.y);
  }
  {
    int prev = -1;
    for (int j = 0; j < n_bins; ++j) {
      if (bin_max[j] == kEmpty) continue;
      if (prev < 0) {
        for (int k = 0; k < j; ++k) bin_max[k] = bin_max[j];
      } else {
        for (int k = prev + 1; k < j; ++k) {
          double t = static_cast<double>(k - prev) / (j - prev);
          bin_max[k] = bin_max[prev] + t * (bin_max[j] - bin_max[prev]);
        }
      }
      prev = j;
    }
    if (prev < 0) throw Error("fit_palate: no occupied bins");
    for (int k = prev + 1; k < n_bins; ++k) bin_max[k] = bin_max[prev];
  }
  std::vector<double> movmax_bins = sliding_window_max(bin_max, window_bins);
  std::vector<double> bin_centers(n_bins);
  for (int j = 0; j < n_bins; ++j) bin_centers[j] = x_min + (j + 0.5) * dx;

  // Grid = uniform bin centers plus the hull vertices, so interpolation on
  // the grid reproduces the hull exactly at every x.
  std::vector<double> grid;
  grid.reserve(bin_centers.size() + hull_xs.size());
  grid.insert(grid.end(), bin_centers.begin(), bin_centers.end());
  grid.insert(grid.end(), hull_xs.begin(), hull_xs.end());
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  PalateModel m;
  m.n_bins = n_bins;
  m.window_bins = window_bins;
  m.coordinate_note = "input coordinates (no normalization applied)";
  m.x_grid = std::move(grid);
  m.hull_y.resize(m.x_grid.size());
  m.movmax_y.resize(m.x_grid.size());
  for (size_t i = 0; i < m.x_grid.size(); ++i) {
    double x = m.x_grid[i];
    double h = interp_clamped(hull_xs, hull_ys, x);
    double mm = interp_clamped(bin_centers, movmax_bins, x);
    m.hull_y[i] = h;
    // The hull bounds any windowed local maximum; the cap keeps that true
    // when the window smears a peak sideways onto lower hull segments.
    m.movmax_y[i] = std::min(h, mm);
  }
  return m;
}

double palate_height(const PalateModel& m, double x, PalateKind kind) {
  const std::vector<double>& ys =
      kind == PalateKind::kHull ? m.hull_y : m.movmax_y;
  return interp_clamped(m.x_grid, ys, x);
}

std::vector<Point2> tongue_points(const FeatureTrack& ema) {
  require_tongue_channels(ema);
  std::vector<Point2> pts;
  pts.reserve(static_cast<size_t>(ema.n_frames) * kTongueSensors.size());
  for (const char* sensor : kTongueSensors) {
    int64_t cx = ema.channel_index(std::string(sensor) + "_x");
    int64_t cy = ema.channel_index(std::string(sensor) + "_y");
    for (int64_t f = 0; f < ema.n_frames; ++f)
      pts.push_back({ema.at(f, cx), ema.at(f, cy)});
  }
  return pts;
}

FeatureTrack palate_distance_features(const FeatureTrack& ema,
                                      const PalateModel& m) {
  require_tongue_channels(ema);
  FeatureTrack out;
  out.frame_rate = ema.frame_rate;
  for (const char* sensor : kTongueSensors) {
    out.channel_names.push_back(std::string(sensor) + "_hull");
    out.channel_names.push_back(std::string(sensor) + "_movmax");
  }
  out.n_frames = ema.n_frames;
  out.data.resize(static_cast<size_t>(out.n_frames) * out.n_channels());
  for (int64_t f = 0; f < ema.n_frames; ++f) {
    int64_t c = 0;
    for (const char* sensor : kTongueSensors) {
      double x = ema.at(f, ema.channel_index(std::string(sensor) + "_x"));
      double y = ema.at(f, ema.channel_index(std::string(sensor) + "_y"));
      out.at(f, c++) =
          static_cast<float>(palate_height(m, x, PalateKind::kHull) - y);
      out.at(f, c++) =
          static_cast<float>(palate_height(m, x, PalateKind::kMovingMax) - y);
    }
  }
  return out;
}

ChannelStats fit_stats(std::span<const FeatureTrack> tracks) {
  if (tracks.empty()) throw Error("fit_stats: need at least one track");
  const auto& names = tracks[0].channel_names;
  int64_t n_channels = tracks[0].n_channels();
  int64_t total_frames = 0;
  for (const auto& t : tracks) {
    if (t.channel_names != names)
      throw Error("fit_stats: tracks have inconsistent channels");
    total_frames += t.n_frames;
  }
  if (total_frames == 0) throw Error("fit_stats: no frames");

  std::vector<double> mean(n_channels, 0.0), var(n_channels, 0.0);
  for (const auto& t : tracks)
    for (int64_t f = 0; f < t.n_frames; ++f)
      for (int64_t c = 0; c < n_channels; ++c) mean[c] += t.at(f, c);
  for (int64_t c = 0; c < n_channels; ++c) mean[c] /= total_frames;
  for (const auto& t : tracks)
    for (int64_t f = 0; f < t.n_frames; ++f)
      for (int64_t c = 0; c < n_channels; ++c) {
        double d = t.at(f, c) - mean[c];
        var[c] += d * d;
      }

  ChannelStats s;
  s.channel_names = names;
  s.mean = std::move(mean);
  s.stddev.resize(n_channels);
  for (int64_t c = 0; c < n_channels; ++c) {
    double sd = std::sqrt(var[c] / total_frames);
    if (!(sd > 1e-12 * (1.0 + std::abs(s.mean[c]))))
      throw Error("fit_stats: constant channel '" + names[c] + "'");
    s.stddev[c] = sd;
  }
  return s;
}

namespace {

std::vector<int64_t> stats_index_map(const FeatureTrack& t,
                                     const ChannelStats& s) {
  std::vector<int64_t> idx(t.n_channels());
  for (int64_t c = 0; c < t.n_channels(); ++c) {
    int64_t si = -1;
    for (size_t k = 0; k < s.channel_names.size(); ++k)
      if (s.channel_names[k] == t.channel_names[c]) {
        si = static_cast<int64_t>(k);
        break;
      }
    if (si < 0)
      throw Error("znormalize: channel '" + t.channel_names[c] +
                  "' has no fitted stats");
    idx[c] = si;
  }
  return idx;
}

}  // namespace

FeatureTrack znormalize(const FeatureTrack& t, const ChannelStats& s) {
  auto idx = stats_index_map(t, s);
  FeatureTrack out = t;
  for (int64_t f = 0; f < t.n_frames; ++f)
    for (int64_t c = 0; c < t.n_channels(); ++c)
      out.at(f, c) = static_cast<float>((t.at(f, c) - s.mean[idx[c]]) /
                                        s.stddev[idx[c]]);
  return out;
}

FeatureTrack denormalize(const FeatureTrack& t, const ChannelStats& s) {
  auto idx = stats_index_map(t, s);
  FeatureTrack out = t;
  for (int64_t f = 0; f < t.n_frames; ++f)
    for (int64_t c = 0; c < t.n_channels(); ++c)
      out.at(f, c) = static_cast<float>(t.at(f, c) * s.stddev[idx[c]] +
                                        s.mean[idx[c]]);
  return out;
}

FeatureTrack assemble_inputs(const FeatureTrack& ema, const F0Track* f0,
                             const FeatureTrack* palate) {
  if (f0 == nullptr && palate == nullptr) return ema;  // passthrough

  auto rates_match = [](double a, double b) {
    return std::abs(a - b) <= 1e-6 * std::max(std::abs(a), std::abs(b));
  };
  int64_t n = ema.n_frames;
  int64_t max_n = ema.n_frames;
  if (f0 != nullptr) {
    if (!rates_match(ema.frame_rate, f0->frame_rate))
      throw Error("assemble_inputs: f0 frame rate mismatch");
    n = std::min<int64_t>(n, static_cast<int64_t>(f0->values.size()));
    max_n = std::max<int64_t>(max_n, static_cast<int64_t>(f0->values.size()));
  }
  if (palate != nullptr) {
    if (!rates_match(ema.frame_rate, palate->frame_rate))
      throw Error("assemble_inputs: palate frame rate mismatch");
    n = std::min(n, palate->n_frames);
    max_n = std::max(max_n, palate->n_frames);
  }
  if (max_n - n > 2)
    throw Error("assemble_inputs: frame-count gap " + std::to_string(max_n - n) +
                " exceeds 2");

  FeatureTrack out;
  out.frame_rate = ema.frame_rate;
  for (const auto& name : ema.channel_names)
    out.channel_names.push_back("ema_" + name);
  if (f0 != nullptr) out.channel_names.push_back("f0");
  if (palate != nullptr)
    for (const auto& name : palate->channel_names)
      out.channel_names.push_back("pal_" + name);
  out.n_frames = n;
  out.data.reserve(static_cast<size_t>(n) * out.n_channels());
  for (int64_t f = 0; f < n; ++f) {
    for (int64_t c = 0; c < ema.n_channels(); ++c)
      out.data.push_back(ema.at(f, c));
    if (f0 != nullptr) out.data.push_back(f0->values[static_cast<size_t>(f)]);
    if (palate != nullptr)
      for (int64_t c = 0; c < palate->n_channels(); ++c)
        out.data.push_back(palate->at(f, c));
  }
  return out;
}

void save_palate_json(const std::string& path, const PalateModel& m) {
  nlohmann::json j;
  j["n_bins"] = m.n_bins;
  j["window_bins"] = m.window_bins;
  j["coordinate_note"] = m.coordinate_note;
  j["x_grid"] = m.x_grid;
  j["hull_y"] = m.hull_y;
  j["movmax_y"] = m.movmax_y;
  std::ofstream out(path);
  if (!out) throw Error("save_palate_json: cannot open " + path);
  out << j.dump(2) << "\n";
}

PalateModel load_palate_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("load_palate_json: cannot open " + path);
  nlohmann::json j;
  in >> j;
  PalateModel m;
  m.n_bins = j.at("n_bins").get<int>();
  m.window_bins = j.at("window_bins").get<int>();
  m.coordinate_note = j.value("coordinate_note", "");
  m.x_grid = j.at("x_grid").get<std::vector<double>>();
  m.hull_y = j.at("hull_y").get<std::vector<double>>();
  m.movmax_y = j.at("movmax_y").get<std::vector<double>>();
  if (m.x_grid.size() != m.hull_y.size() ||
      m.x_grid.size() != m.movmax_y.size())
    throw Error("load_palate_json: inconsistent array lengths in " + path);
  return m;
}

void save_stats_json(const std::string& path, const ChannelStats& s) {
  nlohmann::json j;
  j["channels"] = s.channel_names;
  j["mean"] = s.mean;
  j["std"] = s.stddev;
  std::ofstream out(path);
  if (!out) throw Error("save_stats_json: cannot open " + path);
  out << j.dump(2) << "\n";
}

ChannelStats load_stats_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("load_stats_json: cannot open " + path);
  nlohmann::json j;
  in >> j;
  ChannelStats s;
  s.channel_names = j.at("channels").get<std::vector<std::string>>();
  s.mean = j.at("mean").get<std::vector<double>>();
  s.stddev = j.at("std").get<std::vector<double>>();
  if (s.channel_names.size() != s.mean.size() ||
      s.channel_names.size() != s.stddev.size())
    throw Error("load_stats_json: inconsistent array lengths in " + path);
  return s;
}

}  // namespace artic
