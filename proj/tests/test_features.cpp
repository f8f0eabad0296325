// tests/test_features.cpp

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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "artic/features.hpp"
#include "testing_util.hpp"

using namespace artic;
using artic::testing::TempDir;

namespace {

// Independent upper-hull oracle: gift wrapping by maximum slope, O(n h).
std::vector<Point2> upper_hull_oracle(const std::vector<Point2>& points) {
  std::map<double, double> best;
  for (const auto& p : points) {
    auto [it, inserted] = best.emplace(p.x, p.y);
    if (!inserted) it->second = std::max(it->second, p.y);
  }
  std::vector<Point2> pts;
  for (const auto& [x, y] : best) pts.push_back({x, y});
  if (pts.size() <= 2) return pts;

  std::vector<Point2> hull;
  hull.push_back(pts.front());
  while (hull.back().x < pts.back().x) {
    const Point2& cur = hull.back();
    size_t pick = 0;
    double best_slope = -std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < pts.size(); ++i) {
      if (pts[i].x <= cur.x) continue;
      double slope = (pts[i].y - cur.y) / (pts[i].x - cur.x);
      // prefer the farthest point on slope ties to skip collinear interiors
      if (slope > best_slope ||
          (slope == best_slope && pts[i].x > pts[pick].x)) {
        best_slope = slope;
        pick = i;
      }
    }
    hull.push_back(pts[pick]);
  }
  return hull;
}

std::vector<Point2> random_cloud(int n, uint64_t seed) {
  ad::Rng rng(seed);
  std::vector<Point2> pts(static_cast<size_t>(n));
  for (auto& p : pts) {
    p.x = rng.uniform_d(-1.0, 1.0);
    p.y = rng.uniform_d(-0.5, 1.5);
  }
  return pts;
}

FeatureTrack ema_track_with_tongue(int64_t n_frames, uint64_t seed) {
  ad::Rng rng(seed);
  FeatureTrack t;
  t.frame_rate = 200.0;
  t.channel_names = {"jaw_x", "jaw_y", "tt_x", "tt_y",
                     "tb_x",  "tb_y",  "td_x", "td_y"};
  t.n_frames = n_frames;
  t.data.resize(static_cast<size_t>(n_frames) * t.n_channels());
  for (auto& v : t.data) v = rng.uniform(-1.0f, 1.0f);
  return t;
}

}  // namespace

TEST_CASE("fit_palate: triangle hull") {
  std::vector<Point2> pts = {{0, 0}, {1, 1}, {2, 0}};
  PalateModel m = fit_palate(pts, 16, 1);
  CHECK(palate_height(m, 0.5, PalateKind::kHull) ==
        doctest::Approx(0.5).epsilon(1e-12));
  CHECK(palate_height(m, 1.0, PalateKind::kHull) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(palate_height(m, 1.5, PalateKind::kHull) ==
        doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("fit_palate: flat cloud gives flat curves") {
  std::vector<Point2> pts;
  for (int i = 0; i < 50; ++i)
    pts.push_back({static_cast<double>(i) / 10.0, 2.5});
  PalateModel m = fit_palate(pts);
  for (size_t i = 0; i < m.x_grid.size(); ++i) {
    CHECK(m.hull_y[i] == doctest::Approx(2.5).epsilon(1e-12));
    CHECK(m.movmax_y[i] == doctest::Approx(2.5).epsilon(1e-12));
  }
}

TEST_CASE("fit_palate: errors") {
  CHECK_THROWS_WITH_AS(
      fit_palate(std::vector<Point2>{{0, 0}, {1, 1}}),
      doctest::Contains("at least 3"), Error);
  std::vector<Point2> same_x = {{1, 0}, {1, 1}, {1, 2}};
  CHECK_THROWS_WITH_AS(fit_palate(same_x), doctest::Contains("zero x-range"),
                       Error);
}

TEST_CASE("fit_palate: hull contains every point; oracle agreement") {
  for (uint64_t seed = 0; seed < 6; ++seed) {
    int n = seed % 2 == 0 ? 10000 : 37;
    auto pts = random_cloud(n, 1000 + seed);
    PalateModel m = fit_palate(pts);

    for (const auto& p : pts)
      CHECK(p.y <= palate_height(m, p.x, PalateKind::kHull) + 1e-9);

    // Cross-check the hull polyline against the gift-wrap oracle.
    auto ours = upper_hull(pts);
    auto oracle = upper_hull_oracle(pts);
    REQUIRE(ours.size() == oracle.size());
    for (size_t i = 0; i < ours.size(); ++i) {
      CHECK(ours[i].x == doctest::Approx(oracle[i].x).epsilon(1e-12));
      CHECK(ours[i].y == doctest::Approx(oracle[i].y).epsilon(1e-12));
    }

    // Model invariants: dominance and concavity on the grid.
    for (size_t i = 0; i < m.x_grid.size(); ++i)
      CHECK(m.hull_y[i] >= m.movmax_y[i] - 1e-12);
    for (size_t i = 1; i + 1 < m.x_grid.size(); ++i) {
      double sl = (m.hull_y[i] - m.hull_y[i - 1]) /
                  (m.x_grid[i] - m.x_grid[i - 1]);
      double sr = (m.hull_y[i + 1] - m.hull_y[i]) /
                  (m.x_grid[i + 1] - m.x_grid[i]);
      CHECK(sr <= sl + 1e-9);
    }
  }
}

TEST_CASE("sliding_window_max: identity at window 1 and brute-force checks") {
  std::vector<double> v = {3, 1, 4, 1, 5, 9, 2, 6};
  CHECK(sliding_window_max(v, 1) == v);
  auto out = sliding_window_max(v, 3);
  // centered window: [i-1, i+1] clipped
  std::vector<double> expected = {3, 4, 4, 5, 9, 9, 9, 6};
  CHECK(out == expected);
  ad::Rng rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> vals(1 + rng.next_index(60));
    for (auto& x : vals) x = rng.uniform_d(-5.0, 5.0);
    int window = 1 + static_cast<int>(rng.next_index(9));
    auto got = sliding_window_max(vals, window);
    for (int64_t i = 0; i < int64_t(vals.size()); ++i) {
      int64_t lo = std::max<int64_t>(0, i - (window - 1) / 2);
      int64_t hi = std::min<int64_t>(int64_t(vals.size()) - 1,
                                     i + window / 2);
      double m = -1e300;
      for (int64_t j = lo; j <= hi; ++j) m = std::max(m, vals[j]);
      CHECK(got[static_cast<size_t>(i)] == m);
    }
  }
}

TEST_CASE("palate_height: exact at nodes, clamped outside, linear between") {
  PalateModel m;
  ad::Rng rng(21);
  double x = 0.0;
  for (int i = 0; i < 20; ++i) {
    x += rng.uniform_d(0.05, 1.0);
    m.x_grid.push_back(x);
    m.hull_y.push_back(rng.uniform_d(-1.0, 1.0));
    m.movmax_y.push_back(m.hull_y.back() - 0.1);
  }
  for (size_t i = 0; i < m.x_grid.size(); ++i) {
    CHECK(palate_height(m, m.x_grid[i], PalateKind::kHull) == m.hull_y[i]);
    CHECK(palate_height(m, m.x_grid[i], PalateKind::kMovingMax) ==
          m.movmax_y[i]);
  }
  CHECK(palate_height(m, m.x_grid.back() + 5.0, PalateKind::kHull) ==
        m.hull_y.back());
  CHECK(palate_height(m, m.x_grid.front() - 5.0, PalateKind::kHull) ==
        m.hull_y.front());
  for (size_t i = 0; i + 1 < m.x_grid.size(); ++i) {
    double mid = 0.5 * (m.x_grid[i] + m.x_grid[i + 1]);
    double expect = 0.5 * (m.hull_y[i] + m.hull_y[i + 1]);
    CHECK(std::abs(palate_height(m, mid, PalateKind::kHull) - expect) <=
          1e-12 * std::max(1.0, std::abs(expect)));
  }
}

TEST_CASE("palate_distance_features: flat palate and dominance") {
  SUBCASE("flat palate at y=2, tongue at y=1") {
    std::vector<Point2> pts;
    for (int i = 0; i <= 40; ++i) pts.push_back({i / 10.0, 2.0});
    PalateModel m = fit_palate(pts);
    FeatureTrack ema;
    ema.frame_rate = 200.0;
    ema.channel_names = {"tt_x", "tt_y", "tb_x", "tb_y", "td_x", "td_y"};
    ema.n_frames = 1;
    ema.data = {1.0f, 1.0f, 2.0f, 1.0f, 3.0f, 1.0f};
    FeatureTrack d = palate_distance_features(ema, m);
    CHECK(d.n_channels() == 6);
    CHECK(d.channel_names[0] == "tt_hull");
    CHECK(d.channel_names[1] == "tt_movmax");
    for (float v : d.data) CHECK(v == doctest::Approx(1.0).epsilon(1e-6));
  }
  SUBCASE("tongue on the moving-max curve has zero movmax distance") {
    std::vector<Point2> pts;
    for (int i = 0; i <= 40; ++i) pts.push_back({i / 10.0, 3.0});
    PalateModel m = fit_palate(pts);
    FeatureTrack ema;
    ema.frame_rate = 200.0;
    ema.channel_names = {"tt_x", "tt_y", "tb_x", "tb_y", "td_x", "td_y"};
    ema.n_frames = 1;
    float y = static_cast<float>(palate_height(m, 1.7, PalateKind::kMovingMax));
    ema.data = {1.7f, y, 1.7f, y, 1.7f, y};
    FeatureTrack d = palate_distance_features(ema, m);
    CHECK(std::abs(d.at(0, 1)) <= 1e-6);  // tt_movmax
  }
  SUBCASE("hull distance dominates movmax distance on random data") {
    auto cloud = random_cloud(4000, 31);
    PalateModel m = fit_palate(cloud);
    FeatureTrack ema = ema_track_with_tongue(200, 32);
    FeatureTrack d = palate_distance_features(ema, m);
    for (int64_t f = 0; f < d.n_frames; ++f)
      for (int64_t s = 0; s < 3; ++s)
        CHECK(d.at(f, 2 * s) >= d.at(f, 2 * s + 1) - 1e-6f);
  }
  SUBCASE("missing channel is named in the error") {
    FeatureTrack ema;
    ema.frame_rate = 200.0;
    ema.channel_names = {"tt_x", "tt_y", "tb_x", "tb_y"};
    ema.n_frames = 0;
    PalateModel m;
    m.x_grid = {0.0, 1.0};
    m.hull_y = {0.0, 0.0};
    m.movmax_y = {0.0, 0.0};
    CHECK_THROWS_WITH_AS(palate_distance_features(ema, m),
                         doctest::Contains("td_x"), Error);
  }
}

TEST_CASE("palate_distance_features: translation equivariance in y") {
  auto cloud = random_cloud(2000, 77);
  FeatureTrack ema = ema_track_with_tongue(100, 78);
  PalateModel m = fit_palate(cloud);
  FeatureTrack d = palate_distance_features(ema, m);

  double delta = 3.25;
  auto shifted_cloud = cloud;
  for (auto& p : shifted_cloud) p.y += delta;
  FeatureTrack shifted_ema = ema;
  for (const char* sensor : kTongueSensors) {
    int64_t cy = shifted_ema.channel_index(std::string(sensor) + "_y");
    for (int64_t f = 0; f < shifted_ema.n_frames; ++f)
      shifted_ema.at(f, cy) += static_cast<float>(delta);
  }
  PalateModel m2 = fit_palate(shifted_cloud);
  FeatureTrack d2 = palate_distance_features(shifted_ema, m2);
  for (size_t i = 0; i < d.data.size(); ++i)
    CHECK(std::abs(d.data[i] - d2.data[i]) <= 1e-5f);
}

TEST_CASE("fit_stats: means, idempotence, pooled oracle, constant channel") {
  SUBCASE("alternating zeros and ones") {
    FeatureTrack t;
    t.frame_rate = 200.0;
    t.channel_names = {"a"};
    t.n_frames = 10;
    for (int i = 0; i < 10; ++i) t.data.push_back(i % 2 ? 1.0f : 0.0f);
    std::vector<FeatureTrack> tracks = {t};
    ChannelStats s = fit_stats(tracks);
    CHECK(s.mean[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(s.stddev[0] == doctest::Approx(0.5).epsilon(1e-12));
  }
  SUBCASE("stats of z-normalized data are (0, 1)") {
    std::vector<FeatureTrack> tracks = {
        testing::random_track(200.0, 50, 4, 1),
        testing::random_track(200.0, 70, 4, 2)};
    ChannelStats s = fit_stats(tracks);
    std::vector<FeatureTrack> normed;
    for (const auto& t : tracks) normed.push_back(znormalize(t, s));
    ChannelStats s2 = fit_stats(normed);
    for (size_t c = 0; c < s2.mean.size(); ++c) {
      CHECK(std::abs(s2.mean[c]) < 1e-6);
      CHECK(std::abs(s2.stddev[c] - 1.0) < 1e-6);
    }
  }
  SUBCASE("pooled stats equal the concatenated-matrix oracle") {
    std::vector<FeatureTrack> tracks = {
        testing::random_track(200.0, 33, 3, 5),
        testing::random_track(200.0, 21, 3, 6),
        testing::random_track(200.0, 58, 3, 7)};
    ChannelStats s = fit_stats(tracks);
    FeatureTrack cat;
    cat.frame_rate = 200.0;
    cat.channel_names = tracks[0].channel_names;
    for (const auto& t : tracks) {
      cat.data.insert(cat.data.end(), t.data.begin(), t.data.end());
      cat.n_frames += t.n_frames;
    }
    std::vector<FeatureTrack> one = {cat};
    ChannelStats s2 = fit_stats(one);
    for (size_t c = 0; c < s.mean.size(); ++c) {
      CHECK(s.mean[c] == doctest::Approx(s2.mean[c]).epsilon(1e-12));
      CHECK(s.stddev[c] == doctest::Approx(s2.stddev[c]).epsilon(1e-12));
    }
  }
  SUBCASE("constant channel is rejected by name") {
    FeatureTrack t = testing::random_track(200.0, 20, 3, 8);
    for (int64_t f = 0; f < t.n_frames; ++f) t.at(f, 1) = 4.0f;
    std::vector<FeatureTrack> tracks = {t};
    CHECK_THROWS_WITH_AS(fit_stats(tracks), doctest::Contains("ch_1"), Error);
  }
}

TEST_CASE("znormalize: identity under unit stats") {
  FeatureTrack t = testing::random_track(200.0, 25, 3, 9);
  ChannelStats unit;
  unit.channel_names = t.channel_names;
  unit.mean.assign(3, 0.0);
  unit.stddev.assign(3, 1.0);
  CHECK(znormalize(t, unit).data == t.data);
  CHECK(denormalize(t, unit).data == t.data);
}

TEST_CASE("znormalize/denormalize: round trip and the scalar oracle") {
  std::vector<FeatureTrack> tracks = {testing::random_track(200.0, 40, 5, 10)};
  ChannelStats s = fit_stats(tracks);
  FeatureTrack n = znormalize(tracks[0], s);
  for (int64_t f = 0; f < n.n_frames; ++f)
    for (int64_t c = 0; c < n.n_channels(); ++c) {
      float expect = static_cast<float>(
          (tracks[0].at(f, c) - s.mean[static_cast<size_t>(c)]) /
          s.stddev[static_cast<size_t>(c)]);
      CHECK(n.at(f, c) == expect);
    }
  FeatureTrack back = denormalize(n, s);
  for (size_t i = 0; i < back.data.size(); ++i)
    CHECK(std::abs(back.data[i] - tracks[0].data[i]) <= 1e-6f);

  ChannelStats wrong = s;
  wrong.channel_names[0] = "other";
  CHECK_THROWS_AS(znormalize(tracks[0], wrong), Error);
}

TEST_CASE("assemble_inputs: concatenation, truncation, errors, passthrough") {
  FeatureTrack ema = testing::random_track(200.0, 100, 12, 20);
  F0Track f0;
  f0.frame_rate = 200.0;
  f0.values.assign(100, 120.0f);
  FeatureTrack pal = testing::random_track(200.0, 100, 6, 21);

  FeatureTrack out = assemble_inputs(ema, &f0, &pal);
  CHECK(out.n_frames == 100);
  CHECK(out.n_channels() == 19);
  CHECK(out.channel_names[0] == "ema_ch_0");
  CHECK(out.channel_names[12] == "f0");
  CHECK(out.channel_names[13] == "pal_ch_0");
  CHECK(out.at(3, 12) == 120.0f);
  CHECK(out.at(7, 0) == ema.at(7, 0));
  CHECK(out.at(7, 14) == pal.at(7, 1));

  SUBCASE("min-truncate within the 2-frame allowance") {
    F0Track f0_short = f0;
    f0_short.values.resize(99);
    FeatureTrack out2 = assemble_inputs(ema, &f0_short, &pal);
    CHECK(out2.n_frames == 99);
  }
  SUBCASE("gap above 2 frames is an error") {
    F0Track f0_bad = f0;
    f0_bad.values.resize(95);
    CHECK_THROWS_WITH_AS(assemble_inputs(ema, &f0_bad, &pal),
                         doctest::Contains("gap"), Error);
  }
  SUBCASE("frame-rate mismatch is an error") {
    F0Track f0_bad = f0;
    f0_bad.frame_rate = 100.0;
    CHECK_THROWS_AS(assemble_inputs(ema, &f0_bad, &pal), Error);
  }
  SUBCASE("passthrough when no augmentation is requested") {
    FeatureTrack synth = testing::random_track(400.909, 50, 30, 22);
    FeatureTrack out3 = assemble_inputs(synth, nullptr, nullptr);
    CHECK(out3.n_channels() == 30);
    CHECK(out3.channel_names == synth.channel_names);
    CHECK(out3.data == synth.data);
  }
}

TEST_CASE("palate and stats JSON sidecars round-trip") {
  TempDir tmp("sidecar");
  auto cloud = random_cloud(500, 91);
  PalateModel m = fit_palate(cloud, 64, 8);
  save_palate_json(tmp.file("palate.json"), m);
  PalateModel r = load_palate_json(tmp.file("palate.json"));
  CHECK(r.n_bins == m.n_bins);
  CHECK(r.window_bins == m.window_bins);
  REQUIRE(r.x_grid.size() == m.x_grid.size());
  for (size_t i = 0; i < m.x_grid.size(); ++i) {
    CHECK(r.x_grid[i] == doctest::Approx(m.x_grid[i]).epsilon(1e-15));
    CHECK(r.hull_y[i] == doctest::Approx(m.hull_y[i]).epsilon(1e-15));
    CHECK(r.movmax_y[i] == doctest::Approx(m.movmax_y[i]).epsilon(1e-15));
  }

  FeatureTrack t = testing::random_track(200.0, 30, 4, 92);
  std::vector<FeatureTrack> tracks = {t};
  ChannelStats s = fit_stats(tracks);
  save_stats_json(tmp.file("stats.json"), s);
  ChannelStats rs = load_stats_json(tmp.file("stats.json"));
  CHECK(rs.channel_names == s.channel_names);
  for (size_t c = 0; c < s.mean.size(); ++c) {
    CHECK(rs.mean[c] == doctest::Approx(s.mean[c]).epsilon(1e-15));
    CHECK(rs.stddev[c] == doctest::Approx(s.stddev[c]).epsilon(1e-15));
  }
}
