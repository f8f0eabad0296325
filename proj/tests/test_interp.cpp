// tests/test_interp.cpp

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

#include <cmath>
#include <fstream>

#include "artic/interp.hpp"
#include "testing_util.hpp"

using namespace artic;
using artic::testing::TempDir;

TEST_CASE("lerp_tracks: endpoints, idempotence, midpoint") {
  FeatureTrack a = testing::random_track(200.0, 20, 4, 1);
  FeatureTrack b = testing::random_track(200.0, 20, 4, 2);
  CHECK(lerp_tracks(a, b, 0.0).data == a.data);
  CHECK(lerp_tracks(a, b, 1.0).data == b.data);
  for (double alpha : {0.0, 0.25, 1.0 / 3.0, 0.7, 1.0})
    CHECK(lerp_tracks(a, a, alpha).data == a.data);

  FeatureTrack x = a, y = a;
  x.data.assign(x.data.size(), 2.0f);
  y.data.assign(y.data.size(), 4.0f);
  for (float v : lerp_tracks(x, y, 0.5).data) CHECK(v == 3.0f);
}

TEST_CASE("lerp_tracks: affinity identity within float rounding") {
  FeatureTrack a = testing::random_track(200.0, 15, 3, 3);
  FeatureTrack b = testing::random_track(200.0, 15, 3, 4);
  for (double alpha : {0.1, 0.25, 0.5, 0.8}) {
    FeatureTrack l1 = lerp_tracks(a, b, alpha);
    FeatureTrack l2 = lerp_tracks(a, b, 1.0 - alpha);
    for (size_t i = 0; i < a.data.size(); ++i) {
      double sum = double(l1.data[i]) + l2.data[i];
      double expect = double(a.data[i]) + b.data[i];
      CHECK(std::abs(sum - expect) <= 1e-6 * std::max(1.0, std::abs(expect)));
    }
  }
}

TEST_CASE("lerp_tracks: mismatches rejected") {
  FeatureTrack a = testing::random_track(200.0, 10, 3, 5);
  FeatureTrack b = testing::random_track(200.0, 11, 3, 6);
  CHECK_THROWS_AS(lerp_tracks(a, b, 0.5), Error);
  FeatureTrack c = testing::random_track(100.0, 10, 3, 7);
  CHECK_THROWS_AS(lerp_tracks(a, c, 0.5), Error);
  FeatureTrack d = a;
  d.channel_names[0] = "other";
  CHECK_THROWS_AS(lerp_tracks(a, d, 0.5), Error);
  CHECK_THROWS_AS(lerp_tracks(a, a, 1.5), Error);
}

TEST_CASE("interpolation_grid: seven evenly spaced blends") {
  FeatureTrack a = testing::random_track(200.0, 12, 2, 8);
  FeatureTrack b = testing::random_track(200.0, 12, 2, 9);
  auto grid = interpolation_grid(a, b, 7);
  REQUIRE(grid.size() == 7);
  CHECK(grid[0].data == a.data);  // bit-exact endpoints
  CHECK(grid[6].data == b.data);
  for (int i = 0; i < 7; ++i) {
    FeatureTrack expect = lerp_tracks(a, b, double(i) / 6.0);
    CHECK(grid[size_t(i)].data == expect.data);
  }
  // equal spacing: consecutive differences are constant
  for (size_t i = 0; i + 1 < grid.size(); ++i)
    for (size_t j = 0; j < a.data.size(); ++j) {
      double d0 = double(grid[i + 1].data[j]) - grid[i].data[j];
      double d_expected = (double(b.data[j]) - a.data[j]) / 6.0;
      CHECK(std::abs(d0 - d_expected) <= 1e-6 * std::max(1.0, std::abs(d_expected)));
    }

  auto pair = interpolation_grid(a, b, 2);
  REQUIRE(pair.size() == 2);
  CHECK(pair[0].data == a.data);
  CHECK(pair[1].data == b.data);
  CHECK_THROWS_AS(interpolation_grid(a, b, 1), Error);
}

TEST_CASE("aggregate_votes: one-hot means with the 0.5 hedge rule") {
  std::array<std::string, 3> labels = {"ta", "te", "tu"};
  SUBCASE("ten confident votes for label 0") {
    std::vector<VoteRecord> votes;
    for (int i = 0; i < 10; ++i) votes.push_back({"u1", "ta", false, "l"});
    auto agg = aggregate_votes(votes, labels);
    CHECK(agg.at("u1")[0] == doctest::Approx(1.0));
    CHECK(agg.at("u1")[1] == 0.0);
    CHECK(agg.at("u1")[2] == 0.0);
  }
  SUBCASE("one hedged vote for label 2") {
    std::vector<VoteRecord> votes = {{"u1", "tu", true, "l"}};
    auto agg = aggregate_votes(votes, labels);
    CHECK(agg.at("u1")[0] == 0.0);
    CHECK(agg.at("u1")[1] == 0.0);
    CHECK(agg.at("u1")[2] == doctest::Approx(0.5));
  }
  SUBCASE("five confident label-0 plus five hedged label-2") {
    std::vector<VoteRecord> votes;
    for (int i = 0; i < 5; ++i) votes.push_back({"u1", "ta", false, "a"});
    for (int i = 0; i < 5; ++i) votes.push_back({"u1", "tu", true, "b"});
    auto agg = aggregate_votes(votes, labels);
    CHECK(agg.at("u1")[0] == doctest::Approx(0.5));
    CHECK(agg.at("u1")[1] == 0.0);
    CHECK(agg.at("u1")[2] == doctest::Approx(0.25));
  }
  SUBCASE("unknown label and empty set are errors") {
    std::vector<VoteRecord> bad = {{"u1", "xx", false, "l"}};
    CHECK_THROWS_WITH_AS(aggregate_votes(bad, labels),
                         doctest::Contains("xx"), Error);
    std::vector<VoteRecord> none;
    CHECK_THROWS_AS(aggregate_votes(none, labels), Error);
  }
  SUBCASE("components stay in [0,1] and sum to at most 1") {
    ad::Rng rng(17);
    std::vector<VoteRecord> votes;
    for (int i = 0; i < 200; ++i)
      votes.push_back({"u" + std::to_string(rng.next_index(9)),
                       labels[size_t(rng.next_index(3))],
                       rng.next_index(2) == 1, "l"});
    auto agg = aggregate_votes(votes, labels);
    for (const auto& [id, vec] : agg) {
      double total = 0.0;
      for (double v : vec) {
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
        total += v;
      }
      CHECK(total <= 1.0 + 1e-12);
    }
  }
}

TEST_CASE("votes CSV round trip") {
  TempDir tmp("votes");
  {
    std::ofstream out(tmp.file("v.csv"));
    out << "utterance_id,label,hedged,listener_id\n";
    out << "u1,ta,0,w1\n";
    out << "u1,tu,1,w2\n";
    out << "u2,te,0,w1\n";
  }
  auto votes = read_votes_csv(tmp.file("v.csv"));
  REQUIRE(votes.size() == 3);
  CHECK(votes[0].utterance_id == "u1");
  CHECK(votes[0].choice == "ta");
  CHECK_FALSE(votes[0].hedged);
  CHECK(votes[1].hedged);
  CHECK(votes[2].listener_id == "w1");

  {
    std::ofstream out(tmp.file("bad.csv"));
    out << "utterance_id,label,hedged\n";
    out << "u1,ta,2\n";
  }
  CHECK_THROWS_AS(read_votes_csv(tmp.file("bad.csv")), Error);
  {
    std::ofstream out(tmp.file("hdr.csv"));
    out << "id,choice\nu1,ta\n";
  }
  CHECK_THROWS_AS(read_votes_csv(tmp.file("hdr.csv")), Error);
}
