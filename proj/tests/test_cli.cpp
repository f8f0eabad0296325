// tests/test_cli.cpp

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

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "artic/storage.hpp"
#include "testing_util.hpp"

using namespace artic;
using artic::testing::TempDir;

namespace {

std::string cli_path() {
  const char* p = std::getenv("ARTIC_CLI");
  REQUIRE_MESSAGE(p != nullptr, "ARTIC_CLI must point at the artic binary");
  return p;
}

int run_cli(const std::string& args) {
  std::string cmd = cli_path() + " " + args + " > /dev/null 2>&1";
  int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::vector<unsigned char> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(bool(in));
  return std::vector<unsigned char>(std::istreambuf_iterator<char>(in), {});
}

}  // namespace

TEST_CASE("cli pipeline: prepare -> train -> synthesize -> eval") {
  TempDir tmp("cli");
  std::string data = tmp.file("data");
  std::string feats = tmp.file("feats");
  std::string run = tmp.file("run");
  testing::write_synthetic_corpus(data, 4, 1.0, 7);

  {
    std::ofstream list(tmp.file("test.txt"));
    list << "utt03\n";
  }
  REQUIRE(run_cli("prepare-features --data-dir " + data + " --out-dir " +
                  feats + " --test-list " + tmp.file("test.txt") +
                  " --val-count 1 --seed 3") == 0);
  // one AFT per utterance, split manifests, sidecars
  for (const char* id : {"utt00", "utt01", "utt02", "utt03"})
    CHECK(std::filesystem::exists(feats + "/" + std::string(id) + ".aft"));
  CHECK(std::filesystem::exists(feats + "/palate.json"));
  CHECK(std::filesystem::exists(feats + "/stats.json"));
  CHECK(std::filesystem::exists(feats + "/train_manifest.tsv"));
  CHECK(std::filesystem::exists(feats + "/val_manifest.tsv"));
  CHECK(std::filesystem::exists(feats + "/test_manifest.tsv"));

  FeatureTrack assembled = read_aft(feats + "/utt00.aft");
  CHECK(assembled.n_channels() == 19);  // 12 EMA + 1 F0 + 6 palate
  CHECK(assembled.frame_rate == 200.0);

  REQUIRE(run_cli("train --manifest " + feats + "/train_manifest.tsv" +
                  " --out-dir " + run +
                  " --steps 4 --seed 5 --base-channels 8") == 0);
  CHECK(std::filesystem::exists(run + "/ckpt_final.ckpt"));
  CHECK(std::filesystem::exists(run + "/generator.ini"));
  CHECK(std::filesystem::exists(run + "/train_log.tsv"));

  std::string wav1 = tmp.file("out1.wav");
  REQUIRE(run_cli("synthesize --checkpoint " + run + "/ckpt_final.ckpt" +
                  " --input " + feats + "/utt03.aft --output " + wav1) == 0);
  Waveform w = read_wav(wav1);
  FeatureTrack t = read_aft(feats + "/utt03.aft");
  CHECK(int64_t(w.samples.size()) == t.n_frames * 80);
  CHECK(w.sample_rate == 16000);

  // Idempotence: a rerun produces a byte-identical wav.
  std::string wav2 = tmp.file("out2.wav");
  REQUIRE(run_cli("synthesize --checkpoint " + run + "/ckpt_final.ckpt" +
                  " --input " + feats + "/utt03.aft --output " + wav2) == 0);
  CHECK(read_file(wav1) == read_file(wav2));

  // interpolate: n wavs with alpha-encoded names plus log-mel dumps
  std::string interp = tmp.file("interp");
  REQUIRE(run_cli("interpolate --checkpoint " + run + "/ckpt_final.ckpt" +
                  " --a " + feats + "/utt00.aft --b " + feats +
                  "/utt01.aft --n 3 --out-dir " + interp) == 0);
  CHECK(std::filesystem::exists(interp + "/interp_00_alpha0.0000.wav"));
  CHECK(std::filesystem::exists(interp + "/interp_01_alpha0.5000.wav"));
  CHECK(std::filesystem::exists(interp + "/interp_02_alpha1.0000.wav"));
  CHECK(std::filesystem::exists(interp + "/interp_01_alpha0.5000.logmel.aft"));

  // eval-mcd over single files
  std::string report = tmp.file("mcd.json");
  REQUIRE(run_cli("eval-mcd --ref " + data + "/utt03.wav --hyp " + wav1 +
                  " --out " + report) == 0);
  {
    std::ifstream in(report);
    nlohmann::json j;
    in >> j;
    CHECK(j["corpus"]["n"] == 1);
    CHECK(j["corpus"]["mean_db"].get<double>() > 0.0);
  }

  // resume continues from the saved optimizer state
  REQUIRE(run_cli("train --manifest " + feats + "/train_manifest.tsv" +
                  " --out-dir " + run + " --resume " + run +
                  "/ckpt_final.ckpt --steps 6 --seed 5 --base-channels 8") ==
          0);

  // bench with the test manifest
  std::string bench_report = tmp.file("bench.json");
  REQUIRE(run_cli("bench --checkpoint " + run + "/ckpt_final.ckpt" +
                  " --features " + feats + "/test_manifest.tsv" +
                  " --trials 2 --out " + bench_report) == 0);
  {
    std::ifstream in(bench_report);
    nlohmann::json j;
    in >> j;
    CHECK(j["trials"] == 2);
    CHECK(j["trial_means_s"].size() == 2);
    CHECK(j["param_count"].get<int64_t>() > 0);
  }
}

TEST_CASE("cli: transcript and vote tools") {
  TempDir tmp("clieval");
  {
    std::ofstream ref(tmp.file("ref.tsv"));
    ref << "u1\tthe cat sat\nu2\thello world\n";
    std::ofstream hyp(tmp.file("hyp.tsv"));
    hyp << "u1\tthe cat\nu2\thello world\n";
  }
  std::string wer_report = tmp.file("wer.json");
  REQUIRE(run_cli("eval-wer --ref " + tmp.file("ref.tsv") + " --hyp " +
                  tmp.file("hyp.tsv") + " --out " + wer_report) == 0);
  {
    std::ifstream in(wer_report);
    nlohmann::json j;
    in >> j;
    CHECK(j["corpus"]["errors"] == 1);
    CHECK(j["corpus"]["ref_len"] == 5);
    CHECK(j["corpus"]["wer"].get<double>() == doctest::Approx(0.2));
  }

  {
    std::ofstream ref(tmp.file("pref.tsv"));
    ref << "u1\td i d\n";
    std::ofstream hyp(tmp.file("phyp.tsv"));
    hyp << "u1\tt i t\n";
  }
  std::string conf_report = tmp.file("conf.json");
  REQUIRE(run_cli("eval-confusion --ref " + tmp.file("pref.tsv") + " --hyp " +
                  tmp.file("phyp.tsv") + " --out " + conf_report) == 0);
  {
    std::ifstream in(conf_report);
    nlohmann::json j;
    in >> j;
    REQUIRE(j["pairs"].size() == 1);
    CHECK(j["pairs"][0]["ref"] == "d");
    CHECK(j["pairs"][0]["hyp"] == "t");
    CHECK(j["pairs"][0]["count"] == 2);
  }

  {
    std::ofstream votes(tmp.file("votes.csv"));
    votes << "utterance_id,label,hedged,listener_id\n";
    for (int i = 0; i < 5; ++i) votes << "u1,ta,0,w" << i << "\n";
    for (int i = 0; i < 5; ++i) votes << "u1,tu,1,w" << i << "\n";
  }
  std::string votes_report = tmp.file("votes.json");
  REQUIRE(run_cli("aggregate-votes --votes " + tmp.file("votes.csv") +
                  " --labels ta,te,tu --out " + votes_report) == 0);
  {
    std::ifstream in(votes_report);
    nlohmann::json j;
    in >> j;
    CHECK(j["per_utt"]["u1"][0].get<double>() == doctest::Approx(0.5));
    CHECK(j["per_utt"]["u1"][1].get<double>() == 0.0);
    CHECK(j["per_utt"]["u1"][2].get<double>() == doctest::Approx(0.25));
  }
}

TEST_CASE("cli: bad inputs exit nonzero with a diagnostic") {
  TempDir tmp("clibad");
  CHECK(run_cli("synthesize --checkpoint /nonexistent.ckpt --input x.aft "
                "--output y.wav") != 0);
  CHECK(run_cli("eval-wer --ref /nonexistent.tsv --hyp /nonexistent.tsv") != 0);
  CHECK(run_cli("prepare-features --data-dir /nonexistent --out-dir " +
                tmp.file("out")) != 0);
  CHECK(run_cli("definitely-not-a-subcommand") != 0);
}
