// tools/artic_main.cpp

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

// Command-line front end: feature preparation, training, synthesis,
// interpolation, metrics, and benchmarking over the on-disk formats.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>

#include "CLI11.hpp"
#include "json.hpp"

#include "artic/bench.hpp"
#include "artic/config.hpp"
#include "artic/dsp.hpp"
#include "artic/eval.hpp"
#include "artic/features.hpp"
#include "artic/interp.hpp"
#include "artic/storage.hpp"
#include "artic/types.hpp"
#include "artic/vocoder.hpp"

namespace fs = std::filesystem;
using namespace artic;

namespace {

std::vector<std::string> read_id_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open id list " + path);
  std::vector<std::string> ids;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) ids.push_back(line);
  }
  return ids;
}

struct ManifestRow {
  std::string id;
  std::string aft_path;
  std::string wav_path;
};

void write_manifest(const std::string& path,
                    const std::vector<ManifestRow>& rows) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open manifest " + path);
  for (const auto& r : rows)
    out << r.id << "\t" << r.aft_path << "\t" << r.wav_path << "\n";
  if (!out) throw Error("write failed for manifest " + path);
}

std::vector<ManifestRow> read_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open manifest " + path);
  std::vector<ManifestRow> rows;
  std::string line;
  size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    size_t t1 = line.find('\t');
    size_t t2 = t1 == std::string::npos ? std::string::npos
                                        : line.find('\t', t1 + 1);
    if (t1 == std::string::npos || t2 == std::string::npos)
      throw Error("manifest " + path + " line " + std::to_string(n) +
                  ": expected 'id<TAB>aft<TAB>wav'");
    rows.push_back({line.substr(0, t1), line.substr(t1 + 1, t2 - t1 - 1),
                    line.substr(t2 + 1)});
  }
  if (rows.empty()) throw Error("manifest " + path + " is empty");
  return rows;
}

FeatureTrack load_feature_input(const std::string& path, double frame_rate) {
  if (path.size() >= 4 && path.substr(path.size() - 4) == ".aft")
    return read_aft(path);
  return import_csv_features(path, frame_rate);
}

void emit_report(const nlohmann::json& j, const std::string& out_path,
                 bool json_mode, const std::string& human) {
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) throw Error("cannot open report file " + out_path);
    out << j.dump(2) << "\n";
    if (!out) throw Error("write failed for " + out_path);
  }
  if (json_mode)
    std::cout << j.dump(2) << "\n";
  else
    std::cout << human;
}

Generator load_generator(const std::string& checkpoint_path,
                         std::string gen_config_path,
                         Checkpoint* out_ckpt = nullptr) {
  if (gen_config_path.empty()) {
    fs::path sibling = fs::path(checkpoint_path).parent_path() /
                       "generator.ini";
    if (!fs::exists(sibling))
      throw Error("no --gen-config given and " + sibling.string() +
                  " does not exist");
    gen_config_path = sibling.string();
  }
  KeyValueConfig kv = KeyValueConfig::load(gen_config_path);
  GeneratorConfig gcfg = generator_config_from(kv, GeneratorConfig{});
  Generator g = build_generator(gcfg, 0);
  Checkpoint c = read_checkpoint(checkpoint_path);
  load_checkpoint(g, c);
  if (out_ckpt != nullptr) *out_ckpt = c;
  return g;
}

// ---------------------------------------------------------------------------
// prepare-features

struct PrepareArgs {
  std::string data_dir;
  std::string out_dir;
  std::string train_list;
  std::string test_list;
  int val_count = 0;
  uint64_t seed = 0;
  double frame_rate = 200.0;
  bool no_palate = false;
  bool no_f0 = false;
  double f0_min = 50.0;
  double f0_max = 400.0;
  int n_bins = 512;
  int window_bins = 32;
};

int run_prepare(const PrepareArgs& a) {
  if (!fs::is_directory(a.data_dir))
    throw Error("data dir does not exist: " + a.data_dir);
  fs::create_directories(a.out_dir);

  // Discover utterances: <id>.csv or <id>.aft plus <id>.wav.
  std::map<std::string, std::string> feature_files;
  for (const auto& entry : fs::directory_iterator(a.data_dir)) {
    if (!entry.is_regular_file()) continue;
    std::string ext = entry.path().extension().string();
    if (ext == ".csv" || ext == ".aft")
      feature_files[entry.path().stem().string()] = entry.path().string();
  }
  if (feature_files.empty())
    throw Error("no .csv or .aft feature files found in " + a.data_dir);
  for (const auto& [id, path] : feature_files) {
    fs::path wav = fs::path(a.data_dir) / (id + ".wav");
    if (!fs::exists(wav))
      throw Error("utterance '" + id + "' has features but no " +
                  wav.string());
  }

  std::vector<std::string> all_ids;
  for (const auto& [id, _] : feature_files) all_ids.push_back(id);

  std::set<std::string> test_ids;
  if (!a.test_list.empty())
    for (const auto& id : read_id_list(a.test_list)) {
      if (!feature_files.count(id))
        throw Error("test list names unknown utterance '" + id + "'");
      test_ids.insert(id);
    }
  std::vector<std::string> train_ids;
  if (!a.train_list.empty()) {
    for (const auto& id : read_id_list(a.train_list)) {
      if (!feature_files.count(id))
        throw Error("train list names unknown utterance '" + id + "'");
      train_ids.push_back(id);
    }
  } else {
    for (const auto& id : all_ids)
      if (!test_ids.count(id)) train_ids.push_back(id);
  }

  // Validation split: seeded shuffle of the training ids.
  std::set<std::string> val_ids;
  if (a.val_count > 0) {
    if (a.val_count >= static_cast<int>(train_ids.size()))
      throw Error("val-count " + std::to_string(a.val_count) +
                  " leaves no training data");
    std::vector<std::string> shuffled = train_ids;
    ad::Rng rng(ad::Rng::derive(a.seed, "val-split"));
    for (size_t i = shuffled.size(); i > 1; --i)
      std::swap(shuffled[i - 1],
                shuffled[static_cast<size_t>(rng.next_index(
                    static_cast<int64_t>(i)))]);
    for (int i = 0; i < a.val_count; ++i) val_ids.insert(shuffled[i]);
  }
  std::vector<std::string> final_train;
  for (const auto& id : train_ids)
    if (!val_ids.count(id)) final_train.push_back(id);

  // Load features and estimate F0.
  std::map<std::string, FeatureTrack> ema;
  std::map<std::string, F0Track> f0;
  for (const auto& [id, path] : feature_files) {
    ema[id] = load_feature_input(path, a.frame_rate);
    if (!a.no_f0) {
      Waveform w = read_wav((fs::path(a.data_dir) / (id + ".wav")).string());
      f0[id] = estimate_f0(w, ema[id].frame_rate, a.f0_min, a.f0_max);
    }
  }

  // Palate from training-split tongue data only.
  std::optional<PalateModel> palate;
  if (!a.no_palate) {
    std::vector<Point2> pts;
    for (const auto& id : final_train) {
      auto utt_pts = tongue_points(ema[id]);
      pts.insert(pts.end(), utt_pts.begin(), utt_pts.end());
    }
    palate = fit_palate(pts, a.n_bins, a.window_bins);
    save_palate_json((fs::path(a.out_dir) / "palate.json").string(), *palate);
  }

  std::map<std::string, FeatureTrack> assembled;
  for (const auto& [id, track] : ema) {
    std::optional<FeatureTrack> dist;
    if (palate.has_value()) dist = palate_distance_features(track, *palate);
    assembled[id] = assemble_inputs(
        track, a.no_f0 ? nullptr : &f0[id],
        dist.has_value() ? &dist.value() : nullptr);
  }

  std::vector<FeatureTrack> train_tracks;
  for (const auto& id : final_train) train_tracks.push_back(assembled[id]);
  ChannelStats stats = fit_stats(train_tracks);
  save_stats_json((fs::path(a.out_dir) / "stats.json").string(), stats);

  auto emit_split = [&](const std::vector<std::string>& ids,
                        const std::string& name) {
    std::vector<ManifestRow> rows;
    for (const auto& id : ids) {
      FeatureTrack norm = znormalize(assembled[id], stats);
      std::string aft_path = (fs::path(a.out_dir) / (id + ".aft")).string();
      write_aft(aft_path, norm);
      rows.push_back(
          {id, aft_path, (fs::path(a.data_dir) / (id + ".wav")).string()});
    }
    if (!rows.empty())
      write_manifest((fs::path(a.out_dir) / (name + "_manifest.tsv")).string(),
                     rows);
    return rows.size();
  };
  size_t n_train = emit_split(final_train, "train");
  std::vector<std::string> val_vec(val_ids.begin(), val_ids.end());
  size_t n_val = emit_split(val_vec, "val");
  std::vector<std::string> test_vec(test_ids.begin(), test_ids.end());
  size_t n_test = emit_split(test_vec, "test");

  nlohmann::json report;
  report["seed"] = a.seed;
  report["train"] = n_train;
  report["val"] = n_val;
  report["test"] = n_test;
  report["in_channels"] =
      assembled.begin()->second.n_channels();
  report["palate"] = palate.has_value();
  report["f0"] = !a.no_f0;
  {
    std::ofstream out((fs::path(a.out_dir) / "prepare_report.json").string());
    out << report.dump(2) << "\n";
    if (!out) throw Error("write failed for prepare_report.json");
  }
  std::cout << "prepared " << n_train << " train / " << n_val << " val / "
            << n_test << " test utterances -> " << a.out_dir << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// train

struct TrainArgs {
  std::string manifest;
  std::string out_dir;
  std::string config_path;
  std::string resume;
  int64_t steps = -1;
  double lr = -1.0;
  int64_t seed = -1;
  int64_t checkpoint_every = -1;
  int64_t crop_chunks = -1;
  int64_t base_channels = -1;
};

int run_train(const TrainArgs& a) {
  auto rows = read_manifest(a.manifest);
  std::vector<TrainPair> data;
  for (const auto& r : rows)
    data.push_back({r.id, read_aft(r.aft_path), read_wav(r.wav_path)});

  KeyValueConfig kv;
  if (!a.config_path.empty()) kv = KeyValueConfig::load(a.config_path);

  // Defaults inferred from the data, overridden by config and flags.
  GeneratorConfig defaults;
  defaults.in_channels = static_cast<int>(data[0].feats.n_channels());
  defaults.sample_rate = data[0].audio.sample_rate;
  defaults.frame_rate = data[0].feats.frame_rate;
  int product = static_cast<int>(
      std::llround(defaults.sample_rate / defaults.frame_rate));
  defaults.upsample_factors = default_upsample_factors(product);
  defaults.ar_chunk = 10 * product;
  GeneratorConfig gcfg = generator_config_from(kv, defaults);
  if (a.base_channels > 0) gcfg.base_channels = static_cast<int>(a.base_channels);
  gcfg.validate();

  TrainConfig tcfg = train_config_from(kv, TrainConfig{});
  if (a.steps >= 0) tcfg.steps = a.steps;
  if (a.lr > 0) tcfg.adam.lr = static_cast<float>(a.lr);
  if (a.seed >= 0) tcfg.seed = static_cast<uint64_t>(a.seed);
  if (a.checkpoint_every >= 0) tcfg.checkpoint_every = a.checkpoint_every;
  if (a.crop_chunks > 0) tcfg.crop_chunks = static_cast<int>(a.crop_chunks);
  tcfg.out_dir = a.out_dir;
  if (kv.has("mel.n_fft") || kv.has("mel.hop") || kv.has("mel.win"))
    tcfg.loss_mel = mel_config_from(
        kv, MelConfig::for_rate(gcfg.sample_rate, gcfg.frame_rate));

  fs::create_directories(a.out_dir);
  save_generator_config((fs::path(a.out_dir) / "generator.ini").string(),
                        gcfg);

  Generator g = build_generator(gcfg, ad::Rng::derive(tcfg.seed, "init"));
  ad::AdamState opt;
  opt.cfg = tcfg.adam;
  if (!a.resume.empty()) {
    load_checkpoint(g, read_checkpoint(a.resume), &opt);
  } else {
    // fresh run: the log appends only across resumes
    fs::remove(fs::path(a.out_dir) / "train_log.tsv");
  }

  auto log = train(g, opt, data, tcfg);
  if (!log.empty())
    std::cout << "step " << log.back().step << ": mel_l1=" << log.back().mel_l1
              << " wav_l1=" << log.back().wav_l1 << "\n";
  std::cout << "trained to step " << opt.step << " ("
            << count_params(g) << " params) -> " << a.out_dir << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// synthesize / interpolate

int run_synthesize(const std::string& checkpoint, const std::string& gen_config,
                   const std::string& input, const std::string& output) {
  Generator g = load_generator(checkpoint, gen_config);
  FeatureTrack feats = read_aft(input);
  Waveform w = synthesize(g, feats);
  write_wav(output, w);
  std::cout << "wrote " << output << " (" << w.samples.size() << " samples @ "
            << w.sample_rate << " Hz)\n";
  return 0;
}

int run_interpolate(const std::string& checkpoint, const std::string& gen_config,
                    const std::string& a_path, const std::string& b_path,
                    int n, const std::string& out_dir, bool no_mel_dump) {
  Generator g = load_generator(checkpoint, gen_config);
  FeatureTrack a = read_aft(a_path);
  FeatureTrack b = read_aft(b_path);
  fs::create_directories(out_dir);
  auto grid = interpolation_grid(a, b, n);
  MelConfig mel = MelConfig::for_rate(g.config.sample_rate,
                                      g.config.frame_rate);
  for (int i = 0; i < n; ++i) {
    double alpha = static_cast<double>(i) / (n - 1);
    char stem[64];
    std::snprintf(stem, sizeof(stem), "interp_%02d_alpha%.4f", i, alpha);
    Waveform w = synthesize(g, grid[static_cast<size_t>(i)]);
    write_wav((fs::path(out_dir) / (std::string(stem) + ".wav")).string(), w);
    if (!no_mel_dump)
      write_aft(
          (fs::path(out_dir) / (std::string(stem) + ".logmel.aft")).string(),
          log_mel(w, mel));
  }
  std::cout << "wrote " << n << " interpolants -> " << out_dir << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// eval-*

std::map<std::string, std::string> wav_files_by_stem(const std::string& dir) {
  std::map<std::string, std::string> files;
  if (!fs::is_directory(dir)) throw Error("not a directory: " + dir);
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".wav")
      files[entry.path().stem().string()] = entry.path().string();
  if (files.empty()) throw Error("no .wav files in " + dir);
  return files;
}

int run_eval_mcd(const std::string& ref, const std::string& hyp, int n_coeffs,
                 const std::string& out_path, bool json_mode) {
  std::vector<std::pair<std::string, std::pair<std::string, std::string>>>
      pairs;
  if (fs::is_directory(ref)) {
    auto ref_files = wav_files_by_stem(ref);
    auto hyp_files = wav_files_by_stem(hyp);
    for (const auto& [id, rpath] : ref_files) {
      auto it = hyp_files.find(id);
      if (it == hyp_files.end())
        throw Error("no hypothesis wav for utterance '" + id + "'");
      pairs.push_back({id, {rpath, it->second}});
    }
  } else {
    pairs.push_back({fs::path(ref).stem().string(), {ref, hyp}});
  }

  nlohmann::json per_utt;
  double sum = 0.0, sum_sq = 0.0;
  for (const auto& [id, paths] : pairs) {
    Waveform r = read_wav(paths.first);
    Waveform h = read_wav(paths.second);
    MelConfig cfg = MelConfig::for_rate(r.sample_rate, 200.0);
    double v = mcd(r, h, cfg, n_coeffs);
    per_utt[id] = v;
    sum += v;
    sum_sq += v * v;
  }
  double n = static_cast<double>(pairs.size());
  double mean = sum / n;
  double var = n > 1 ? (sum_sq - n * mean * mean) / (n - 1) : 0.0;
  double stddev = std::sqrt(std::max(0.0, var));

  nlohmann::json j;
  j["per_utt"] = per_utt;
  j["corpus"] = {{"mean_db", mean}, {"std_db", stddev}, {"n", pairs.size()}};
  char human[128];
  std::snprintf(human, sizeof(human), "MCD: %.2f ± %.2f dB (n=%zu)\n",
                mean, stddev, pairs.size());
  emit_report(j, out_path, json_mode, human);
  return 0;
}

int run_eval_wer(const std::string& ref_path, const std::string& hyp_path,
                 const std::string& out_path, bool json_mode) {
  auto refs = read_transcripts(ref_path);
  auto hyps = read_transcripts(hyp_path);
  std::map<std::string, std::vector<std::string>> hyp_map(hyps.begin(),
                                                          hyps.end());
  std::vector<AlignmentReport> reports;
  nlohmann::json per_utt;
  for (const auto& [id, ref_tokens] : refs) {
    auto it = hyp_map.find(id);
    if (it == hyp_map.end())
      throw Error("no hypothesis transcript for utterance '" + id + "'");
    AlignmentReport rep = align(ref_tokens, it->second);
    per_utt[id] = {{"sub", rep.substitutions},
                   {"del", rep.deletions},
                   {"ins", rep.insertions},
                   {"ref_len", rep.ref_len}};
    reports.push_back(std::move(rep));
  }
  double corpus_wer = wer(reports);
  int64_t errors = 0, ref_len = 0;
  for (const auto& r : reports) {
    errors += r.errors();
    ref_len += r.ref_len;
  }
  nlohmann::json j;
  j["per_utt"] = per_utt;
  j["corpus"] = {{"wer", corpus_wer}, {"errors", errors}, {"ref_len", ref_len}};
  char human[128];
  std::snprintf(human, sizeof(human), "WER: %.2f%% (%lld errors / %lld words)\n",
                100.0 * corpus_wer, static_cast<long long>(errors),
                static_cast<long long>(ref_len));
  emit_report(j, out_path, json_mode, human);
  return 0;
}

int run_eval_confusion(const std::string& ref_path, const std::string& hyp_path,
                       int min_count, const std::string& out_path,
                       bool json_mode) {
  auto refs = read_transcripts(ref_path);
  auto hyps = read_transcripts(hyp_path);
  std::map<std::string, std::vector<std::string>> hyp_map(hyps.begin(),
                                                          hyps.end());
  std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>>
      pairs;
  for (const auto& [id, ref_tokens] : refs) {
    auto it = hyp_map.find(id);
    if (it == hyp_map.end())
      throw Error("no hypothesis phonemes for utterance '" + id + "'");
    pairs.push_back({ref_tokens, it->second});
  }
  ConfusionTable table = phoneme_confusions(pairs, min_count);

  nlohmann::json j;
  j["min_count"] = min_count;
  j["pairs"] = nlohmann::json::array();
  for (const auto& [pair, count] : table.counts)
    j["pairs"].push_back(
        {{"ref", pair.first}, {"hyp", pair.second}, {"count", count}});
  // Direction-merged view for plotting.
  std::map<std::pair<std::string, std::string>, int64_t> merged;
  for (const auto& [pair, count] : table.counts) {
    auto key = pair.first <= pair.second
                   ? pair
                   : std::make_pair(pair.second, pair.first);
    merged[key] += count;
  }
  j["merged"] = nlohmann::json::array();
  for (const auto& [pair, count] : merged)
    j["merged"].push_back(
        {{"a", pair.first}, {"b", pair.second}, {"count", count}});

  std::string human;
  for (const auto& [pair, count] : table.counts)
    human += pair.first + " -> " + pair.second + ": " +
             std::to_string(count) + "\n";
  if (human.empty()) human = "no confusion pairs above threshold\n";
  emit_report(j, out_path, json_mode, human);
  return 0;
}

int run_aggregate_votes(const std::string& votes_path,
                        const std::string& labels_csv,
                        const std::string& out_path, bool json_mode) {
  std::array<std::string, 3> labels;
  {
    std::stringstream ss(labels_csv);
    std::string cell;
    size_t i = 0;
    while (std::getline(ss, cell, ',')) {
      if (i >= 3) throw Error("--labels needs exactly 3 comma-separated labels");
      labels[i++] = cell;
    }
    if (i != 3) throw Error("--labels needs exactly 3 comma-separated labels");
  }
  auto votes = read_votes_csv(votes_path);
  auto agg = aggregate_votes(votes, labels);

  nlohmann::json j;
  j["labels"] = labels;
  nlohmann::json per_utt;
  std::string human;
  for (const auto& [id, vec] : agg) {
    per_utt[id] = vec;
    char line[160];
    std::snprintf(line, sizeof(line), "%s: %.3f %.3f %.3f\n", id.c_str(),
                  vec[0], vec[1], vec[2]);
    human += line;
  }
  j["per_utt"] = per_utt;
  emit_report(j, out_path, json_mode, human);
  return 0;
}

// ---------------------------------------------------------------------------
// bench

int run_bench(const std::string& checkpoint, const std::string& gen_config,
              const std::string& features, int trials, int threads,
              const std::string& hardware, const std::string& out_path,
              bool json_mode) {
  Generator g = load_generator(checkpoint, gen_config);
  std::vector<FeatureTrack> test_set;
  if (fs::is_directory(features)) {
    std::vector<std::string> paths;
    for (const auto& entry : fs::directory_iterator(features))
      if (entry.is_regular_file() && entry.path().extension() == ".aft")
        paths.push_back(entry.path().string());
    std::sort(paths.begin(), paths.end());
    for (const auto& p : paths) test_set.push_back(read_aft(p));
  } else {
    for (const auto& row : read_manifest(features))
      test_set.push_back(read_aft(row.aft_path));
  }
  BenchReport rep =
      time_synthesis(g, test_set, trials, {}, threads, hardware);
  emit_report(nlohmann::json::parse(rep.to_json()), out_path, json_mode,
              rep.to_table());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"time-domain articulatory speech synthesis toolkit"};
  app.require_subcommand(1);

  // prepare-features
  PrepareArgs prep;
  auto* sc_prep = app.add_subcommand(
      "prepare-features",
      "EMA CSV/AFT + WAV -> F0, palate distances, normalized model inputs");
  sc_prep->add_option("--data-dir", prep.data_dir,
                      "directory of <utt>.csv|.aft and <utt>.wav")
      ->required();
  sc_prep->add_option("--out-dir", prep.out_dir, "output directory")
      ->required();
  sc_prep->add_option("--train-list", prep.train_list,
                      "utterance ids for training (default: all non-test)");
  sc_prep->add_option("--test-list", prep.test_list, "utterance ids for test");
  sc_prep->add_option("--val-count", prep.val_count,
                      "validation utterances drawn from the training split");
  sc_prep->add_option("--seed", prep.seed, "seed for the validation split");
  sc_prep->add_option("--frame-rate", prep.frame_rate,
                      "frame rate for CSV feature files (Hz)");
  sc_prep->add_flag("--no-palate", prep.no_palate,
                    "skip palate-distance channels");
  sc_prep->add_flag("--no-f0", prep.no_f0, "skip the F0 channel");
  sc_prep->add_option("--f0-min", prep.f0_min, "F0 search floor (Hz)");
  sc_prep->add_option("--f0-max", prep.f0_max, "F0 search ceiling (Hz)");
  sc_prep->add_option("--n-bins", prep.n_bins, "palate x-axis bins");
  sc_prep->add_option("--window-bins", prep.window_bins,
                      "moving-maximum window, in bins");

  // train
  TrainArgs tr;
  auto* sc_train =
      app.add_subcommand("train", "train the generator on a manifest");
  sc_train->add_option("--manifest", tr.manifest, "id<TAB>aft<TAB>wav rows")
      ->required();
  sc_train->add_option("--out-dir", tr.out_dir, "checkpoints + log directory")
      ->required();
  sc_train->add_option("--config", tr.config_path,
                       "key-value config ([generator]/[train]/[mel])");
  sc_train->add_option("--resume", tr.resume, "checkpoint to resume from");
  sc_train->add_option("--steps", tr.steps, "total optimizer steps");
  sc_train->add_option("--lr", tr.lr, "Adam learning rate");
  sc_train->add_option("--seed", tr.seed, "training seed");
  sc_train->add_option("--checkpoint-every", tr.checkpoint_every,
                       "checkpoint interval in steps (0 = final only)");
  sc_train->add_option("--crop-chunks", tr.crop_chunks,
                       "training crop length in AR chunks");
  sc_train->add_option("--base-channels", tr.base_channels,
                       "generator width override");

  // synthesize
  std::string syn_ckpt, syn_cfg, syn_in, syn_out;
  auto* sc_syn =
      app.add_subcommand("synthesize", "feature track -> waveform");
  sc_syn->add_option("--checkpoint", syn_ckpt, "model checkpoint")->required();
  sc_syn->add_option("--gen-config", syn_cfg,
                     "generator config (default: generator.ini next to the "
                     "checkpoint)");
  sc_syn->add_option("--input", syn_in, "input .aft feature track")
      ->required();
  sc_syn->add_option("--output", syn_out, "output .wav")->required();

  // interpolate
  std::string itp_ckpt, itp_cfg, itp_a, itp_b, itp_out;
  int itp_n = 7;
  bool itp_no_mel = false;
  auto* sc_itp = app.add_subcommand(
      "interpolate", "synthesize evenly spaced blends of two feature tracks");
  sc_itp->add_option("--checkpoint", itp_ckpt, "model checkpoint")->required();
  sc_itp->add_option("--gen-config", itp_cfg, "generator config");
  sc_itp->add_option("--a", itp_a, "first .aft track")->required();
  sc_itp->add_option("--b", itp_b, "second .aft track")->required();
  sc_itp->add_option("--n", itp_n, "number of interpolants (>= 2)");
  sc_itp->add_option("--out-dir", itp_out, "output directory")->required();
  sc_itp->add_flag("--no-mel-dump", itp_no_mel,
                   "skip log-mel .aft dumps of the generated audio");

  // eval-mcd
  std::string mcd_ref, mcd_hyp, mcd_out;
  int mcd_coeffs = 13;
  bool mcd_json = false;
  auto* sc_mcd = app.add_subcommand(
      "eval-mcd", "mel-cepstral distortion between reference and hypothesis "
                  "wavs (files or directories matched by name)");
  sc_mcd->add_option("--ref", mcd_ref, "reference wav or directory")
      ->required();
  sc_mcd->add_option("--hyp", mcd_hyp, "hypothesis wav or directory")
      ->required();
  sc_mcd->add_option("--n-coeffs", mcd_coeffs, "cepstral coefficients");
  sc_mcd->add_option("--out", mcd_out, "JSON report path");
  sc_mcd->add_flag("--json", mcd_json, "print JSON to stdout");

  // eval-wer
  std::string wer_ref, wer_hyp, wer_out;
  bool wer_json = false;
  auto* sc_wer = app.add_subcommand(
      "eval-wer", "word error rate from utt<TAB>tokens transcript files");
  sc_wer->add_option("--ref", wer_ref, "reference transcripts")->required();
  sc_wer->add_option("--hyp", wer_hyp, "hypothesis transcripts")->required();
  sc_wer->add_option("--out", wer_out, "JSON report path");
  sc_wer->add_flag("--json", wer_json, "print JSON to stdout");

  // eval-confusion
  std::string conf_ref, conf_hyp, conf_out;
  int conf_min = 2;
  bool conf_json = false;
  auto* sc_conf = app.add_subcommand(
      "eval-confusion",
      "phoneme substitution pairs from aligned phoneme files");
  sc_conf->add_option("--ref", conf_ref, "reference phonemes")->required();
  sc_conf->add_option("--hyp", conf_hyp, "hypothesis phonemes")->required();
  sc_conf->add_option("--min-count", conf_min,
                      "keep pairs confused at least this often");
  sc_conf->add_option("--out", conf_out, "JSON report path");
  sc_conf->add_flag("--json", conf_json, "print JSON to stdout");

  // aggregate-votes
  std::string votes_path, votes_labels, votes_out;
  bool votes_json = false;
  auto* sc_votes = app.add_subcommand(
      "aggregate-votes",
      "per-utterance mean vote vectors from a listener-vote CSV");
  sc_votes->add_option("--votes", votes_path, "utterance_id,label,hedged[,listener_id] CSV")
      ->required();
  sc_votes->add_option("--labels", votes_labels, "the 3 labels, comma-separated")
      ->required();
  sc_votes->add_option("--out", votes_out, "JSON report path");
  sc_votes->add_flag("--json", votes_json, "print JSON to stdout");

  // bench
  std::string bench_ckpt, bench_cfg, bench_feats, bench_out;
  std::string bench_hw = "cpu";
  int bench_trials = 5, bench_threads = 1;
  bool bench_json = false;
  auto* sc_bench = app.add_subcommand(
      "bench", "synthesis timing over a test set (mean ± std of trials)");
  sc_bench->add_option("--checkpoint", bench_ckpt, "model checkpoint")
      ->required();
  sc_bench->add_option("--gen-config", bench_cfg, "generator config");
  sc_bench->add_option("--features", bench_feats,
                       "directory of .aft files or a manifest")
      ->required();
  sc_bench->add_option("--trials", bench_trials, "timing trials");
  sc_bench->add_option("--threads", bench_threads,
                       "thread count recorded in the report");
  sc_bench->add_option("--hardware", bench_hw, "hardware note for the report");
  sc_bench->add_option("--out", bench_out, "JSON report path");
  sc_bench->add_flag("--json", bench_json, "print JSON to stdout");

  CLI11_PARSE(app, argc, argv);

  try {
    if (sc_prep->parsed()) return run_prepare(prep);
    if (sc_train->parsed()) return run_train(tr);
    if (sc_syn->parsed())
      return run_synthesize(syn_ckpt, syn_cfg, syn_in, syn_out);
    if (sc_itp->parsed())
      return run_interpolate(itp_ckpt, itp_cfg, itp_a, itp_b, itp_n, itp_out,
                             itp_no_mel);
    if (sc_mcd->parsed())
      return run_eval_mcd(mcd_ref, mcd_hyp, mcd_coeffs, mcd_out, mcd_json);
    if (sc_wer->parsed())
      return run_eval_wer(wer_ref, wer_hyp, wer_out, wer_json);
    if (sc_conf->parsed())
      return run_eval_confusion(conf_ref, conf_hyp, conf_min, conf_out,
                                conf_json);
    if (sc_votes->parsed())
      return run_aggregate_votes(votes_path, votes_labels, votes_out,
                                 votes_json);
    if (sc_bench->parsed())
      return run_bench(bench_ckpt, bench_cfg, bench_feats, bench_trials,
                       bench_threads, bench_hw, bench_out, bench_json);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
