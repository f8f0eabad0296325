// bindings/module.cpp

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

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "artic/bench.hpp"
#include "artic/config.hpp"
#include "artic/dsp.hpp"
#include "artic/eval.hpp"
#include "artic/features.hpp"
#include "artic/interp.hpp"
#include "artic/storage.hpp"
#include "artic/types.hpp"
#include "artic/vocoder.hpp"

namespace py = pybind11;
using namespace artic;

namespace {

py::array_t<float> track_data(const FeatureTrack& t) {
  py::array_t<float> arr({t.n_frames, t.n_channels()});
  std::copy(t.data.begin(), t.data.end(), arr.mutable_data());
  return arr;
}

void set_track_data(FeatureTrack& t, py::array_t<float, py::array::c_style |
                                                            py::array::forcecast>
                                         arr) {
  if (arr.ndim() != 2)
    throw Error("FeatureTrack.data expects a 2-D array of [frames, channels]");
  if (arr.shape(1) != t.n_channels())
    throw Error("FeatureTrack.data: array has " + std::to_string(arr.shape(1)) +
                " channels, track declares " + std::to_string(t.n_channels()));
  t.n_frames = arr.shape(0);
  t.data.assign(arr.data(), arr.data() + arr.size());
}

py::array_t<float> wave_samples(const Waveform& w) {
  py::array_t<float> arr(static_cast<py::ssize_t>(w.samples.size()));
  std::copy(w.samples.begin(), w.samples.end(), arr.mutable_data());
  return arr;
}

}  // namespace

PYBIND11_MODULE(_artic, m) {
  m.doc() = "time-domain articulatory speech synthesis core";

  py::register_exception<Error>(m, "ArticError");

  py::class_<Waveform>(m, "Waveform")
      .def(py::init([](int sample_rate,
                       py::array_t<float, py::array::c_style |
                                              py::array::forcecast> samples) {
             Waveform w;
             w.sample_rate = sample_rate;
             w.samples.assign(samples.data(), samples.data() + samples.size());
             return w;
           }),
           py::arg("sample_rate"), py::arg("samples"))
      .def_readwrite("sample_rate", &Waveform::sample_rate)
      .def_property("samples", &wave_samples,
                    [](Waveform& w, py::array_t<float, py::array::c_style |
                                                           py::array::forcecast>
                                        arr) {
                      w.samples.assign(arr.data(), arr.data() + arr.size());
                    })
      .def("duration_s", &Waveform::duration_s)
      .def("__len__", [](const Waveform& w) { return w.samples.size(); });

  py::class_<FeatureTrack>(m, "FeatureTrack")
      .def(py::init([](double frame_rate, std::vector<std::string> names,
                       py::array_t<float, py::array::c_style |
                                              py::array::forcecast> data) {
             FeatureTrack t;
             t.frame_rate = frame_rate;
             t.channel_names = std::move(names);
             set_track_data(t, data);
             return t;
           }),
           py::arg("frame_rate"), py::arg("channel_names"), py::arg("data"))
      .def_readwrite("frame_rate", &FeatureTrack::frame_rate)
      .def_readwrite("channel_names", &FeatureTrack::channel_names)
      .def_property_readonly("n_frames",
                             [](const FeatureTrack& t) { return t.n_frames; })
      .def_property("data", &track_data, &set_track_data)
      .def("channel_index", &FeatureTrack::channel_index);

  py::class_<F0Track>(m, "F0Track")
      .def(py::init<>())
      .def_readwrite("frame_rate", &F0Track::frame_rate)
      .def_readwrite("values", &F0Track::values);

  // storage
  m.def("read_wav", &read_wav, py::arg("path"));
  m.def("write_wav", &write_wav, py::arg("path"), py::arg("waveform"));
  m.def("read_aft", &read_aft, py::arg("path"));
  m.def("write_aft", &write_aft, py::arg("path"), py::arg("track"));
  m.def("import_csv_features", &import_csv_features, py::arg("path"),
        py::arg("frame_rate"));

  // dsp
  py::class_<MelConfig>(m, "MelConfig")
      .def(py::init<>())
      .def_readwrite("n_fft", &MelConfig::n_fft)
      .def_readwrite("hop", &MelConfig::hop)
      .def_readwrite("win", &MelConfig::win)
      .def_readwrite("n_mels", &MelConfig::n_mels)
      .def_readwrite("fmin", &MelConfig::fmin)
      .def_readwrite("fmax", &MelConfig::fmax)
      .def_readwrite("sample_rate", &MelConfig::sample_rate)
      .def_readwrite("log_floor", &MelConfig::log_floor)
      .def_static("for_rate", &MelConfig::for_rate, py::arg("sample_rate"),
                  py::arg("frame_rate"));
  m.def("resample", &resample, py::arg("waveform"), py::arg("target_rate"));
  m.def("log_mel", &log_mel, py::arg("waveform"), py::arg("config"));
  m.def("mel_cepstrum", &mel_cepstrum, py::arg("logmel"), py::arg("n_coeffs"));
  m.def("estimate_f0", &estimate_f0, py::arg("waveform"), py::arg("frame_rate"),
        py::arg("f0_min") = 50.0, py::arg("f0_max") = 400.0);

  // features
  py::class_<PalateModel>(m, "PalateModel")
      .def(py::init<>())
      .def_readwrite("x_grid", &PalateModel::x_grid)
      .def_readwrite("hull_y", &PalateModel::hull_y)
      .def_readwrite("movmax_y", &PalateModel::movmax_y)
      .def_readwrite("n_bins", &PalateModel::n_bins)
      .def_readwrite("window_bins", &PalateModel::window_bins)
      .def_readwrite("coordinate_note", &PalateModel::coordinate_note);
  py::enum_<PalateKind>(m, "PalateKind")
      .value("HULL", PalateKind::kHull)
      .value("MOVMAX", PalateKind::kMovingMax);
  m.def(
      "fit_palate",
      [](py::array_t<double, py::array::c_style | py::array::forcecast> pts,
         int n_bins, int window_bins) {
        if (pts.ndim() != 2 || pts.shape(1) != 2)
          throw Error("fit_palate expects an (n, 2) array of x,y points");
        std::vector<Point2> points(static_cast<size_t>(pts.shape(0)));
        for (py::ssize_t i = 0; i < pts.shape(0); ++i)
          points[static_cast<size_t>(i)] = {pts.at(i, 0), pts.at(i, 1)};
        return fit_palate(points, n_bins, window_bins);
      },
      py::arg("points"), py::arg("n_bins") = 512, py::arg("window_bins") = 32);
  m.def("palate_height", &palate_height, py::arg("model"), py::arg("x"),
        py::arg("kind"));
  m.def("palate_distance_features", &palate_distance_features, py::arg("ema"),
        py::arg("model"));
  py::class_<ChannelStats>(m, "ChannelStats")
      .def(py::init<>())
      .def_readwrite("channel_names", &ChannelStats::channel_names)
      .def_readwrite("mean", &ChannelStats::mean)
      .def_readwrite("stddev", &ChannelStats::stddev);
  m.def("fit_stats", [](const std::vector<FeatureTrack>& tracks) {
    return fit_stats(tracks);
  });
  m.def("znormalize", &znormalize, py::arg("track"), py::arg("stats"));
  m.def("denormalize", &denormalize, py::arg("track"), py::arg("stats"));
  m.def(
      "assemble_inputs",
      [](const FeatureTrack& ema, const F0Track* f0,
         const FeatureTrack* palate) {
        return assemble_inputs(ema, f0, palate);
      },
      py::arg("ema"), py::arg("f0") = nullptr, py::arg("palate") = nullptr);
  m.def("save_palate_json", &save_palate_json);
  m.def("load_palate_json", &load_palate_json);
  m.def("save_stats_json", &save_stats_json);
  m.def("load_stats_json", &load_stats_json);

  // vocoder
  py::class_<GeneratorConfig>(m, "GeneratorConfig")
      .def(py::init<>())
      .def_readwrite("in_channels", &GeneratorConfig::in_channels)
      .def_readwrite("base_channels", &GeneratorConfig::base_channels)
      .def_readwrite("upsample_factors", &GeneratorConfig::upsample_factors)
      .def_readwrite("resblock_kernel", &GeneratorConfig::resblock_kernel)
      .def_readwrite("resblock_dilations", &GeneratorConfig::resblock_dilations)
      .def_readwrite("ar_chunk", &GeneratorConfig::ar_chunk)
      .def_readwrite("ar_embed", &GeneratorConfig::ar_embed)
      .def_readwrite("sample_rate", &GeneratorConfig::sample_rate)
      .def_readwrite("frame_rate", &GeneratorConfig::frame_rate)
      .def("upsample_product", &GeneratorConfig::upsample_product)
      .def("validate", &GeneratorConfig::validate)
      .def("digest", &GeneratorConfig::digest)
      .def_static("desk_tier", &GeneratorConfig::desk_tier);
  py::class_<Generator>(m, "Generator")
      .def_readonly("config", &Generator::config)
      .def_property_readonly(
          "param_names", [](const Generator& g) { return g.names; });
  m.def("build_generator", &build_generator, py::arg("config"),
        py::arg("seed"));
  m.def("count_params", &count_params);
  m.def("synthesize", &synthesize, py::arg("generator"), py::arg("features"));
  py::class_<TrainConfig>(m, "TrainConfig")
      .def(py::init<>())
      .def_readwrite("steps", &TrainConfig::steps)
      .def_property(
          "lr", [](const TrainConfig& c) { return c.adam.lr; },
          [](TrainConfig& c, float v) { c.adam.lr = v; })
      .def_readwrite("crop_chunks", &TrainConfig::crop_chunks)
      .def_readwrite("wav_l1_weight", &TrainConfig::wav_l1_weight)
      .def_readwrite("seed", &TrainConfig::seed)
      .def_readwrite("checkpoint_every", &TrainConfig::checkpoint_every)
      .def_readwrite("out_dir", &TrainConfig::out_dir);
  m.def(
      "train",
      [](Generator& g,
         const std::vector<std::tuple<std::string, FeatureTrack, Waveform>>&
             data,
         const TrainConfig& cfg) {
        std::vector<TrainPair> pairs;
        for (const auto& [id, feats, audio] : data)
          pairs.push_back({id, feats, audio});
        ad::AdamState opt;
        opt.cfg = cfg.adam;
        auto log = train(g, opt, pairs, cfg);
        std::vector<std::tuple<int64_t, double, double>> out;
        for (const auto& e : log)
          out.emplace_back(e.step, e.mel_l1, e.wav_l1);
        return out;
      },
      py::arg("generator"), py::arg("data"), py::arg("config"),
      "Runs the training loop; returns (step, mel_l1, wav_l1) tuples.");
  m.def(
      "save_checkpoint",
      [](const std::string& path, const Generator& g, int64_t step) {
        write_checkpoint(path, to_checkpoint(g, nullptr, step));
      },
      py::arg("path"), py::arg("generator"), py::arg("step") = 0);
  m.def(
      "load_generator",
      [](const GeneratorConfig& cfg, const std::string& path) {
        Generator g = build_generator(cfg, 0);
        load_checkpoint(g, read_checkpoint(path));
        return g;
      },
      py::arg("config"), py::arg("path"));

  // interp
  m.def("lerp_tracks", &lerp_tracks, py::arg("a"), py::arg("b"),
        py::arg("alpha"));
  m.def("interpolation_grid", &interpolation_grid, py::arg("a"), py::arg("b"),
        py::arg("n") = 7);
  py::class_<VoteRecord>(m, "VoteRecord")
      .def(py::init([](std::string utt, std::string choice, bool hedged,
                       std::string listener) {
             return VoteRecord{std::move(utt), std::move(choice), hedged,
                               std::move(listener)};
           }),
           py::arg("utterance_id"), py::arg("choice"),
           py::arg("hedged") = false, py::arg("listener_id") = "")
      .def_readwrite("utterance_id", &VoteRecord::utterance_id)
      .def_readwrite("choice", &VoteRecord::choice)
      .def_readwrite("hedged", &VoteRecord::hedged)
      .def_readwrite("listener_id", &VoteRecord::listener_id);
  m.def(
      "aggregate_votes",
      [](const std::vector<VoteRecord>& votes,
         const std::array<std::string, 3>& labels) {
        return aggregate_votes(votes, labels);
      },
      py::arg("votes"), py::arg("labels"));
  m.def("read_votes_csv", &read_votes_csv);

  // eval
  py::class_<AlignmentReport>(m, "AlignmentReport")
      .def_readonly("matches", &AlignmentReport::matches)
      .def_readonly("substitutions", &AlignmentReport::substitutions)
      .def_readonly("deletions", &AlignmentReport::deletions)
      .def_readonly("insertions", &AlignmentReport::insertions)
      .def_readonly("ref_len", &AlignmentReport::ref_len)
      .def("errors", &AlignmentReport::errors);
  m.def(
      "align",
      [](const std::vector<std::string>& ref,
         const std::vector<std::string>& hyp) { return align(ref, hyp); },
      py::arg("ref"), py::arg("hyp"));
  m.def(
      "wer",
      [](const std::vector<AlignmentReport>& reports) { return wer(reports); },
      py::arg("reports"));
  m.def("mcd", &mcd, py::arg("ref"), py::arg("hyp"), py::arg("config"),
        py::arg("n_coeffs") = 13);
  m.def("mcd_from_cepstra", &mcd_from_cepstra, py::arg("ref"), py::arg("hyp"),
        py::arg("n_coeffs") = 13);
  m.def(
      "phoneme_confusions",
      [](const std::vector<std::pair<std::vector<std::string>,
                                     std::vector<std::string>>>& pairs,
         int min_count) {
        ConfusionTable table = phoneme_confusions(pairs, min_count);
        std::map<std::pair<std::string, std::string>, int64_t> out(
            table.counts.begin(), table.counts.end());
        return out;
      },
      py::arg("pairs"), py::arg("min_count") = 2);
  m.def("read_transcripts", &read_transcripts);

  // bench
  py::class_<BenchReport>(m, "BenchReport")
      .def_readonly("trials", &BenchReport::trials)
      .def_readonly("trial_means_s", &BenchReport::trial_means_s)
      .def_readonly("mean_s", &BenchReport::mean_s)
      .def_readonly("std_s", &BenchReport::std_s)
      .def_readonly("rtf", &BenchReport::rtf)
      .def_readonly("param_count", &BenchReport::param_count)
      .def_readonly("thread_count", &BenchReport::thread_count)
      .def_readonly("hardware_note", &BenchReport::hardware_note)
      .def("to_json", &BenchReport::to_json)
      .def("to_table", &BenchReport::to_table);
  m.def(
      "time_synthesis",
      [](const Generator& g, const std::vector<FeatureTrack>& test_set,
         int trials, int thread_count, const std::string& hardware_note) {
        return time_synthesis(g, test_set, trials, {}, thread_count,
                              hardware_note);
      },
      py::arg("generator"), py::arg("test_set"), py::arg("trials") = 5,
      py::arg("thread_count") = 1, py::arg("hardware_note") = "cpu");
  m.def("format_param_count", &format_param_count);
}
