# Copyright 2026  artic authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#  http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Time-domain articulatory speech synthesis toolkit."""

from ._artic import (  # noqa: F401
    AlignmentReport,
    ArticError,
    BenchReport,
    ChannelStats,
    F0Track,
    FeatureTrack,
    Generator,
    GeneratorConfig,
    MelConfig,
    PalateKind,
    PalateModel,
    TrainConfig,
    VoteRecord,
    Waveform,
    aggregate_votes,
    align,
    assemble_inputs,
    build_generator,
    count_params,
    denormalize,
    estimate_f0,
    fit_palate,
    fit_stats,
    format_param_count,
    import_csv_features,
    interpolation_grid,
    lerp_tracks,
    load_generator,
    load_palate_json,
    load_stats_json,
    log_mel,
    mcd,
    mcd_from_cepstra,
    mel_cepstrum,
    palate_distance_features,
    palate_height,
    phoneme_confusions,
    read_aft,
    read_transcripts,
    read_votes_csv,
    read_wav,
    resample,
    save_checkpoint,
    save_palate_json,
    save_stats_json,
    synthesize,
    time_synthesis,
    train,
    wer,
    write_aft,
    write_wav,
    znormalize,
)

__version__ = "0.1.0"
