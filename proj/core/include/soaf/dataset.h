// Copyright 2026 The soaf Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SOAF_DATASET_H_
#define SOAF_DATASET_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "soaf/dsp.h"
#include "soaf/global_field.h"
#include "soaf/local_field.h"
#include "soaf/loss.h"
#include "soaf/model.h"
#include "soaf/renderer.h"
#include "soaf/stft.h"
#include "soaf/wav.h"

namespace soaf {

struct DatasetConfig {
  LocalFieldConfig local;
  RenderConfig render;
  StftConfig stft;
  PosEncConfig posenc;
  OutputMode mode = OutputMode::kMask;
};

// JSON object with mode, local, render, stft and posenc sections.
std::string DatasetConfigToJson(const DatasetConfig& config);
// Throws ParseError on a malformed or incomplete object.
DatasetConfig DatasetConfigFromJson(std::string_view json_text);

struct Sample {
  Pose pose;
  ModelInput input;
  // Mask mode: target magnitudes, their loss statistics and the binaural
  // waveforms (source convolved with the toy RIRs, cut to the source length).
  BinauralMagnitudes target;
  MaskLossStats stats;
  StereoSignal target_audio;
  // RIR mode: toy RIRs and their STFT magnitudes.
  StereoSignal target_rir;
  TfArray rir_magnitude_left;
  TfArray rir_magnitude_right;
};

struct Dataset {
  DatasetConfig config;
  // Field the samples were rendered from, kept so inputs for new poses can
  // be built consistently.
  SceneLayout scene;
  FieldParams field_params;
  int sample_rate = kDefaultSampleRate;
  std::vector<double> source;
  TfArray source_magnitude;
  TfArray source_phase;
  std::vector<Sample> samples;

  int num_bins() const { return source_magnitude.num_bins; }
  int num_frames() const { return source_magnitude.num_frames; }
};

// Network inputs for one pose: F'_ac, F'_l, F'_r and the positional
// encoding of the bounds-normalized position.
ModelInput MakeModelInput(const Pose& pose, const GlobalField& field,
                          const SphereDirections& dirs,
                          const LocalFieldConfig& local,
                          const PosEncConfig& posenc);

// One sample per pose; targets come from the toy RIR generator with the
// config's render settings. `source` must be mono.
Dataset MakeDataset(const GlobalField& field, std::span<const Pose> poses,
                    const AudioClip& source, const DatasetConfig& config);

// Rebuilds the statistics and waveforms that are derived from stored data.
void FinalizeSample(const Dataset& dataset, Sample& sample);

// Model dimensions that fit the dataset; other fields come from `base`.
ModelConfig ModelConfigFor(const Dataset& dataset, ModelConfig base = {});

// Uniform positions inside the bounds at mid-height with horizontal gazes.
// Positions closer than `min_source_distance` to the source are redrawn.
std::vector<Pose> RandomPoses(const SceneLayout& scene, int count,
                              std::uint64_t seed,
                              double min_source_distance = 0.25);

// Zero-mean Gaussian noise with the given standard deviation.
AudioClip NoiseClip(double seconds, int sample_rate, std::uint64_t seed,
                    double stddev = 0.1);

// Seeded shuffle of 0..n-1 split so that the test part holds
// round(test_fraction * n) indices (at least one when n >= 2).
struct Split {
  std::vector<size_t> train;
  std::vector<size_t> test;
};
Split SplitIndices(size_t n, double test_fraction, std::uint64_t seed);

// Directory layout: dataset.json (configs, scene, poses, shapes),
// samples.f32 (per-sample inputs and targets) and source.f32.
void SaveDataset(const Dataset& dataset, const std::filesystem::path& dir);
Dataset LoadDataset(const std::filesystem::path& dir);

}  // namespace soaf

#endif  // SOAF_DATASET_H_
