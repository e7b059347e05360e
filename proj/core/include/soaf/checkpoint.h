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

#ifndef SOAF_CHECKPOINT_H_
#define SOAF_CHECKPOINT_H_

#include <cstdint>
#include <filesystem>
#include <optional>

#include "soaf/dataset.h"
#include "soaf/model.h"
#include "soaf/train.h"

namespace soaf {

struct CheckpointInfo {
  std::uint64_t seed = 0;  // initialization seed
  std::optional<TrainConfig> train;
  // Feature and STFT settings the model expects at inference time.
  std::optional<DatasetConfig> data;
};

// <stem>.f32 holds the parameters as little-endian float32 in layer order
// (each weight column-major, then its bias); <stem>.json records the model
// config, layer shapes, seed, training config and data config.
void SaveCheckpoint(const MlpModel& model, const CheckpointInfo& info,
                    const std::filesystem::path& stem);

// Throws ParseError when the manifest is malformed or the blob size does not
// match the recorded shapes.
MlpModel LoadCheckpoint(const std::filesystem::path& stem,
                        CheckpointInfo* info = nullptr);

}  // namespace soaf

#endif  // SOAF_CHECKPOINT_H_
