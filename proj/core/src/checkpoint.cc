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

#include "soaf/checkpoint.h"

#include <cmath>

#include <nlohmann/json.hpp>

#include "soaf/binary_io.h"
#include "soaf/error.h"
#include "soaf/scene.h"

namespace soaf {
namespace {

using nlohmann::json;

constexpr int kCheckpointFormatVersion = 1;

json ModelConfigJson(const ModelConfig& c) {
  return {{"mode", OutputModeName(c.mode)},
          {"num_directions", c.num_directions},
          {"num_bins", c.num_bins},
          {"rir_length", c.rir_length},
          {"acoustic_width", c.acoustic_width},
          {"channel_width", c.channel_width},
          {"hidden", c.hidden},
          {"posenc_frequencies", c.posenc.num_frequencies},
          {"posenc_include_input", c.posenc.include_input},
          {"extra_width", c.extra_width},
          {"acoustic_features", c.acoustic_features}};
}

ModelConfig ModelConfigFromJson(const json& j) {
  ModelConfig c;
  c.mode = ParseOutputMode(j.at("mode").get<std::string>());
  c.num_directions = j.at("num_directions").get<int>();
  c.num_bins = j.at("num_bins").get<int>();
  c.rir_length = j.at("rir_length").get<int>();
  c.acoustic_width = j.at("acoustic_width").get<int>();
  c.channel_width = j.at("channel_width").get<int>();
  c.hidden = j.at("hidden").get<std::vector<int>>();
  c.posenc.num_frequencies = j.at("posenc_frequencies").get<int>();
  c.posenc.include_input = j.at("posenc_include_input").get<bool>();
  c.extra_width = j.at("extra_width").get<int>();
  c.acoustic_features = j.at("acoustic_features").get<bool>();
  return c;
}

json TrainConfigJson(const TrainConfig& t) {
  return {{"lr_start", t.lr_start},
          {"lr_end", t.lr_end},
          {"epochs", t.epochs},
          {"batch_size", t.batch_size},
          {"beta1", t.beta1},
          {"beta2", t.beta2},
          {"adam_epsilon", t.adam_epsilon},
          {"seed", t.seed}};
}

TrainConfig TrainConfigFromJson(const json& j) {
  TrainConfig t;
  t.lr_start = j.at("lr_start").get<double>();
  t.lr_end = j.at("lr_end").get<double>();
  t.epochs = j.at("epochs").get<int>();
  t.batch_size = j.at("batch_size").get<int>();
  t.beta1 = j.at("beta1").get<double>();
  t.beta2 = j.at("beta2").get<double>();
  t.adam_epsilon = j.at("adam_epsilon").get<double>();
  t.seed = j.at("seed").get<std::uint64_t>();
  return t;
}

}  // namespace

void SaveCheckpoint(const MlpModel& model, const CheckpointInfo& info,
                    const std::filesystem::path& stem) {
  json layers = json::array();
  for (const LayerShape& l : model.layers()) {
    layers.push_back({{"name", l.name}, {"out", l.out}, {"in", l.in}});
  }
  json meta = {
      {"format_version", kCheckpointFormatVersion}, {"dtype", "float32"},
      {"num_parameters", model.num_parameters()},   {"seed", info.seed},
      {"model", ModelConfigJson(model.config())},   {"layers", layers}};
  meta["train"] = info.train ? TrainConfigJson(*info.train) : json(nullptr);
  meta["data"] =
      info.data ? json::parse(DatasetConfigToJson(*info.data)) : json(nullptr);
  WriteF32File(WithSuffix(stem, ".f32"), model.parameters());
  WriteTextFile(WithSuffix(stem, ".json"), meta.dump(2));
}

MlpModel LoadCheckpoint(const std::filesystem::path& stem,
                        CheckpointInfo* info) {
  const std::filesystem::path manifest = WithSuffix(stem, ".json");
  try {
    const json meta = json::parse(ReadTextFile(manifest));
    if (meta.at("format_version").get<int>() != kCheckpointFormatVersion) {
      throw ParseError("unsupported checkpoint format version");
    }
    MlpModel model(ModelConfigFromJson(meta.at("model")));
    const json& layers = meta.at("layers");
    if (layers.size() != model.layers().size()) {
      throw ParseError("corrupt checkpoint: layer count mismatch");
    }
    for (size_t i = 0; i < layers.size(); ++i) {
      const LayerShape& l = model.layers()[i];
      if (layers[i].at("out").get<int>() != l.out ||
          layers[i].at("in").get<int>() != l.in) {
        throw ParseError("corrupt checkpoint: shape mismatch in " + l.name);
      }
    }
    const std::vector<double> params = ReadF32File(WithSuffix(stem, ".f32"));
    if (params.size() != model.num_parameters() ||
        meta.at("num_parameters").get<size_t>() != params.size()) {
      throw ParseError("corrupt checkpoint: expected " +
                       std::to_string(model.num_parameters()) +
                       " parameters, found " + std::to_string(params.size()));
    }
    for (double v : params) {
      if (!std::isfinite(v))
        throw ParseError("corrupt checkpoint: non-finite parameter");
    }
    std::copy(params.begin(), params.end(), model.parameters().begin());
    if (info) {
      info->seed = meta.at("seed").get<std::uint64_t>();
      info->train.reset();
      if (!meta.at("train").is_null()) {
        info->train = TrainConfigFromJson(meta.at("train"));
      }
      info->data.reset();
      if (meta.contains("data") && !meta.at("data").is_null()) {
        info->data = DatasetConfigFromJson(meta.at("data").dump());
      }
    }
    return model;
  } catch (const json::exception& e) {
    throw ParseError(manifest.string() + ": " + e.what());
  } catch (const ValidationError& e) {
    throw ParseError(manifest.string() + ": " + e.what());
  }
}

}  // namespace soaf
