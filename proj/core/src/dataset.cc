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

#include "soaf/dataset.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include <nlohmann/json.hpp>

#include "soaf/binary_io.h"
#include "soaf/error.h"

namespace soaf {
namespace {

using nlohmann::json;

constexpr int kDatasetFormatVersion = 1;

class Reader {
 public:
  explicit Reader(std::vector<double> values) : values_(std::move(values)) {}

  std::vector<double> Take(size_t n) {
    if (pos_ + n > values_.size()) throw ParseError("samples.f32 is truncated");
    std::vector<double> out(values_.begin() + pos_, values_.begin() + pos_ + n);
    pos_ += n;
    return out;
  }

  bool done() const { return pos_ == values_.size(); }

 private:
  std::vector<double> values_;
  size_t pos_ = 0;
};

TfArray ToTf(std::vector<double> values, int bins, int frames) {
  TfArray t;
  t.num_bins = bins;
  t.num_frames = frames;
  t.data = std::move(values);
  return t;
}

json StftJson(const StftConfig& c) {
  return {{"n_fft", c.n_fft}, {"hop", c.hop}, {"win_length", c.win_length}};
}

json ConfigJson(const DatasetConfig& c) {
  return {
      {"mode", OutputModeName(c.mode)},
      {"local",
       {{"num_directions", c.local.num_directions},
        {"samples_per_ray", c.local.samples_per_ray},
        {"r_min", c.local.r_min},
        {"r_max", c.local.r_max}}},
      {"render",
       {{"base_gain", c.render.base_gain},
        {"pan_strength", c.render.pan_strength},
        {"rir_t60", c.render.rir_t60},
        {"rir_length", c.render.rir_length},
        {"speed_of_sound", c.render.speed_of_sound},
        {"tail_level", c.render.tail_level},
        {"seed", c.render.seed},
        {"sample_rate", c.render.sample_rate}}},
      {"stft", StftJson(c.stft)},
      {"posenc",
       {{"num_frequencies", c.posenc.num_frequencies},
        {"include_input", c.posenc.include_input}}},
  };
}

DatasetConfig ConfigFromJson(const json& j) {
  DatasetConfig c;
  c.mode = ParseOutputMode(j.at("mode").get<std::string>());
  const json& l = j.at("local");
  c.local.num_directions = l.at("num_directions").get<int>();
  c.local.samples_per_ray = l.at("samples_per_ray").get<int>();
  c.local.r_min = l.at("r_min").get<double>();
  c.local.r_max = l.at("r_max").get<double>();
  const json& r = j.at("render");
  c.render.base_gain = r.at("base_gain").get<double>();
  c.render.pan_strength = r.at("pan_strength").get<double>();
  c.render.rir_t60 = r.at("rir_t60").get<double>();
  c.render.rir_length = r.at("rir_length").get<int>();
  c.render.speed_of_sound = r.at("speed_of_sound").get<double>();
  c.render.tail_level = r.at("tail_level").get<double>();
  c.render.seed = r.at("seed").get<std::uint64_t>();
  c.render.sample_rate = r.at("sample_rate").get<int>();
  const json& s = j.at("stft");
  c.stft.n_fft = s.at("n_fft").get<int>();
  c.stft.hop = s.at("hop").get<int>();
  c.stft.win_length = s.at("win_length").get<int>();
  const json& p = j.at("posenc");
  c.posenc.num_frequencies = p.at("num_frequencies").get<int>();
  c.posenc.include_input = p.at("include_input").get<bool>();
  return c;
}

}  // namespace

std::string DatasetConfigToJson(const DatasetConfig& config) {
  return ConfigJson(config).dump(2);
}

DatasetConfig DatasetConfigFromJson(std::string_view json_text) {
  try {
    return ConfigFromJson(json::parse(json_text));
  } catch (const json::exception& e) {
    throw ParseError(std::string("dataset config: ") + e.what());
  }
}

ModelInput MakeModelInput(const Pose& pose, const GlobalField& field,
                          const SphereDirections& dirs,
                          const LocalFieldConfig& local,
                          const PosEncConfig& posenc) {
  BinauralFeatures features = ComputeBinauralFeatures(pose, field, dirs, local);
  ModelInput input;
  input.local = std::move(features.local.values);
  input.left = std::move(features.left);
  input.right = std::move(features.right);
  input.posenc = PositionalEncoding(
      NormalizeToBounds(pose.position, field.scene().bounds), posenc);
  return input;
}

void FinalizeSample(const Dataset& dataset, Sample& sample) {
  if (dataset.config.mode == OutputMode::kMask) {
    TfArray& mix = sample.target.mixture;
    mix = TfArray(sample.target.left.num_bins, sample.target.left.num_frames);
    for (size_t i = 0; i < mix.data.size(); ++i) {
      mix.data[i] =
          0.5 * (sample.target.left.data[i] + sample.target.right.data[i]);
    }
    sample.stats =
        ComputeMaskLossStats(dataset.source_magnitude, sample.target);
  } else {
    sample.rir_magnitude_left =
        Magnitude(Stft(sample.target_rir.left, dataset.config.stft));
    sample.rir_magnitude_right =
        Magnitude(Stft(sample.target_rir.right, dataset.config.stft));
  }
}

Dataset MakeDataset(const GlobalField& field, std::span<const Pose> poses,
                    const AudioClip& source, const DatasetConfig& config) {
  if (poses.empty()) throw DomainError("empty pose list");
  ValidateClip(source);
  if (source.num_channels() != 1) throw DomainError("source must be mono");
  if (source.sample_rate != config.render.sample_rate) {
    throw DomainError("source sample rate differs from the render sample rate");
  }
  const AnalyticRenderer renderer(field, config.local, config.render);

  Dataset ds;
  ds.config = config;
  ds.scene = field.scene();
  ds.field_params = field.params();
  ds.sample_rate = source.sample_rate;
  ds.source = source.channels.front();
  const Spectrogram spec = Stft(ds.source, config.stft);
  ds.source_magnitude = Magnitude(spec);
  ds.source_phase = Phase(spec);

  ds.samples.reserve(poses.size());
  for (const Pose& pose : poses) {
    if (!field.scene().bounds.Contains(pose.position)) {
      throw DomainError("pose outside scene bounds");
    }
    Sample s;
    s.pose = pose;
    s.input = MakeModelInput(pose, field, renderer.directions(), config.local,
                             config.posenc);
    const RirPair rir = renderer.ToyRir(pose);
    if (config.mode == OutputMode::kMask) {
      const size_t n = ds.source.size();
      std::vector<double> left = ConvolveRir(ds.source, rir.left);
      std::vector<double> right = ConvolveRir(ds.source, rir.right);
      left.resize(n);
      right.resize(n);
      s.target.left = Magnitude(Stft(left, config.stft));
      s.target.right = Magnitude(Stft(right, config.stft));
      s.target_audio = {std::move(left), std::move(right)};
    } else {
      s.target_rir = {rir.left, rir.right};
    }
    FinalizeSample(ds, s);
    ds.samples.push_back(std::move(s));
  }
  return ds;
}

ModelConfig ModelConfigFor(const Dataset& dataset, ModelConfig base) {
  base.num_directions = dataset.config.local.num_directions;
  base.posenc = dataset.config.posenc;
  base.mode = dataset.config.mode;
  base.num_bins = dataset.num_bins();
  base.rir_length = dataset.config.mode == OutputMode::kRir
                        ? dataset.config.render.rir_length
                        : 0;
  return base;
}

std::vector<Pose> RandomPoses(const SceneLayout& scene, int count,
                              std::uint64_t seed, double min_source_distance) {
  if (count < 1) throw DomainError("pose count must be >= 1");
  std::mt19937_64 rng(seed);
  const Bounds& b = scene.bounds;
  std::uniform_real_distribution<double> ux(b.min.x, b.max.x);
  std::uniform_real_distribution<double> uy(b.min.y, b.max.y);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  std::vector<Pose> poses;
  poses.reserve(count);
  int attempts = 0;
  while (static_cast<int>(poses.size()) < count) {
    if (++attempts > 1000 * count) {
      throw DomainError("cannot place poses away from the source");
    }
    const Vec3 p{ux(rng), uy(rng), b.MidHeight()};
    const double a = angle(rng);
    if (Distance(p, scene.source) < min_source_distance) continue;
    poses.push_back({p, {std::cos(a), std::sin(a), 0.0}});
  }
  return poses;
}

AudioClip NoiseClip(double seconds, int sample_rate, std::uint64_t seed,
                    double stddev) {
  if (!(seconds > 0.0) || sample_rate <= 0)
    throw DomainError("bad clip length");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, stddev);
  const size_t n = static_cast<size_t>(std::lround(seconds * sample_rate));
  AudioClip clip;
  clip.sample_rate = sample_rate;
  clip.channels.assign(1, std::vector<double>(n));
  for (double& v : clip.channels.front()) v = noise(rng);
  return clip;
}

Split SplitIndices(size_t n, double test_fraction, std::uint64_t seed) {
  if (n == 0) throw DomainError("empty dataset");
  if (!(test_fraction >= 0.0 && test_fraction < 1.0)) {
    throw DomainError("test fraction must be in [0, 1)");
  }
  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), size_t{0});
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);
  size_t test = static_cast<size_t>(std::lround(test_fraction * n));
  if (n >= 2 && test_fraction > 0.0) test = std::clamp<size_t>(test, 1, n - 1);
  Split split;
  split.test.assign(order.begin(), order.begin() + test);
  split.train.assign(order.begin() + test, order.end());
  std::sort(split.test.begin(), split.test.end());
  std::sort(split.train.begin(), split.train.end());
  return split;
}

void SaveDataset(const Dataset& dataset, const std::filesystem::path& dir) {
  std::string blob;
  for (const Sample& s : dataset.samples) {
    AppendF32(s.input.local, blob);
    AppendF32(s.input.left, blob);
    AppendF32(s.input.right, blob);
    AppendF32(s.input.posenc, blob);
    if (dataset.config.mode == OutputMode::kMask) {
      AppendF32(s.target.left.data, blob);
      AppendF32(s.target.right.data, blob);
      AppendF32(s.target_audio.left, blob);
      AppendF32(s.target_audio.right, blob);
    } else {
      AppendF32(s.target_rir.left, blob);
      AppendF32(s.target_rir.right, blob);
    }
  }
  WriteTextFile(dir / "samples.f32", blob);
  WriteF32File(dir / "source.f32", dataset.source);

  std::vector<Pose> poses;
  for (const Sample& s : dataset.samples) poses.push_back(s.pose);
  const json meta = {
      {"format_version", kDatasetFormatVersion},
      {"num_samples", dataset.samples.size()},
      {"sample_rate", dataset.sample_rate},
      {"source_length", dataset.source.size()},
      {"F", dataset.num_bins()},
      {"W", dataset.num_frames()},
      {"G", dataset.config.local.num_directions},
      {"P", PosEncSize(dataset.config.posenc)},
      {"config", ConfigJson(dataset.config)},
      {"field",
       {{"tau", dataset.field_params.tau},
        {"d_floor", dataset.field_params.d_floor},
        {"grid_resolution", dataset.field_params.grid_resolution}}},
      {"scene", json::parse(SceneToJson(dataset.scene))},
      {"poses", json::parse(PosesToJson(poses))},
  };
  WriteTextFile(dir / "dataset.json", meta.dump(2));
}

Dataset LoadDataset(const std::filesystem::path& dir) {
  json meta;
  try {
    meta = json::parse(ReadTextFile(dir / "dataset.json"));
  } catch (const json::exception& e) {
    throw ParseError((dir / "dataset.json").string() + ": " + e.what());
  }
  Dataset ds;
  try {
    if (meta.at("format_version").get<int>() != kDatasetFormatVersion) {
      throw ParseError("unsupported dataset format version");
    }
    ds.config = ConfigFromJson(meta.at("config"));
    ds.sample_rate = meta.at("sample_rate").get<int>();
    ds.scene = ParseScene(meta.at("scene").dump());
    const json& f = meta.at("field");
    ds.field_params.tau = f.at("tau").get<double>();
    ds.field_params.d_floor = f.at("d_floor").get<double>();
    ds.field_params.grid_resolution = f.at("grid_resolution").get<double>();
    const std::vector<Pose> poses = ParsePoses(meta.at("poses").dump());
    ds.source = ReadF32File(dir / "source.f32");
    if (ds.source.size() != meta.at("source_length").get<size_t>()) {
      throw ParseError("source.f32 length disagrees with dataset.json");
    }
    const Spectrogram spec = Stft(ds.source, ds.config.stft);
    ds.source_magnitude = Magnitude(spec);
    ds.source_phase = Phase(spec);
    const int bins = ds.num_bins(), frames = ds.num_frames();
    if (bins != meta.at("F").get<int>() || frames != meta.at("W").get<int>()) {
      throw ParseError("spectrogram shape disagrees with dataset.json");
    }
    const size_t count = meta.at("num_samples").get<size_t>();
    if (poses.size() != count) throw ParseError("pose count mismatch");
    const size_t g = ds.config.local.num_directions;
    const size_t p = PosEncSize(ds.config.posenc);
    const size_t tf = static_cast<size_t>(bins) * frames;
    const size_t n = ds.source.size();
    const size_t t = ds.config.render.rir_length;

    Reader reader(ReadF32File(dir / "samples.f32"));
    for (size_t i = 0; i < count; ++i) {
      Sample s;
      s.pose = poses[i];
      s.input.local = reader.Take(g);
      s.input.left = reader.Take(g);
      s.input.right = reader.Take(g);
      s.input.posenc = reader.Take(p);
      if (ds.config.mode == OutputMode::kMask) {
        s.target.left = ToTf(reader.Take(tf), bins, frames);
        s.target.right = ToTf(reader.Take(tf), bins, frames);
        s.target_audio.left = reader.Take(n);
        s.target_audio.right = reader.Take(n);
      } else {
        s.target_rir.left = reader.Take(t);
        s.target_rir.right = reader.Take(t);
      }
      FinalizeSample(ds, s);
      ds.samples.push_back(std::move(s));
    }
    if (!reader.done()) throw ParseError("samples.f32 has trailing data");
  } catch (const json::exception& e) {
    throw ParseError((dir / "dataset.json").string() + ": " + e.what());
  }
  return ds;
}

}  // namespace soaf
