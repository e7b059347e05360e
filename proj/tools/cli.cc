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

#include "cli.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "soaf/binary_io.h"
#include "soaf/checkpoint.h"
#include "soaf/dataset.h"
#include "soaf/dsp.h"
#include "soaf/error.h"
#include "soaf/global_field.h"
#include "soaf/local_field.h"
#include "soaf/metrics.h"
#include "soaf/model.h"
#include "soaf/renderer.h"
#include "soaf/scene.h"
#include "soaf/stft.h"
#include "soaf/train.h"
#include "soaf/wav.h"

#ifndef SOAF_VERSION
#define SOAF_VERSION "0.0.0"
#endif

namespace soaf::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

// Record written next to every output so a run can be repeated exactly.
struct Manifest {
  std::string command;
  std::vector<std::string> argv;
  std::uint64_t seed = 0;
  json config = json::object();
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
};

void WriteManifest(const Manifest& m, const fs::path& path) {
  const json j = {{"command", m.command},
                  {"argv", m.argv},
                  {"seed", m.seed},
                  {"config", m.config},
                  {"inputs", m.inputs},
                  {"outputs", m.outputs},
                  {"tool_version", ToolVersion()}};
  WriteTextFile(path, j.dump(2) + "\n");
}

fs::path ManifestPathFor(const fs::path& output) {
  return output.parent_path() / (output.stem().string() + ".manifest.json");
}

fs::path StemOf(const fs::path& path) {
  return path.parent_path() / path.stem();
}

std::string FormatNumber(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

json Vec3Json(Vec3 v) { return json::array({v.x, v.y, v.z}); }

json PoseJson(const Pose& p) {
  return {{"position", Vec3Json(p.position)}, {"gaze", Vec3Json(p.gaze)}};
}

json RenderJson(const RenderConfig& c) {
  return {{"base_gain", c.base_gain},
          {"pan_strength", c.pan_strength},
          {"rir_t60", c.rir_t60},
          {"rir_length", c.rir_length},
          {"speed_of_sound", c.speed_of_sound},
          {"tail_level", c.tail_level},
          {"seed", c.seed},
          {"sample_rate", c.sample_rate}};
}

json FieldJson(const FieldParams& p) {
  return {{"tau", p.tau},
          {"d_floor", p.d_floor},
          {"grid_resolution", p.grid_resolution}};
}

json TrainJson(const TrainConfig& t) {
  return {{"lr_start", t.lr_start},
          {"lr_end", t.lr_end},
          {"epochs", t.epochs},
          {"batch_size", t.batch_size},
          {"beta1", t.beta1},
          {"beta2", t.beta2},
          {"adam_epsilon", t.adam_epsilon},
          {"seed", t.seed}};
}

json ReportJson(const MetricReport& r) {
  auto v = [](const std::optional<double>& x) {
    return x ? json(*x) : json(nullptr);
  };
  return {{"mag", v(r.mag)},       {"mag_mixture", v(r.mag_mixture)},
          {"env", v(r.env)},       {"t60_pct", v(r.t60_pct)},
          {"c50_db", v(r.c50_db)}, {"edt_sec", v(r.edt_sec)},
          {"lre_db", v(r.lre_db)}};
}

Vec3 ToVec3(const std::vector<double>& v, const char* what) {
  if (v.size() != 3) {
    throw ValidationError(std::string(what) + " needs three components");
  }
  return {v[0], v[1], v[2]};
}

// Either --position/--gaze or --poses/--index.
struct PoseOptions {
  std::vector<double> position;
  std::vector<double> gaze{1.0, 0.0, 0.0};
  std::string poses_file;
  int index = 0;

  void Add(CLI::App* app) {
    auto* pos = app->add_option("--position", position, "Receiver x,y,z (m)")
                    ->delimiter(',')
                    ->expected(3);
    app->add_option("--gaze", gaze, "Unit gaze x,y,z")
        ->delimiter(',')
        ->expected(3);
    auto* file = app->add_option("--poses", poses_file, "Pose list JSON file");
    app->add_option("--index", index, "Entry of the pose list")
        ->check(CLI::NonNegativeNumber);
    pos->excludes(file);
  }

  Pose Resolve() const {
    Pose pose;
    if (!poses_file.empty()) {
      const std::vector<Pose> poses = LoadPoses(poses_file);
      if (index >= static_cast<int>(poses.size())) {
        throw ValidationError("pose index " + std::to_string(index) +
                              " out of range (" + std::to_string(poses.size()) +
                              " poses)");
      }
      pose = poses[index];
    } else if (!position.empty()) {
      pose.position = ToVec3(position, "--position");
      pose.gaze = ToVec3(gaze, "--gaze");
    } else {
      throw ValidationError("a pose is required (--position or --poses)");
    }
    ValidatePose(pose);
    return pose;
  }
};

struct Context {
  std::uint64_t seed = 0;
  std::vector<std::string> argv;
};

Manifest NewManifest(std::string command, const Context& ctx) {
  Manifest m;
  m.command = std::move(command);
  m.argv = ctx.argv;
  m.seed = ctx.seed;
  return m;
}

// --- scene validate -------------------------------------------------------

struct SceneValidateOptions {
  std::string scene;
};

int RunSceneValidate(const SceneValidateOptions& o, const Context& /*ctx*/,
                     std::ostream& out) {
  const SceneLayout scene = LoadScene(o.scene);
  const FieldParams params = DefaultFieldParams(scene);
  const GlobalField field(scene, params);
  const Bounds& b = scene.bounds;
  out << "scene: " << o.scene << "\n"
      << "walls: " << scene.walls.size() << "\n"
      << "bounds: [" << b.min.x << ", " << b.min.y << "] - [" << b.max.x << ", "
      << b.max.y << "], z [" << b.z_lo << ", " << b.z_hi << "]\n"
      << "source: [" << scene.source.x << ", " << scene.source.y << ", "
      << scene.source.z << "]\n"
      << "tau: " << scene.tau << "\n"
      << "n_max: " << field.max_occlusions() << "\n"
      << "E_max: " << field.e_max() << "\n"
      << "E_min: " << field.e_min() << "\n"
      << "status: valid\n";
  return kExitOk;
}

// --- field render ---------------------------------------------------------

struct FieldRenderOptions {
  std::string scene;
  std::string output;
  std::vector<double> taus;
  std::optional<double> resolution;
  std::optional<double> d_floor;
  bool dump = false;
};

int RunFieldRender(const FieldRenderOptions& o, const Context& ctx,
                   std::ostream& out) {
  const SceneLayout base = LoadScene(o.scene);
  const fs::path output(o.output);
  const bool sweep = o.taus.size() > 1;
  std::vector<double> taus = o.taus;
  if (taus.empty()) taus.push_back(base.tau);

  Manifest m = NewManifest("field render", ctx);
  m.inputs.push_back(o.scene);
  json runs = json::array();
  for (double tau : taus) {
    SceneLayout scene = base;
    scene.tau = tau;
    ValidateScene(scene);
    FieldParams params = DefaultFieldParams(scene);
    if (o.resolution) params.grid_resolution = *o.resolution;
    if (o.d_floor) params.d_floor = *o.d_floor;
    ValidateFieldParams(params);
    const FieldGrid grid = RasterizeField(scene, params);

    const fs::path stem =
        sweep ? fs::path(StemOf(output).string() + "_tau" + FormatNumber(tau))
              : StemOf(output);
    const fs::path image = sweep ? WithSuffix(stem, ".pgm") : output;
    ExportHeatmap(grid, image);
    m.outputs.push_back(image.string());
    if (o.dump) {
      WriteFieldGridDump(grid, stem);
      m.outputs.push_back(WithSuffix(stem, ".f32").string());
      m.outputs.push_back(WithSuffix(stem, ".json").string());
    }
    runs.push_back(FieldJson(params));
    out << "wrote " << image.string() << " (" << grid.width << "x"
        << grid.height << ", tau " << tau << ")\n";
  }
  m.config = {{"fields", runs}};
  WriteManifest(m, ManifestPathFor(output));
  return kExitOk;
}

// --- synth ----------------------------------------------------------------

struct SynthOptions {
  std::string scene;
  std::string source;
  std::string output;
  std::string mode = "analytic";
  std::string checkpoint;
  std::string masks;
  bool pcm16 = false;
  double base_gain = 1.0;
  double pan_strength = 0.5;
  PoseOptions pose;
};

int RunSynth(const SynthOptions& o, const Context& ctx, std::ostream& out) {
  if (o.mode != "analytic" && o.mode != "model") {
    throw ValidationError("--mode must be analytic or model");
  }
  if (o.mode == "model" && o.checkpoint.empty()) {
    throw ValidationError("--checkpoint is required in model mode");
  }
  const SceneLayout scene = LoadScene(o.scene);
  const Pose pose = o.pose.Resolve();
  if (!scene.bounds.Contains(pose.position)) {
    throw ValidationError("pose outside scene bounds");
  }
  const AudioClip src = ReadWav(o.source);
  if (src.num_channels() != 1) throw ValidationError("source must be mono");
  const GlobalField field(scene, DefaultFieldParams(scene));

  Manifest m = NewManifest("synth", ctx);
  m.inputs = {o.scene, o.source};
  AudioClip result;
  result.sample_rate = src.sample_rate;
  std::optional<MaskSet> masks;
  StftConfig stft;

  if (o.mode == "analytic") {
    RenderConfig render;
    render.base_gain = o.base_gain;
    render.pan_strength = o.pan_strength;
    render.sample_rate = src.sample_rate;
    render.seed = ctx.seed;
    const AnalyticRenderer renderer(field, LocalFieldConfig{}, render);
    const Spectrogram spec = Stft(src.channels.front(), stft);
    masks = renderer.Masks(pose, spec.num_bins, spec.num_frames);
    StereoSignal s = ApplyMasks(Magnitude(spec), Phase(spec), *masks, stft,
                                src.num_samples());
    result.channels = {std::move(s.left), std::move(s.right)};
    m.config = {{"mode", "analytic"},
                {"render", RenderJson(render)},
                {"field", FieldJson(field.params())}};
  } else {
    CheckpointInfo info;
    const MlpModel model = LoadCheckpoint(o.checkpoint, &info);
    m.inputs.push_back(o.checkpoint);
    const DatasetConfig data = info.data.value_or(DatasetConfig{});
    stft = data.stft;
    const SphereDirections dirs =
        FibonacciDirections(model.config().num_directions);
    LocalFieldConfig local = data.local;
    local.num_directions = model.config().num_directions;
    const ModelInput input =
        MakeModelInput(pose, field, dirs, local, model.config().posenc);
    const ModelOutput pred = Predict(model, input);
    if (model.config().mode == OutputMode::kMask) {
      const Spectrogram spec = Stft(src.channels.front(), stft);
      if (spec.num_bins != model.config().num_bins) {
        throw ValidationError("checkpoint expects " +
                              std::to_string(model.config().num_bins) +
                              " frequency bins");
      }
      masks = BroadcastMasks(pred, spec.num_frames);
      StereoSignal s = ApplyMasks(Magnitude(spec), Phase(spec), *masks, stft,
                                  src.num_samples());
      result.channels = {std::move(s.left), std::move(s.right)};
    } else {
      std::vector<double> l = ConvolveRir(src.channels.front(), pred.left);
      std::vector<double> r = ConvolveRir(src.channels.front(), pred.right);
      l.resize(src.num_samples());
      r.resize(src.num_samples());
      result.channels = {std::move(l), std::move(r)};
    }
    m.config = {{"mode", "model"},
                {"checkpoint", o.checkpoint},
                {"output_mode", OutputModeName(model.config().mode)},
                {"field", FieldJson(field.params())}};
  }
  m.config["pose"] = PoseJson(pose);

  WriteWav(result, o.output,
           o.pcm16 ? WavEncoding::kPcm16 : WavEncoding::kFloat32);
  m.outputs.push_back(o.output);
  if (!o.masks.empty()) {
    if (!masks) throw ValidationError("--masks needs a mask-mode synthesis");
    WriteMaskDump(*masks, stft, o.masks);
    m.outputs.push_back(WithSuffix(o.masks, ".f32").string());
  }
  WriteManifest(m, ManifestPathFor(o.output));
  out << "wrote " << o.output << " (" << result.num_samples() << " samples, "
      << result.sample_rate << " Hz)\n";
  return kExitOk;
}

// --- rir ------------------------------------------------------------------

struct RirOptions {
  std::string scene;
  std::string output;
  RenderConfig render;
  PoseOptions pose;
};

int RunRir(RirOptions o, const Context& ctx, std::ostream& out) {
  const SceneLayout scene = LoadScene(o.scene);
  const Pose pose = o.pose.Resolve();
  if (!scene.bounds.Contains(pose.position)) {
    throw ValidationError("pose outside scene bounds");
  }
  o.render.seed = ctx.seed;
  const AnalyticRenderer renderer(GlobalField(scene, DefaultFieldParams(scene)),
                                  LocalFieldConfig{}, o.render);
  const RirPair rir = renderer.ToyRir(pose);
  AudioClip clip;
  clip.sample_rate = o.render.sample_rate;
  clip.channels = {rir.left, rir.right};
  WriteWav(clip, o.output, WavEncoding::kFloat32);
  Manifest m = NewManifest("rir", ctx);
  m.inputs = {o.scene};
  m.outputs = {o.output};
  m.config = {{"render", RenderJson(o.render)}, {"pose", PoseJson(pose)}};
  WriteManifest(m, ManifestPathFor(o.output));
  out << "wrote " << o.output << " (" << rir.left.size() << " samples)\n";
  return kExitOk;
}

// --- dataset --------------------------------------------------------------

struct DatasetOptions {
  std::string scene;
  std::string output;
  std::string poses;
  int random = 0;
  std::string source;
  double noise_seconds = 0.25;
  std::string mode = "mask";
  DatasetConfig config;
};

int RunDataset(DatasetOptions o, const Context& ctx, std::ostream& out) {
  const SceneLayout scene = LoadScene(o.scene);
  if (o.poses.empty() == (o.random == 0)) {
    throw ValidationError("give exactly one of --poses or --random");
  }
  const std::vector<Pose> poses = o.poses.empty()
                                      ? RandomPoses(scene, o.random, ctx.seed)
                                      : LoadPoses(o.poses);
  if (poses.empty()) throw ValidationError("empty pose list");
  o.config.mode = ParseOutputMode(o.mode);
  o.config.render.seed = ctx.seed;
  const AudioClip src =
      o.source.empty() ? NoiseClip(o.noise_seconds, o.config.render.sample_rate,
                                   ctx.seed + 1)
                       : ReadWav(o.source);
  o.config.render.sample_rate = src.sample_rate;
  const GlobalField field(scene, DefaultFieldParams(scene));
  const Dataset ds = MakeDataset(field, poses, src, o.config);
  SaveDataset(ds, o.output);

  Manifest m = NewManifest("dataset", ctx);
  m.inputs = {o.scene};
  if (!o.poses.empty()) m.inputs.push_back(o.poses);
  if (!o.source.empty()) m.inputs.push_back(o.source);
  m.outputs = {(fs::path(o.output) / "dataset.json").string(),
               (fs::path(o.output) / "samples.f32").string(),
               (fs::path(o.output) / "source.f32").string()};
  m.config = json::parse(DatasetConfigToJson(o.config));
  m.config["field"] = FieldJson(field.params());
  WriteManifest(m, fs::path(o.output) / "manifest.json");
  out << "wrote " << ds.samples.size() << " samples to " << o.output << " (F "
      << ds.num_bins() << ", W " << ds.num_frames() << ", mode " << o.mode
      << ")\n";
  return kExitOk;
}

// --- train ----------------------------------------------------------------

struct SplitOptions {
  std::uint64_t split_seed = 0;
  double test_fraction = 0.1;

  void Add(CLI::App* app) {
    app->add_option("--split-seed", split_seed, "Seed of the train/test split");
    app->add_option("--test-fraction", test_fraction, "Held-out fraction")
        ->check(CLI::Range(0.0, 0.99));
  }
};

struct TrainOptions {
  std::string dataset;
  std::string output;
  TrainConfig train;
  SplitOptions split;
  std::vector<int> hidden{256, 256};
  bool no_acoustic_features = false;
  bool verbose = false;
};

int RunTrain(TrainOptions o, const Context& ctx, std::ostream& out) {
  const Dataset ds = LoadDataset(o.dataset);
  o.train.seed = ctx.seed;
  ValidateTrainConfig(o.train);
  const Split split = SplitIndices(ds.samples.size(), o.split.test_fraction,
                                   o.split.split_seed);
  ModelConfig base;
  base.hidden = o.hidden;
  base.acoustic_features = !o.no_acoustic_features;
  MlpModel model(ModelConfigFor(ds, base));
  model.InitializeRandom(ctx.seed);
  const std::vector<EpochStats> trace =
      Train(model, ds, split.train, o.train, [&](const EpochStats& e) {
        if (o.verbose) {
          out << "epoch " << e.epoch << " lr " << e.lr << " loss "
              << e.mean_loss << "\n";
        }
      });
  const fs::path stem = o.output;
  SaveCheckpoint(model, {ctx.seed, o.train, ds.config}, stem);
  const fs::path loss_csv = stem.string() + "_loss.csv";
  WriteTextFile(loss_csv, LossTraceCsv(trace));

  Manifest m = NewManifest("train", ctx);
  m.inputs = {o.dataset};
  m.outputs = {WithSuffix(stem, ".f32").string(),
               WithSuffix(stem, ".json").string(), loss_csv.string()};
  m.config = {{"train", TrainJson(o.train)},
              {"hidden", o.hidden},
              {"acoustic_features", !o.no_acoustic_features},
              {"split_seed", o.split.split_seed},
              {"test_fraction", o.split.test_fraction},
              {"train_samples", split.train.size()}};
  WriteManifest(m, ManifestPathFor(WithSuffix(stem, ".json")));
  out << "trained " << trace.size() << " epochs on " << split.train.size()
      << " samples: loss " << trace.front().mean_loss << " -> "
      << trace.back().mean_loss << ", final lr " << trace.back().lr << "\n";
  return kExitOk;
}

// --- eval -----------------------------------------------------------------

struct EvalOptions {
  std::string dataset;
  std::string checkpoint;
  std::string output;
  std::string csv;
  SplitOptions split;
  bool all = false;
};

int RunEval(const EvalOptions& o, const Context& ctx, std::ostream& out) {
  const Dataset ds = LoadDataset(o.dataset);
  const MlpModel model = LoadCheckpoint(o.checkpoint);
  if (model.config().mode != ds.config.mode) {
    throw ValidationError("checkpoint and dataset output modes differ");
  }
  if (model.config().output_width() != ModelConfigFor(ds).output_width() ||
      model.config().num_directions != ds.config.local.num_directions) {
    throw ValidationError("checkpoint dimensions do not match the dataset");
  }
  std::vector<size_t> indices;
  if (o.all) {
    for (size_t i = 0; i < ds.samples.size(); ++i) indices.push_back(i);
  } else {
    indices = SplitIndices(ds.samples.size(), o.split.test_fraction,
                           o.split.split_seed)
                  .test;
  }
  if (indices.empty()) throw ValidationError("no samples to evaluate");
  const std::vector<NamedReport> reports = Evaluate(model, ds, indices);
  WriteTextFile(o.output, MetricReportJson(reports) + "\n");
  Manifest m = NewManifest("eval", ctx);
  m.inputs = {o.dataset, o.checkpoint};
  m.outputs = {o.output};
  if (!o.csv.empty()) {
    WriteTextFile(o.csv, MetricReportCsv(reports));
    m.outputs.push_back(o.csv);
  }
  m.config = {{"split_seed", o.split.split_seed},
              {"test_fraction", o.split.test_fraction},
              {"all", o.all},
              {"clips", indices.size()}};
  WriteManifest(m, ManifestPathFor(o.output));
  std::vector<MetricReport> plain;
  for (const auto& r : reports) plain.push_back(r.second);
  out << "evaluated " << indices.size()
      << " clips: " << ReportJson(MeanReport(plain)).dump() << "\n";
  return kExitOk;
}

// --- model init -----------------------------------------------------------

struct ModelInitOptions {
  std::string output;
  std::string dataset;
  bool zero = false;
  std::string mode = "mask";
  int directions = 1024;
  int bins = 257;
  int rir_length = 8192;
  std::vector<int> hidden{256, 256};
};

int RunModelInit(const ModelInitOptions& o, const Context& ctx,
                 std::ostream& out) {
  ModelConfig config;
  config.hidden = o.hidden;
  DatasetConfig data;
  if (!o.dataset.empty()) {
    const Dataset ds = LoadDataset(o.dataset);
    config = ModelConfigFor(ds, config);
    data = ds.config;
  } else {
    config.mode = ParseOutputMode(o.mode);
    config.num_directions = o.directions;
    config.num_bins = o.bins;
    config.rir_length = config.mode == OutputMode::kRir ? o.rir_length : 0;
    data.mode = config.mode;
    data.local.num_directions = o.directions;
    data.render.rir_length = o.rir_length;
  }
  MlpModel model(config);
  if (!o.zero) model.InitializeRandom(ctx.seed);
  SaveCheckpoint(model, {ctx.seed, std::nullopt, data}, o.output);
  Manifest m = NewManifest("model init", ctx);
  if (!o.dataset.empty()) m.inputs = {o.dataset};
  m.outputs = {WithSuffix(o.output, ".f32").string(),
               WithSuffix(o.output, ".json").string()};
  m.config = {{"zero", o.zero}, {"hidden", o.hidden}};
  WriteManifest(m, ManifestPathFor(WithSuffix(o.output, ".json")));
  out << "wrote " << (o.zero ? "zero" : "random") << " checkpoint " << o.output
      << " (" << model.num_parameters() << " parameters)\n";
  return kExitOk;
}

}  // namespace

const char* ToolVersion() { return SOAF_VERSION; }

int Run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err) {
  CLI::App app{
      "Scene-occlusion-aware acoustic fields: priors, synthesis, "
      "training and evaluation"};
  app.set_version_flag("--version", std::string(ToolVersion()));
  app.require_subcommand(1);
  app.fallthrough();
  std::uint64_t seed = 0;
  app.add_option("--seed", seed, "Random seed for all stochastic steps")
      ->envname("SOAF_SEED");

  // scene validate
  auto* scene_cmd = app.add_subcommand("scene", "Scene utilities");
  scene_cmd->require_subcommand(1);
  SceneValidateOptions scene_validate;
  auto* scene_validate_cmd =
      scene_cmd->add_subcommand("validate", "Load and check a scene file");
  scene_validate_cmd->add_option("scene", scene_validate.scene, "Scene JSON")
      ->required();

  // field render
  auto* field_cmd = app.add_subcommand("field", "Global field utilities");
  field_cmd->require_subcommand(1);
  FieldRenderOptions field_render;
  auto* field_render_cmd = field_cmd->add_subcommand(
      "render", "Rasterize the prior to a PGM heatmap");
  field_render_cmd->add_option("scene", field_render.scene, "Scene JSON")
      ->required();
  field_render_cmd
      ->add_option("-o,--output", field_render.output, "Output .pgm")
      ->required();
  field_render_cmd
      ->add_option("--tau", field_render.taus,
                   "Transmission override; several values render a sweep")
      ->delimiter(',');
  field_render_cmd->add_option("--res", field_render.resolution,
                               "Cells per meter");
  field_render_cmd->add_option("--d-floor", field_render.d_floor,
                               "Distance clamp near the source (m)");
  field_render_cmd->add_flag(
      "--dump", field_render.dump,
      "Also write the float32 grid and its JSON sidecar");

  // synth
  SynthOptions synth;
  auto* synth_cmd = app.add_subcommand("synth", "Render binaural audio");
  synth_cmd->add_option("scene", synth.scene, "Scene JSON")->required();
  synth_cmd->add_option("--source", synth.source, "Mono source WAV")
      ->required();
  synth_cmd->add_option("-o,--output", synth.output, "Output stereo WAV")
      ->required();
  synth_cmd->add_option("--mode", synth.mode, "analytic or model");
  synth_cmd->add_option("--checkpoint", synth.checkpoint, "Checkpoint stem");
  synth_cmd->add_option("--masks", synth.masks, "Also dump masks to this stem");
  synth_cmd->add_flag("--pcm16", synth.pcm16,
                      "Write 16-bit PCM instead of float");
  synth_cmd->add_option("--base-gain", synth.base_gain,
                        "Analytic mixture gain");
  synth_cmd->add_option("--pan-strength", synth.pan_strength,
                        "Analytic pan strength in [0, 1]");
  synth.pose.Add(synth_cmd);

  // rir
  RirOptions rir;
  auto* rir_cmd = app.add_subcommand("rir", "Generate a toy binaural RIR");
  rir_cmd->add_option("scene", rir.scene, "Scene JSON")->required();
  rir_cmd->add_option("-o,--output", rir.output, "Output stereo WAV")
      ->required();
  rir_cmd->add_option("--t60", rir.render.rir_t60, "Tail T60 (s)");
  rir_cmd->add_option("--length", rir.render.rir_length, "Length in samples");
  rir_cmd->add_option("--sample-rate", rir.render.sample_rate,
                      "Sample rate (Hz)");
  rir_cmd->add_option("--tail-level", rir.render.tail_level, "Tail level");
  rir_cmd->add_option("--pan-strength", rir.render.pan_strength,
                      "Pan strength");
  rir.pose.Add(rir_cmd);

  // dataset
  DatasetOptions dataset;
  auto* dataset_cmd = app.add_subcommand("dataset", "Build a training set");
  dataset_cmd->add_option("scene", dataset.scene, "Scene JSON")->required();
  dataset_cmd->add_option("-o,--output", dataset.output, "Output directory")
      ->required();
  dataset_cmd->add_option("--poses", dataset.poses, "Pose list JSON");
  dataset_cmd->add_option("--random", dataset.random, "Number of random poses")
      ->check(CLI::NonNegativeNumber);
  dataset_cmd->add_option("--source", dataset.source, "Mono source WAV");
  dataset_cmd->add_option("--noise-seconds", dataset.noise_seconds,
                          "Length of the generated noise source");
  dataset_cmd->add_option("--mode", dataset.mode, "mask or rir");
  dataset_cmd->add_option("--t60", dataset.config.render.rir_t60,
                          "Toy RIR T60 (s)");
  dataset_cmd->add_option("--rir-length", dataset.config.render.rir_length,
                          "Toy RIR length in samples");
  dataset_cmd->add_option("--directions", dataset.config.local.num_directions,
                          "Fibonacci directions G");
  dataset_cmd->add_option("--samples-per-ray",
                          dataset.config.local.samples_per_ray,
                          "Ray samples H");

  // train
  TrainOptions train;
  auto* train_cmd = app.add_subcommand("train", "Train the mask network");
  train_cmd->add_option("dataset", train.dataset, "Dataset directory")
      ->required();
  train_cmd->add_option("-o,--output", train.output, "Checkpoint stem")
      ->required();
  train_cmd->add_option("--epochs", train.train.epochs, "Epochs");
  train_cmd->add_option("--batch", train.train.batch_size, "Batch size");
  train_cmd->add_option("--lr-start", train.train.lr_start,
                        "Initial learning rate");
  train_cmd->add_option("--lr-end", train.train.lr_end, "Final learning rate");
  train_cmd->add_option("--hidden", train.hidden, "Trunk widths")
      ->delimiter(',');
  train_cmd->add_flag("--no-acoustic-features", train.no_acoustic_features,
                      "Replace acoustic and attended features by zeros");
  train_cmd->add_flag("-v,--verbose", train.verbose, "Print per-epoch loss");
  train.split.Add(train_cmd);

  // eval
  EvalOptions eval;
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a checkpoint");
  eval_cmd->add_option("dataset", eval.dataset, "Dataset directory")
      ->required();
  eval_cmd->add_option("--checkpoint", eval.checkpoint, "Checkpoint stem")
      ->required();
  eval_cmd->add_option("-o,--output", eval.output, "Report JSON")->required();
  eval_cmd->add_option("--csv", eval.csv, "Also write a CSV report");
  eval_cmd->add_flag("--all", eval.all,
                     "Evaluate every sample, not the test split");
  eval.split.Add(eval_cmd);

  // model init
  auto* model_cmd = app.add_subcommand("model", "Checkpoint utilities");
  model_cmd->require_subcommand(1);
  ModelInitOptions model_init;
  auto* model_init_cmd =
      model_cmd->add_subcommand("init", "Write an untrained checkpoint");
  model_init_cmd
      ->add_option("-o,--output", model_init.output, "Checkpoint stem")
      ->required();
  model_init_cmd->add_option("--dataset", model_init.dataset,
                             "Take dimensions from this dataset");
  model_init_cmd->add_flag("--zero", model_init.zero, "All parameters zero");
  model_init_cmd->add_option("--mode", model_init.mode, "mask or rir");
  model_init_cmd->add_option("--directions", model_init.directions, "G");
  model_init_cmd->add_option("--bins", model_init.bins, "F");
  model_init_cmd->add_option("--rir-length", model_init.rir_length, "T");
  model_init_cmd->add_option("--hidden", model_init.hidden, "Trunk widths")
      ->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::CallForVersion& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  const Context ctx{seed, std::vector<std::string>(argv, argv + argc)};
  try {
    if (scene_validate_cmd->parsed())
      return RunSceneValidate(scene_validate, ctx, out);
    if (field_render_cmd->parsed())
      return RunFieldRender(field_render, ctx, out);
    if (synth_cmd->parsed()) return RunSynth(synth, ctx, out);
    if (rir_cmd->parsed()) return RunRir(rir, ctx, out);
    if (dataset_cmd->parsed()) return RunDataset(dataset, ctx, out);
    if (train_cmd->parsed()) return RunTrain(train, ctx, out);
    if (eval_cmd->parsed()) return RunEval(eval, ctx, out);
    if (model_init_cmd->parsed()) return RunModelInit(model_init, ctx, out);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  err << "error: no command given\n";
  return kExitUsage;
}

}  // namespace soaf::cli
