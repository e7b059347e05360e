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

#include <gtest/gtest.h>

#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "soaf/binary_io.h"
#include "soaf/checkpoint.h"
#include "soaf/scene.h"
#include "soaf/wav.h"
#include "test_support.h"

namespace soaf {
namespace {

using testing::FixturePath;

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result RunCli(std::vector<std::string> args) {
  args.insert(args.begin(), "soaf");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code =
      cli::Run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string Fixture(const std::string& name) {
  return FixturePath(name).string();
}

std::string Slurp(const std::filesystem::path& p) { return ReadTextFile(p); }

class CliTest : public ::testing::Test {
 protected:
  testing::TempDir dir_{"cli"};
  std::string Out(const std::string& name) { return (dir_ / name).string(); }

  void WriteNoise(const std::string& name, double seconds) {
    AudioClip clip;
    clip.channels = {testing::GaussianNoise(
        static_cast<size_t>(seconds * kDefaultSampleRate), 1, 0.1)};
    WriteWav(clip, dir_ / name);
  }
};

TEST_F(CliTest, SceneValidateReportsStatistics) {
  const Result r = RunCli({"scene", "validate", Fixture("two_room.json")});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("walls: 7"), std::string::npos);
  EXPECT_NE(r.out.find("n_max: 1"), std::string::npos);
  EXPECT_NE(r.out.find("status: valid"), std::string::npos);
}

TEST_F(CliTest, BadTauIsUsageError) {
  const Result r = RunCli({"scene", "validate", Fixture("bad_tau.json")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("tau"), std::string::npos);
}

TEST_F(CliTest, MissingFileIsUsageError) {
  const Result r = RunCli({"scene", "validate", Out("nope.json")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("no such file"), std::string::npos);
}

TEST_F(CliTest, UnknownCommandAndMissingArgs) {
  EXPECT_EQ(RunCli({"frobnicate"}).code, 2);
  EXPECT_EQ(RunCli({}).code, 2);
  EXPECT_EQ(RunCli({"field", "render", Fixture("two_room.json")}).code, 2);
  EXPECT_EQ(RunCli({"--help"}).code, 0);
  const Result v = RunCli({"--version"});
  EXPECT_EQ(v.code, 0);
  EXPECT_NE(v.out.find(cli::ToolVersion()), std::string::npos);
}

TEST_F(CliTest, FieldRenderIsDeterministic) {
  const Result a =
      RunCli({"field", "render", Fixture("two_room.json"), "-o", Out("a.pgm")});
  const Result b =
      RunCli({"field", "render", Fixture("two_room.json"), "-o", Out("b.pgm")});
  ASSERT_EQ(a.code, 0) << a.err;
  ASSERT_EQ(b.code, 0) << b.err;
  const std::string pgm = Slurp(dir_ / "a.pgm");
  EXPECT_EQ(pgm, Slurp(dir_ / "b.pgm"));
  EXPECT_EQ(pgm.substr(0, 13), "P5\n100 50\n255");
  const auto manifest = nlohmann::json::parse(Slurp(dir_ / "a.manifest.json"));
  EXPECT_EQ(manifest["command"], "field render");
  EXPECT_EQ(manifest["config"]["fields"][0]["tau"], 0.25);
}

TEST_F(CliTest, FieldRenderSweepAndDump) {
  const Result r =
      RunCli({"field", "render", Fixture("two_room.json"), "-o", Out("s.pgm"),
              "--tau", "1,0.5", "--res", "4", "--dump"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(std::filesystem::exists(dir_ / "s_tau1.pgm"));
  EXPECT_TRUE(std::filesystem::exists(dir_ / "s_tau0.5.pgm"));
  EXPECT_EQ(ReadF32File(dir_ / "s_tau1.f32").size(), 40u * 20u);
}

TEST_F(CliTest, InvalidResolutionIsUsageError) {
  const Result r = RunCli({"field", "render", Fixture("two_room.json"), "-o",
                           Out("x.pgm"), "--res", "0"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("grid_resolution"), std::string::npos);
}

TEST_F(CliTest, AnalyticSynthesisWritesStereo) {
  WriteNoise("src.wav", 0.2);
  const Result r =
      RunCli({"synth", Fixture("two_room.json"), "--source", Out("src.wav"),
              "-o", Out("out.wav"), "--position", "7.5,1,1.5", "--gaze",
              "1,0,0", "--masks", Out("m"), "--pcm16"});
  ASSERT_EQ(r.code, 0) << r.err;
  const AudioClip out = ReadWav(dir_ / "out.wav");
  EXPECT_EQ(out.num_channels(), 2);
  EXPECT_EQ(out.num_samples(), static_cast<size_t>(0.2 * kDefaultSampleRate));
  EXPECT_TRUE(std::filesystem::exists(dir_ / "m.json"));
  EXPECT_TRUE(std::filesystem::exists(dir_ / "out.manifest.json"));
}

TEST_F(CliTest, SynthRejectsPoseOutsideScene) {
  WriteNoise("src.wav", 0.1);
  const Result r = RunCli({"synth", Fixture("two_room.json"), "--source",
                           Out("src.wav"), "-o", Out("out.wav"), "--position",
                           "20,1,1.5", "--gaze", "1,0,0"});
  EXPECT_EQ(r.code, 2);
}

TEST_F(CliTest, ZeroCheckpointSynthesisIsDeterministic) {
  WriteNoise("src.wav", 0.2);
  ASSERT_EQ(RunCli({"model", "init", "-o", Out("zero"), "--zero",
                    "--directions", "64", "--hidden", "16,16"})
                .code,
            0);
  const MlpModel m = LoadCheckpoint(dir_ / "zero");
  for (double p : m.parameters()) ASSERT_EQ(p, 0.0);
  std::vector<std::string> args{"synth",        Fixture("two_room.json"),
                                "--source",     Out("src.wav"),
                                "--mode",       "model",
                                "--checkpoint", Out("zero"),
                                "--poses",      Fixture("two_room_poses.json"),
                                "--index",      "1",
                                "-o",           Out("a.wav")};
  const Result a = RunCli(args);
  ASSERT_EQ(a.code, 0) << a.err;
  args.back() = Out("b.wav");
  ASSERT_EQ(RunCli(args).code, 0);
  EXPECT_EQ(Slurp(dir_ / "a.wav"), Slurp(dir_ / "b.wav"));
  // Zero weights give m_m = ln 2 and no difference mask: equal channels.
  const AudioClip out = ReadWav(dir_ / "a.wav");
  EXPECT_EQ(out.channels[0], out.channels[1]);
}

TEST_F(CliTest, RirCommand) {
  const Result r =
      RunCli({"rir", Fixture("two_room.json"), "-o", Out("rir.wav"),
              "--position", "4,1,1.5", "--gaze", "0,1,0", "--length", "4096"});
  ASSERT_EQ(r.code, 0) << r.err;
  const AudioClip rir = ReadWav(dir_ / "rir.wav");
  EXPECT_EQ(rir.num_samples(), 4096u);
  EXPECT_EQ(
      RunCli({"rir", Fixture("two_room.json"), "-o", Out("r2.wav"),
              "--position", "9,4.5,1.5", "--gaze", "0,1,0", "--length", "16"})
          .code,
      2);
}

TEST_F(CliTest, DatasetTrainEvalPipeline) {
  const std::string ds = Out("ds");
  Result r = RunCli({"dataset", Fixture("two_room.json"), "-o", ds, "--random",
                     "12", "--noise-seconds", "0.1", "--directions", "32",
                     "--samples-per-ray", "3", "--seed", "4"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(std::filesystem::exists(dir_ / "ds" / "manifest.json"));

  r = RunCli({"train", ds, "-o", Out("m"), "--epochs", "3", "--batch", "4",
              "--hidden", "16,16", "--seed", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  const std::string trace = Slurp(dir_ / "m_loss.csv");
  EXPECT_EQ(trace.substr(0, 19), "epoch,lr,mean_loss\n");
  EXPECT_EQ(std::count(trace.begin(), trace.end(), '\n'), 4);
  const auto manifest = nlohmann::json::parse(Slurp(dir_ / "m.manifest.json"));
  EXPECT_EQ(manifest["seed"], 2);
  EXPECT_EQ(manifest["config"]["train_samples"], 11);

  r = RunCli({"eval", ds, "--checkpoint", Out("m"), "-o", Out("report.json"),
              "--csv", Out("report.csv"), "--all"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto report = nlohmann::json::parse(Slurp(dir_ / "report.json"));
  EXPECT_EQ(report["clips"].size(), 12u);
  EXPECT_TRUE(report["mean"]["mag"].is_number());
  EXPECT_TRUE(std::filesystem::exists(dir_ / "report.csv"));
}

TEST_F(CliTest, SeedFromEnvironment) {
  const std::string ds = Out("ds");
  setenv("SOAF_SEED", "17", 1);
  const Result r = RunCli({"dataset", Fixture("two_room.json"), "-o", ds,
                           "--random", "2", "--noise-seconds", "0.05",
                           "--directions", "8", "--samples-per-ray", "2"});
  unsetenv("SOAF_SEED");
  ASSERT_EQ(r.code, 0) << r.err;
  const auto manifest =
      nlohmann::json::parse(Slurp(dir_ / "ds" / "manifest.json"));
  EXPECT_EQ(manifest["seed"], 17);
}

TEST_F(CliTest, EvalIsReproducible) {
  const std::string ds = Out("ds");
  ASSERT_EQ(RunCli({"dataset", Fixture("two_room.json"), "-o", ds, "--random",
                    "4", "--noise-seconds", "0.05", "--directions", "8",
                    "--samples-per-ray", "2"})
                .code,
            0);
  ASSERT_EQ(RunCli({"model", "init", "-o", Out("m"), "--dataset", ds,
                    "--hidden", "8"})
                .code,
            0);
  ASSERT_EQ(RunCli({"eval", ds, "--checkpoint", Out("m"), "-o", Out("a.json"),
                    "--all"})
                .code,
            0);
  ASSERT_EQ(RunCli({"eval", ds, "--checkpoint", Out("m"), "-o", Out("b.json"),
                    "--all"})
                .code,
            0);
  EXPECT_EQ(Slurp(dir_ / "a.json"), Slurp(dir_ / "b.json"));
}

TEST_F(CliTest, EvalRejectsMismatchedCheckpoint) {
  const std::string ds = Out("ds");
  ASSERT_EQ(RunCli({"dataset", Fixture("two_room.json"), "-o", ds, "--random",
                    "3", "--noise-seconds", "0.05", "--directions", "8",
                    "--samples-per-ray", "2"})
                .code,
            0);
  ASSERT_EQ(RunCli({"model", "init", "-o", Out("m"), "--directions", "16",
                    "--hidden", "8"})
                .code,
            0);
  EXPECT_EQ(
      RunCli({"eval", ds, "--checkpoint", Out("m"), "-o", Out("r.json")}).code,
      2);
}

}  // namespace
}  // namespace soaf
