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

#include "soaf/renderer.h"

#include <gtest/gtest.h>

#include <cmath>

#include "soaf/error.h"
#include "soaf/occlusion.h"
#include "test_support.h"

namespace soaf {
namespace {

LocalFieldConfig SmallLocal() {
  LocalFieldConfig c;
  c.num_directions = 64;
  c.samples_per_ray = 4;
  return c;
}

AudioClip Noise(double seconds = 0.5) {
  AudioClip clip;
  clip.channels = {testing::GaussianNoise(
      static_cast<size_t>(seconds * kDefaultSampleRate), 3, 0.1)};
  return clip;
}

double Rms(const std::vector<double>& x) {
  double e = 0.0;
  for (double v : x) e += v * v;
  return std::sqrt(e / x.size());
}

TEST(RendererTest, ToyRirDelayRoundsHalfToEven) {
  // 3.43 m at 343 m/s and 22050 Hz is exactly 220.5 samples.
  const SceneLayout s = testing::OpenRoom(8, 4, 3, {0.5, 2.0, 1.5});
  const AnalyticRenderer r(GlobalField(s, DefaultFieldParams(s)), SmallLocal(),
                           RenderConfig{});
  const Pose pose{{3.93, 2.0, 1.5}, {1, 0, 0}};
  ASSERT_EQ(Distance(pose.position, s.source) / 343.0 * 22050.0, 220.5);
  const RirPair rir = r.ToyRir(pose);
  ASSERT_EQ(rir.left.size(), 8192u);
  for (int n = 0; n < 220; ++n) {
    EXPECT_EQ(rir.left[n], 0.0);
    EXPECT_EQ(rir.right[n], 0.0);
  }
  EXPECT_GT(rir.left[220] + rir.right[220], 0.0);
}

TEST(RendererTest, ToyRirAmplitudesAndTail) {
  const SceneLayout s = testing::LoadFixture("two_room.json");
  RenderConfig cfg;
  cfg.seed = 5;
  const AnalyticRenderer r(GlobalField(s, DefaultFieldParams(s)), SmallLocal(),
                           cfg);
  const Pose pose{{4.0, 1.0, 1.5}, {0, 1, 0}};
  const RirPair rir = r.ToyRir(pose);
  const double prior = r.field().Normalized(pose.position);
  const double pan = r.EstimatePan(pose).pan;
  const long delay = std::lrint(
      std::nearbyint(Distance(pose.position, s.source) / 343.0 * 22050.0));
  EXPECT_DOUBLE_EQ(rir.left[delay], prior * (1 + 0.5 * pan) / 2);
  EXPECT_DOUBLE_EQ(rir.right[delay], prior * (1 - 0.5 * pan) / 2);
  // Shared tail: the channel ratio is constant after the direct path.
  for (long n = delay + 1; n < delay + 50; ++n) {
    EXPECT_NEAR(rir.left[n] * rir.right[delay], rir.right[n] * rir.left[delay],
                1e-15);
  }
  // Seeded and deterministic.
  const RirPair again = r.ToyRir(pose);
  EXPECT_EQ(again.left, rir.left);
}

TEST(RendererTest, ToyRirTooShortThrows) {
  const SceneLayout s = testing::LoadFixture("two_room.json");
  RenderConfig cfg;
  cfg.rir_length = 64;
  const AnalyticRenderer r(GlobalField(s, DefaultFieldParams(s)), SmallLocal(),
                           cfg);
  EXPECT_THROW(r.ToyRir({{9.0, 4.5, 1.5}, {1, 0, 0}}), DomainError);
}

TEST(RendererTest, SymmetricPoseHasZeroPan) {
  // Room symmetric about y = 0, so reflected sample points are exact.
  SceneLayout s = testing::OpenRoom(6, 4, 3, {1.0, 0.0, 1.5});
  s.bounds.min.y = -2.0;
  s.bounds.max.y = 2.0;
  for (WallSegment& w : s.walls) {
    w.a.y -= 2.0;
    w.b.y -= 2.0;
  }
  const AnalyticRenderer r(GlobalField(s, DefaultFieldParams(s)), SmallLocal(),
                           RenderConfig{});
  const Pose pose{{4.0, 0.0, 1.5}, {-1, 0, 0}};
  const PanEstimate p = r.EstimatePan(pose);
  EXPECT_EQ(p.pan, 0.0);
  EXPECT_EQ(p.energy_left, p.energy_right);
  const RirPair rir = r.ToyRir(pose);
  EXPECT_EQ(rir.left, rir.right);
}

TEST(RendererTest, SourceOnTheLeftPansLeft) {
  const SceneLayout s = testing::OpenRoom(6, 4, 3, {3.0, 3.0, 1.5});
  const AnalyticRenderer r(GlobalField(s, DefaultFieldParams(s)), SmallLocal(),
                           RenderConfig{});
  // Gaze +x puts +y on the left.
  const PanEstimate p = r.EstimatePan({{3.0, 1.0, 1.5}, {1, 0, 0}});
  EXPECT_GT(p.pan, 0.0);
  EXPECT_LE(p.pan, 1.0);
  const MaskSet m = r.Masks({{3.0, 1.0, 1.5}, {1, 0, 0}}, 5, 3);
  EXPECT_NO_THROW(ValidateMasks(m));
  EXPECT_GT(m.diff_left.at(0, 0), 0.0);
  EXPECT_EQ(m.diff_right.at(4, 2), -m.diff_left.at(0, 0));
}

TEST(RendererTest, MirroredSceneSwapsChannelsExactly) {
  const SceneLayout s = testing::LoadFixture("two_room.json");
  const SceneLayout ms = testing::MirrorY(s);
  const AnalyticRenderer r(GlobalField(s, DefaultFieldParams(s)), SmallLocal(),
                           RenderConfig{});
  const AnalyticRenderer mr(GlobalField(ms, DefaultFieldParams(ms)),
                            SmallLocal(), RenderConfig{});
  const AudioClip src = Noise(0.25);
  for (Pose pose :
       {Pose{{7.5, 1.0, 1.5}, {1, 0, 0}}, Pose{{4.0, 3.7, 1.5}, {-1, 0, 0}}}) {
    const AudioClip a = r.Synthesize(src, pose, StftConfig{});
    const AudioClip b =
        mr.Synthesize(src, testing::MirrorY(pose), StftConfig{});
    EXPECT_EQ(a.channels[0], b.channels[1]);
    EXPECT_EQ(a.channels[1], b.channels[0]);
    EXPECT_EQ(r.EstimatePan(pose).pan,
              -mr.EstimatePan(testing::MirrorY(pose)).pan);
  }
}

TEST(RendererTest, OccludedReceiverIsQuieter) {
  const SceneLayout s = testing::LoadFixture("two_room.json");
  const AnalyticRenderer r(GlobalField(s, DefaultFieldParams(s)), SmallLocal(),
                           RenderConfig{});
  // Both 5 m from the source; one through the door, one behind the wall.
  const Pose open{{7.5, 2.5, 1.5}, {1, 0, 0}};
  const double dy = -2.4, dx = std::sqrt(25.0 - dy * dy);
  const Pose hidden{{2.5 + dx, 2.5 + dy, 1.5}, {1, 0, 0}};
  ASSERT_NEAR(Distance(hidden.position, s.source), 5.0, 1e-12);
  ASSERT_EQ(CountOcclusions(open.position, s.source, s), 0);
  ASSERT_EQ(CountOcclusions(hidden.position, s.source, s), 1);
  const MaskSet mo = r.Masks(open, 1, 1), mh = r.Masks(hidden, 1, 1);
  EXPECT_LT(mh.mixture.at(0, 0), mo.mixture.at(0, 0));
  const AudioClip src = Noise();
  const AudioClip ao = r.Synthesize(src, open, StftConfig{});
  const AudioClip ah = r.Synthesize(src, hidden, StftConfig{});
  EXPECT_LT(Rms(ah.channels[0]) + Rms(ah.channels[1]),
            Rms(ao.channels[0]) + Rms(ao.channels[1]));
}

TEST(RendererTest, SynthesisRejectsStereoSource) {
  const SceneLayout s = testing::LoadFixture("one_room.json");
  const AnalyticRenderer r(GlobalField(s, DefaultFieldParams(s)), SmallLocal(),
                           RenderConfig{});
  AudioClip stereo = Noise(0.1);
  stereo.channels.push_back(stereo.channels[0]);
  EXPECT_THROW(r.Synthesize(stereo, {{1, 1, 1}, {1, 0, 0}}, StftConfig{}),
               DomainError);
}

TEST(RendererTest, ConfigValidation) {
  RenderConfig c;
  c.pan_strength = 1.5;
  EXPECT_THROW(ValidateRenderConfig(c), ValidationError);
  c = {};
  c.rir_t60 = 0.0;
  EXPECT_THROW(ValidateRenderConfig(c), ValidationError);
}

}  // namespace
}  // namespace soaf
