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

#include "soaf/model.h"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "soaf/error.h"
#include "soaf/loss.h"
#include "soaf/posenc.h"
#include "test_support.h"

namespace soaf {
namespace {

using Eigen::MatrixXd;

ModelConfig TinyConfig(OutputMode mode = OutputMode::kMask) {
  ModelConfig c;
  c.num_directions = 16;
  c.num_bins = 9;
  c.rir_length = 12;
  c.mode = mode;
  c.acoustic_width = 5;
  c.channel_width = 4;
  c.hidden = {6, 5};
  c.posenc.num_frequencies = 2;
  return c;
}

ModelInput RandomInput(const ModelConfig& c, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  ModelInput in;
  in.local.resize(c.num_directions);
  in.left.resize(c.num_directions);
  in.right.resize(c.num_directions);
  for (int g = 0; g < c.num_directions; ++g) {
    in.local[g] = u(rng);
    const double a = 2.0 * u(rng) - 1.0;
    in.left[g] = in.local[g] * a;
    in.right[g] = -in.left[g];
  }
  in.posenc =
      PositionalEncoding({u(rng) * 2 - 1, u(rng) * 2 - 1, 0.1}, c.posenc);
  in.extra.resize(c.extra_width);
  for (double& v : in.extra) v = u(rng);
  return in;
}

// Randomizes every parameter, biases included, so that no unit sits at a
// ReLU kink.
void RandomizeAll(MlpModel& m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  for (double& p : m.parameters()) p = u(rng);
}

// Scalar reference forward pass written with explicit loops.
struct Dense {
  const MlpModel& m;
  int layer;
  std::vector<double> operator()(const std::vector<double>& x) const {
    const LayerShape& s = m.layers()[layer];
    const auto p = m.parameters();
    std::vector<double> y(s.out);
    for (int o = 0; o < s.out; ++o) {
      double acc = p[s.offset + static_cast<size_t>(s.out) * s.in + o];
      for (int i = 0; i < s.in; ++i) {
        acc += p[s.offset + static_cast<size_t>(i) * s.out + o] * x[i];
      }
      y[o] = acc;
    }
    return y;
  }
};

std::vector<double> ReluOf(std::vector<double> v) {
  for (double& x : v) x = std::max(x, 0.0);
  return v;
}

ModelOutput ReferenceForward(const MlpModel& m, const ModelInput& in) {
  const ModelConfig& c = m.config();
  std::vector<double> h = ReluOf(Dense{m, m.acoustic_layer()}(in.local));
  h.insert(h.end(), in.posenc.begin(), in.posenc.end());
  h.insert(h.end(), in.extra.begin(), in.extra.end());
  for (int i = 0; i < m.num_trunk_layers(); ++i) {
    h = ReluOf(Dense{m, m.trunk_layer(i)}(h));
  }
  ModelOutput out;
  if (c.mode == OutputMode::kMask) {
    out.mixture = Dense{m, m.mixture_layer()}(h);
    for (double& v : out.mixture) v = std::log1p(std::exp(v));
  }
  for (int e = 0; e < 2; ++e) {
    std::vector<double> f = h;
    const std::vector<double> ch =
        ReluOf(Dense{m, m.channel_layer()}(e == 0 ? in.left : in.right));
    f.insert(f.end(), ch.begin(), ch.end());
    std::vector<double> y = Dense{m, m.diff_layer()}(f);
    if (c.mode == OutputMode::kMask) {
      for (double& v : y) v = std::tanh(v);
    }
    (e == 0 ? out.left : out.right) = y;
  }
  return out;
}

TEST(PosEncTest, LayoutAndSize) {
  PosEncConfig c;
  c.num_frequencies = 3;
  EXPECT_EQ(PosEncSize(c), 21);
  const Vec3 p{0.25, -0.5, 0.125};
  const std::vector<double> e = PositionalEncoding(p, c);
  ASSERT_EQ(e.size(), 21u);
  EXPECT_EQ(e[0], 0.25);
  EXPECT_EQ(e[1], -0.5);
  for (int k = 0; k < 3; ++k) {
    const double s = std::ldexp(std::numbers::pi, k);
    EXPECT_DOUBLE_EQ(e[3 + 6 * k + 1], std::sin(s * -0.5));
    EXPECT_DOUBLE_EQ(e[3 + 6 * k + 5], std::cos(s * 0.125));
  }
  c.include_input = false;
  EXPECT_EQ(PosEncSize(c), 18);
  c.num_frequencies = 0;
  EXPECT_THROW(ValidatePosEncConfig(c), ValidationError);
}

TEST(PosEncTest, NormalizeToBounds) {
  const Bounds b{{0, 0}, {10, 5}, 0, 3};
  const Vec3 lo = NormalizeToBounds({0, 0, 0}, b);
  const Vec3 hi = NormalizeToBounds({10, 5, 3}, b);
  const Vec3 mid = NormalizeToBounds({5, 2.5, 1.5}, b);
  EXPECT_EQ(lo, (Vec3{-1, -1, -1}));
  EXPECT_EQ(hi, (Vec3{1, 1, 1}));
  EXPECT_EQ(mid, (Vec3{0, 0, 0}));
  const Bounds flat{{0, 0}, {1, 1}, 2, 2};
  EXPECT_EQ(NormalizeToBounds({0.5, 0.5, 2}, flat).z, 0.0);
}

TEST(ModelTest, LayerLayout) {
  const MlpModel m(TinyConfig());
  const auto& l = m.layers();
  ASSERT_EQ(l.size(), 6u);
  EXPECT_EQ(l[0].name, "acoustic_encoder");
  EXPECT_EQ(l[0].in, 16);
  EXPECT_EQ(l[2].in, 5 + PosEncSize(TinyConfig().posenc));
  EXPECT_EQ(l[m.mixture_layer()].out, 9);
  EXPECT_EQ(l[m.diff_layer()].in, 5 + 4);
  size_t total = 0;
  for (const auto& s : l) {
    EXPECT_EQ(s.offset, total);
    total += s.size();
  }
  EXPECT_EQ(m.num_parameters(), total);

  const MlpModel rir(TinyConfig(OutputMode::kRir));
  EXPECT_EQ(rir.mixture_layer(), -1);
  EXPECT_EQ(rir.layers()[rir.diff_layer()].name, "rir_head");
  EXPECT_EQ(rir.layers()[rir.diff_layer()].out, 12);
}

TEST(ModelTest, ConfigValidation) {
  ModelConfig c = TinyConfig();
  c.hidden.clear();
  EXPECT_THROW(ValidateModelConfig(c), ValidationError);
  c = TinyConfig(OutputMode::kRir);
  c.rir_length = 0;
  EXPECT_THROW(ValidateModelConfig(c), ValidationError);
  EXPECT_THROW(ParseOutputMode("bogus"), ValidationError);
  EXPECT_EQ(ParseOutputMode("rir"), OutputMode::kRir);
}

TEST(ModelTest, ForwardMatchesScalarReference) {
  for (OutputMode mode : {OutputMode::kMask, OutputMode::kRir}) {
    ModelConfig c = TinyConfig(mode);
    c.extra_width = 3;
    MlpModel m(c);
    RandomizeAll(m, 3);
    const ModelInput in = RandomInput(c, 4);
    const ModelOutput got = Predict(m, in);
    const ModelOutput want = ReferenceForward(m, in);
    ASSERT_EQ(got.mixture.size(), want.mixture.size());
    for (size_t i = 0; i < want.mixture.size(); ++i) {
      EXPECT_NEAR(got.mixture[i], want.mixture[i], 1e-12);
    }
    for (size_t i = 0; i < want.left.size(); ++i) {
      EXPECT_NEAR(got.left[i], want.left[i], 1e-12);
      EXPECT_NEAR(got.right[i], want.right[i], 1e-12);
    }
  }
}

TEST(ModelTest, OutputsRespectMaskInvariants) {
  MlpModel m(TinyConfig());
  m.InitializeRandom(1);
  const ModelOutput out = Predict(m, RandomInput(m.config(), 2));
  const MaskSet masks = BroadcastMasks(out, 4);
  EXPECT_NO_THROW(ValidateMasks(masks));
  EXPECT_EQ(masks.num_frames(), 4);
  EXPECT_EQ(masks.diff_left.at(3, 2), out.left[3]);
}

TEST(ModelTest, InitializationIsSeededWithZeroBiases) {
  MlpModel a(TinyConfig()), b(TinyConfig()), c(TinyConfig());
  a.InitializeRandom(7);
  b.InitializeRandom(7);
  c.InitializeRandom(8);
  EXPECT_TRUE(std::equal(a.parameters().begin(), a.parameters().end(),
                         b.parameters().begin()));
  EXPECT_FALSE(std::equal(a.parameters().begin(), a.parameters().end(),
                          c.parameters().begin()));
  for (int l = 0; l < static_cast<int>(a.layers().size()); ++l) {
    EXPECT_EQ(a.Bias(l).norm(), 0.0);
    const double limit = std::sqrt(6.0 / a.layers()[l].in);
    EXPECT_LE(a.Weight(l).cwiseAbs().maxCoeff(), limit);
  }
}

TEST(ModelTest, AblationZeroesAcousticInputs) {
  ModelConfig c = TinyConfig();
  c.acoustic_features = false;
  MlpModel m(c);
  RandomizeAll(m, 5);
  const ModelInput in = RandomInput(c, 6);
  ModelInput zeroed = in;
  std::fill(zeroed.local.begin(), zeroed.local.end(), 0.0);
  std::fill(zeroed.left.begin(), zeroed.left.end(), 0.0);
  std::fill(zeroed.right.begin(), zeroed.right.end(), 0.0);
  ModelConfig full = c;
  full.acoustic_features = true;
  MlpModel reference(full);
  std::copy(m.parameters().begin(), m.parameters().end(),
            reference.parameters().begin());
  EXPECT_EQ(Predict(m, in).mixture, Predict(reference, zeroed).mixture);
}

TEST(ModelTest, InputLengthMismatchThrows) {
  const MlpModel m(TinyConfig());
  ModelInput in = RandomInput(m.config(), 1);
  in.local.pop_back();
  EXPECT_THROW(Predict(m, in), DomainError);
}

struct LossSample {
  TfArray source;
  BinauralMagnitudes target;
};

LossSample RandomLossSample(int bins, int frames, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  LossSample s{
      TfArray(bins, frames),
      {TfArray(bins, frames), TfArray(bins, frames), TfArray(bins, frames)}};
  for (double& v : s.source.data) v = u(rng);
  for (double& v : s.target.mixture.data) v = u(rng);
  for (double& v : s.target.left.data) v = u(rng);
  for (double& v : s.target.right.data) v = u(rng);
  return s;
}

double NaiveLoss(const MlpModel& m, const ModelInput& in, const LossSample& s) {
  const MaskSet masks = BroadcastMasks(Predict(m, in), s.source.num_frames);
  return LossLA(MaskedMagnitudes(s.source, masks), s.target);
}

std::vector<double> AnalyticGradient(const MlpModel& m, const ModelInput& in,
                                     const LossSample& s) {
  const ModelInput* ptr = &in;
  const BatchInput batch = MakeBatch(m, std::span(&ptr, 1));
  const ForwardPass pass = Forward(m, batch);
  const int f = m.config().num_bins;
  MatrixXd dm(f, 1), dl(f, 1), dr(f, 1);
  MaskLoss(ComputeMaskLossStats(s.source, s.target),
           {pass.mixture.data(), size_t(f)},
           {pass.channel_out[0].data(), size_t(f)},
           {pass.channel_out[1].data(), size_t(f)}, {dm.data(), size_t(f)},
           {dl.data(), size_t(f)}, {dr.data(), size_t(f)});
  std::vector<double> grad(m.num_parameters(), 0.0);
  Backward(m, batch, pass, dm, dl, dr, grad);
  return grad;
}

TEST(GradientTest, MatchesCentralDifferencesOfNaiveLoss) {
  MlpModel m(TinyConfig());
  RandomizeAll(m, 11);
  const ModelInput in = RandomInput(m.config(), 12);
  const LossSample s = RandomLossSample(9, 4, 13);
  const std::vector<double> grad = AnalyticGradient(m, in, s);
  const double h = 1e-6;
  double worst = 0.0;
  for (size_t i = 0; i < m.num_parameters(); ++i) {
    const double keep = m.parameters()[i];
    m.parameters()[i] = keep + h;
    const double up = NaiveLoss(m, in, s);
    m.parameters()[i] = keep - h;
    const double down = NaiveLoss(m, in, s);
    m.parameters()[i] = keep;
    const double numeric = (up - down) / (2 * h);
    const double scale = std::max(std::abs(numeric), std::abs(grad[i]));
    if (scale < 1e-7) continue;
    worst = std::max(worst, std::abs(numeric - grad[i]) / scale);
  }
  EXPECT_LT(worst, 1e-4);
}

TEST(GradientTest, HeadBiasesAtZeroMatchClosedForm) {
  const ModelConfig c = TinyConfig();
  MlpModel m(c);
  ModelInput in = RandomInput(c, 1);
  std::fill(in.local.begin(), in.local.end(), 0.0);
  std::fill(in.left.begin(), in.left.end(), 0.0);
  std::fill(in.right.begin(), in.right.end(), 0.0);
  std::fill(in.posenc.begin(), in.posenc.end(), 0.0);
  LossSample s = RandomLossSample(9, 4, 2);
  for (auto* t : {&s.target.mixture, &s.target.left, &s.target.right}) {
    std::fill(t->data.begin(), t->data.end(), 0.0);
  }
  const std::vector<double> grad = AnalyticGradient(m, in, s);
  const LayerShape& mix = m.layers()[m.mixture_layer()];
  const LayerShape& dif = m.layers()[m.diff_layer()];
  const double ln2 = std::numbers::ln2;
  for (int f = 0; f < c.num_bins; ++f) {
    double a = 0.0;
    for (int w = 0; w < 4; ++w) a += s.source.at(f, w) * s.source.at(f, w);
    EXPECT_NEAR(grad[mix.offset + size_t(mix.out) * mix.in + f], 3 * ln2 * a,
                1e-12);
    EXPECT_NEAR(grad[dif.offset + size_t(dif.out) * dif.in + f],
                4 * a * ln2 * ln2, 1e-12);
  }
  EXPECT_NEAR(
      NaiveLoss(m, in, s),
      [&] {
        double total = 0.0;
        for (double v : s.source.data) total += 3 * ln2 * ln2 * v * v;
        return total;
      }(),
      1e-10);
}

TEST(GradientTest, AblationLeavesEncoderWeightsUntouched) {
  ModelConfig c = TinyConfig();
  c.acoustic_features = false;
  MlpModel m(c);
  RandomizeAll(m, 21);
  const std::vector<double> grad =
      AnalyticGradient(m, RandomInput(c, 22), RandomLossSample(9, 4, 23));
  for (int l : {m.acoustic_layer(), m.channel_layer()}) {
    const LayerShape& s = m.layers()[l];
    for (size_t i = 0; i < size_t(s.out) * s.in; ++i) {
      EXPECT_EQ(grad[s.offset + i], 0.0);
    }
  }
}

TEST(GradientTest, RirModeMatchesCentralDifferences) {
  MlpModel m(TinyConfig(OutputMode::kRir));
  RandomizeAll(m, 31);
  const ModelInput in = RandomInput(m.config(), 32);
  const std::vector<double> tl = testing::GaussianNoise(12, 33);
  const std::vector<double> tr = testing::GaussianNoise(12, 34);
  auto loss = [&](const ModelOutput& o, std::vector<double>* dl,
                  std::vector<double>* dr) {
    double total = 0.0;
    for (size_t t = 0; t < 12; ++t) {
      total += (o.left[t] - tl[t]) * (o.left[t] - tl[t]) +
               (o.right[t] - tr[t]) * (o.right[t] - tr[t]);
      if (dl) (*dl)[t] = 2 * (o.left[t] - tl[t]);
      if (dr) (*dr)[t] = 2 * (o.right[t] - tr[t]);
    }
    return total;
  };
  const ModelInput* ptr = &in;
  const BatchInput batch = MakeBatch(m, std::span(&ptr, 1));
  const ForwardPass pass = Forward(m, batch);
  std::vector<double> dl(12), dr(12);
  loss(Predict(m, in), &dl, &dr);
  std::vector<double> grad(m.num_parameters(), 0.0);
  Backward(m, batch, pass, MatrixXd(), Eigen::Map<MatrixXd>(dl.data(), 12, 1),
           Eigen::Map<MatrixXd>(dr.data(), 12, 1), grad);
  const double h = 1e-6;
  for (size_t i = 0; i < m.num_parameters(); i += 3) {
    const double keep = m.parameters()[i];
    m.parameters()[i] = keep + h;
    const double up = loss(Predict(m, in), nullptr, nullptr);
    m.parameters()[i] = keep - h;
    const double down = loss(Predict(m, in), nullptr, nullptr);
    m.parameters()[i] = keep;
    const double numeric = (up - down) / (2 * h);
    EXPECT_NEAR(grad[i], numeric, 1e-6 * std::max(1.0, std::abs(numeric)));
  }
}

}  // namespace
}  // namespace soaf
