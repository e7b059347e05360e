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

#include "soaf/loss.h"

#include <gtest/gtest.h>

#include <random>

#include "soaf/error.h"
#include "test_support.h"

namespace soaf {
namespace {

TfArray RandomArray(int bins, int frames, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  TfArray a(bins, frames);
  for (double& v : a.data) v = u(rng);
  return a;
}

TEST(LossTest, LossLAIsSumOfSquares) {
  BinauralMagnitudes a{TfArray(2, 2, 1.0), TfArray(2, 2, 2.0),
                       TfArray(2, 2, 3.0)};
  BinauralMagnitudes b{TfArray(2, 2, 0.0), TfArray(2, 2, 2.5),
                       TfArray(2, 2, 1.0)};
  EXPECT_DOUBLE_EQ(LossLA(a, b), 4 * 1.0 + 4 * 0.25 + 4 * 4.0);
  EXPECT_EQ(LossLA(a, a), 0.0);
  b.left = TfArray(3, 2);
  EXPECT_THROW(LossLA(a, b), DomainError);
}

TEST(LossTest, MaskLossMatchesNaiveLoss) {
  const int bins = 7, frames = 5;
  const TfArray src = RandomArray(bins, frames, 1);
  const BinauralMagnitudes target{RandomArray(bins, frames, 2),
                                  RandomArray(bins, frames, 3),
                                  RandomArray(bins, frames, 4)};
  const MaskLossStats stats = ComputeMaskLossStats(src, target);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-0.9, 1.5);
  std::vector<double> m(bins), dl(bins), dr(bins);
  for (int f = 0; f < bins; ++f) {
    m[f] = std::abs(u(rng));
    dl[f] = u(rng);
    dr[f] = u(rng);
  }
  MaskSet masks{TfArray(bins, frames), TfArray(bins, frames),
                TfArray(bins, frames)};
  for (int f = 0; f < bins; ++f) {
    for (int w = 0; w < frames; ++w) {
      masks.mixture.at(f, w) = m[f];
      masks.diff_left.at(f, w) = dl[f];
      masks.diff_right.at(f, w) = dr[f];
    }
  }
  const double naive = LossLA(MaskedMagnitudes(src, masks), target);
  std::vector<double> gm(bins), gl(bins), gr(bins);
  const double fast = MaskLoss(stats, m, dl, dr, gm, gl, gr);
  EXPECT_NEAR(fast, naive, 1e-10 * naive);
  EXPECT_NEAR(MaskLoss(stats, m, dl, dr, {}, {}, {}), fast, 0.0);

  // Per-bin gradients against central differences of the naive loss.
  const double h = 1e-6;
  for (int f = 0; f < bins; ++f) {
    for (int which = 0; which < 3; ++which) {
      TfArray& plane = which == 0   ? masks.mixture
                       : which == 1 ? masks.diff_left
                                    : masks.diff_right;
      const double keep = plane.at(f, 0);
      auto eval = [&](double v) {
        for (int w = 0; w < frames; ++w) plane.at(f, w) = v;
        return LossLA(MaskedMagnitudes(src, masks), target);
      };
      const double numeric = (eval(keep + h) - eval(keep - h)) / (2 * h);
      eval(keep);
      const double analytic = which == 0 ? gm[f] : which == 1 ? gl[f] : gr[f];
      EXPECT_NEAR(analytic, numeric, 1e-6 * std::max(1.0, std::abs(numeric)));
    }
  }
}

TEST(LossTest, StftMagnitudeLossGradient) {
  const StftConfig cfg{32, 8, 32};
  const std::vector<double> target_signal = testing::GaussianNoise(80, 1);
  const TfArray target = Magnitude(Stft(target_signal, cfg));
  std::vector<double> x = testing::GaussianNoise(80, 2);
  std::vector<double> grad(x.size());
  const double loss = StftMagnitudeLoss(x, target, cfg, grad);

  double naive = 0.0;
  const TfArray mag = Magnitude(Stft(x, cfg));
  for (size_t i = 0; i < mag.data.size(); ++i) {
    naive += (mag.data[i] - target.data[i]) * (mag.data[i] - target.data[i]);
  }
  EXPECT_NEAR(loss, naive, 1e-10 * naive);

  const double h = 1e-6;
  for (size_t i = 0; i < x.size(); ++i) {
    const double keep = x[i];
    x[i] = keep + h;
    const double up = StftMagnitudeLoss(x, target, cfg, {});
    x[i] = keep - h;
    const double down = StftMagnitudeLoss(x, target, cfg, {});
    x[i] = keep;
    EXPECT_NEAR(grad[i], (up - down) / (2 * h), 1e-5) << i;
  }
  EXPECT_EQ(StftMagnitudeLoss(target_signal, target, cfg, {}), 0.0);
}

TEST(LossTest, ShapeMismatchesThrow) {
  const TfArray src(4, 3, 1.0);
  const BinauralMagnitudes bad{TfArray(4, 3), TfArray(4, 2), TfArray(4, 3)};
  EXPECT_THROW(ComputeMaskLossStats(src, bad), DomainError);
  const BinauralMagnitudes ok{TfArray(4, 3), TfArray(4, 3), TfArray(4, 3)};
  const MaskLossStats stats = ComputeMaskLossStats(src, ok);
  const std::vector<double> three(3, 0.0), four(4, 0.0);
  EXPECT_THROW(MaskLoss(stats, three, four, four, {}, {}, {}), DomainError);
}

}  // namespace
}  // namespace soaf
