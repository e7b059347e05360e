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

#ifndef SOAF_LOSS_H_
#define SOAF_LOSS_H_

#include <span>
#include <vector>

#include "soaf/dsp.h"
#include "soaf/stft.h"

namespace soaf {

// Sum of squared differences over the mixture, left and right magnitudes.
double LossLA(const BinauralMagnitudes& predicted,
              const BinauralMagnitudes& target);

// Per-bin sums over frames that reduce the loss of frame-constant masks to
// O(F): with s the source magnitude,
//   source_energy[f] = sum_w s^2, cross_*[f] = sum_w s * target_*,
//   target_energy = sum of all squared targets.
struct MaskLossStats {
  std::vector<double> source_energy;
  std::vector<double> cross_mixture;
  std::vector<double> cross_left;
  std::vector<double> cross_right;
  double target_energy = 0.0;
};

MaskLossStats ComputeMaskLossStats(const TfArray& source_magnitude,
                                   const BinauralMagnitudes& target);

// LossLA of MaskedMagnitudes(source, BroadcastMasks(m, d_l, d_r)) against the
// target the stats were built from. Fills the per-bin gradients when the
// output spans are non-empty.
double MaskLoss(const MaskLossStats& stats, std::span<const double> mixture,
                std::span<const double> diff_left,
                std::span<const double> diff_right, std::span<double> d_mixture,
                std::span<double> d_left, std::span<double> d_right);

// sum_{f,w} (|STFT(rir)| - target)^2. Fills dL/drir when `grad` is non-empty.
// Bins where the predicted magnitude is 0 contribute no gradient.
double StftMagnitudeLoss(std::span<const double> rir, const TfArray& target,
                         const StftConfig& config, std::span<double> grad);

}  // namespace soaf

#endif  // SOAF_LOSS_H_
