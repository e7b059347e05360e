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

#ifndef SOAF_DSP_H_
#define SOAF_DSP_H_

#include <filesystem>
#include <span>
#include <utility>
#include <vector>

#include "soaf/stft.h"

namespace soaf {

// Mixture mask and per-ear difference masks over F x W bins.
// Invariants: m_m >= 0, m_d >= -1 (so 1 + m_d >= 0).
struct MaskSet {
  TfArray mixture;
  TfArray diff_left;
  TfArray diff_right;

  int num_bins() const { return mixture.num_bins; }
  int num_frames() const { return mixture.num_frames; }
};

MaskSet UniformMasks(int num_bins, int num_frames, double mixture,
                     double diff_left, double diff_right);
// Throws ValidationError if shapes disagree or an invariant is violated.
void ValidateMasks(const MaskSet& masks);

struct BinauralMagnitudes {
  TfArray mixture;
  TfArray left;
  TfArray right;
};

// s_m = src * m_m, s_l = s_m * (1 + m_d^l), s_r = s_m * (1 + m_d^r).
BinauralMagnitudes MaskedMagnitudes(const TfArray& source_magnitude,
                                    const MaskSet& masks);

struct StereoSignal {
  std::vector<double> left;
  std::vector<double> right;
};

// Masked magnitudes recombined with the source phase and inverted.
StereoSignal ApplyMasks(const TfArray& source_magnitude,
                        const TfArray& source_phase, const MaskSet& masks,
                        const StftConfig& config, size_t signal_length);

// Full linear convolution via FFT; length |src| + |rir| - 1.
std::vector<double> ConvolveRir(std::span<const double> src,
                                std::span<const double> rir);

// |analytic signal|, built by zeroing negative frequencies.
std::vector<double> HilbertEnvelope(std::span<const double> signal);

// `<stem>.f32` (bin-major float32) plus `<stem>.json` {F, W, config}.
void WriteTfDump(const TfArray& array, const StftConfig& config,
                 const std::filesystem::path& stem);
void WriteMaskDump(const MaskSet& masks, const StftConfig& config,
                   const std::filesystem::path& stem);

}  // namespace soaf

#endif  // SOAF_DSP_H_
