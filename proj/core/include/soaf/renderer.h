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

#ifndef SOAF_RENDERER_H_
#define SOAF_RENDERER_H_

#include <cstdint>
#include <vector>

#include "soaf/dsp.h"
#include "soaf/global_field.h"
#include "soaf/local_field.h"
#include "soaf/stft.h"
#include "soaf/wav.h"

namespace soaf {

struct RenderConfig {
  double base_gain = 1.0;
  double pan_strength = 0.5;  // in [0, 1]
  double rir_t60 = 0.3;       // seconds
  int rir_length = 8192;      // samples
  double speed_of_sound = 343.0;
  // Amplitude of the first tail sample relative to the direct path.
  double tail_level = 0.02;
  std::uint64_t seed = 0;
  int sample_rate = kDefaultSampleRate;
};

void ValidateRenderConfig(const RenderConfig& config);

// Per-ear energies of the attended local field and the resulting pan in
// [-1, 1]. Positive pan favors the left ear.
struct PanEstimate {
  double energy_left = 0.0;
  double energy_right = 0.0;
  double pan = 0.0;
};

struct RirPair {
  std::vector<double> left;
  std::vector<double> right;
};

// Deterministic binaural synthesis from the occlusion-aware prior alone.
//
// The pan estimate sums positive attended energies over the Fibonacci lattice
// and over its mirror image across the receiver's vertical gaze plane, pairing
// each direction with its reflection. The pairing makes the estimate exactly
// antisymmetric: a pose that is mirror-symmetric w.r.t. the scene gets pan 0,
// and mirroring scene and pose negates the pan bit for bit.
class AnalyticRenderer {
 public:
  AnalyticRenderer(GlobalField field, LocalFieldConfig local_config,
                   RenderConfig config);

  const GlobalField& field() const { return field_; }
  const RenderConfig& config() const { return config_; }
  const LocalFieldConfig& local_config() const { return local_config_; }
  const SphereDirections& directions() const { return dirs_; }

  PanEstimate EstimatePan(const Pose& pose) const;

  // Frequency-flat masks: m_m = base_gain * E^(p_rc),
  // m_d^l = pan_strength * pan, m_d^r = -pan_strength * pan.
  MaskSet Masks(const Pose& pose, int num_bins, int num_frames) const;

  // STFT -> Masks -> ApplyMasks. `mono` must have one channel.
  AudioClip Synthesize(const AudioClip& mono, const Pose& pose,
                       const StftConfig& stft) const;

  // Direct-path impulse at round-half-even(d / c * fs) with amplitude
  // E^(p_rc) (1 +- pan_strength * pan) / 2, followed by a seeded Gaussian tail
  // decaying as exp(-3 ln(10) t / T60). Both channels share the noise.
  // Throws DomainError when rir_length cannot hold the direct path.
  RirPair ToyRir(const Pose& pose) const;

 private:
  GlobalField field_;
  LocalFieldConfig local_config_;
  RenderConfig config_;
  SphereDirections dirs_;
};

}  // namespace soaf

#endif  // SOAF_RENDERER_H_
