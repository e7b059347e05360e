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

#include <algorithm>
#include <cmath>
#include <random>

#include "soaf/error.h"

namespace soaf {
namespace {

constexpr double kPanEpsilon = 1e-12;

}  // namespace

void ValidateRenderConfig(const RenderConfig& config) {
  if (!(config.base_gain > 0.0)) throw ValidationError("base_gain must be > 0");
  if (!(config.pan_strength >= 0.0 && config.pan_strength <= 1.0)) {
    throw ValidationError("pan_strength must be in [0, 1]");
  }
  if (!(config.rir_t60 > 0.0)) throw ValidationError("rir_t60 must be > 0");
  if (config.rir_length < 1) throw ValidationError("rir_length must be > 0");
  if (!(config.speed_of_sound > 0.0)) {
    throw ValidationError("speed_of_sound must be > 0");
  }
  if (!(config.tail_level >= 0.0))
    throw ValidationError("tail_level must be >= 0");
  if (config.sample_rate <= 0) throw ValidationError("sample_rate must be > 0");
}

AnalyticRenderer::AnalyticRenderer(GlobalField field,
                                   LocalFieldConfig local_config,
                                   RenderConfig config)
    : field_(std::move(field)),
      local_config_(local_config),
      config_(config),
      dirs_(FibonacciDirections(local_config.num_directions)) {
  ValidateLocalFieldConfig(local_config_);
  ValidateRenderConfig(config_);
}

PanEstimate AnalyticRenderer::EstimatePan(const Pose& pose) const {
  ValidatePose(pose);
  const EarDirections ears = ComputeEarDirections(pose);
  const SphereDirections mirrored = MirrorDirections(dirs_, ears.left);
  const LocalFeature direct =
      SampleLocalField(pose.position, field_, dirs_, local_config_);
  const LocalFeature reflected =
      SampleLocalField(pose.position, field_, mirrored, local_config_);

  PanEstimate out;
  for (int g = 0; g < dirs_.size(); ++g) {
    const double fa = direct.values[g];
    const double fb = reflected.values[g];
    const double la = Dot(dirs_.dirs[g], ears.left);
    const double lb = Dot(mirrored.dirs[g], ears.left);
    const double ra = Dot(dirs_.dirs[g], ears.right);
    const double rb = Dot(mirrored.dirs[g], ears.right);
    out.energy_left += std::max(fa * la, 0.0) + std::max(fb * lb, 0.0);
    out.energy_right += std::max(fa * ra, 0.0) + std::max(fb * rb, 0.0);
  }
  out.pan = (out.energy_left - out.energy_right) /
            (out.energy_left + out.energy_right + kPanEpsilon);
  return out;
}

MaskSet AnalyticRenderer::Masks(const Pose& pose, int num_bins,
                                int num_frames) const {
  const double prior = field_.Normalized(pose.position);
  const double pan = EstimatePan(pose).pan;
  const double diff = config_.pan_strength * pan;
  return UniformMasks(num_bins, num_frames, config_.base_gain * prior, diff,
                      -diff);
}

AudioClip AnalyticRenderer::Synthesize(const AudioClip& mono, const Pose& pose,
                                       const StftConfig& stft) const {
  ValidateClip(mono);
  if (mono.num_channels() != 1) throw DomainError("source must be mono");
  const Spectrogram spec = Stft(mono.channels.front(), stft);
  const MaskSet masks = Masks(pose, spec.num_bins, spec.num_frames);
  StereoSignal out =
      ApplyMasks(Magnitude(spec), Phase(spec), masks, stft, mono.num_samples());
  AudioClip clip;
  clip.sample_rate = mono.sample_rate;
  clip.channels = {std::move(out.left), std::move(out.right)};
  return clip;
}

RirPair AnalyticRenderer::ToyRir(const Pose& pose) const {
  const double distance = Distance(pose.position, field_.scene().source);
  const double delay_exact =
      distance / config_.speed_of_sound * config_.sample_rate;
  const long delay = std::lrint(std::nearbyint(delay_exact));
  if (delay + 1 >= config_.rir_length) {
    throw DomainError("rir_length too short for the direct-path delay");
  }
  const double prior = field_.Normalized(pose.position);
  const double pan = EstimatePan(pose).pan;
  const double amp_left = prior * (1.0 + config_.pan_strength * pan) / 2.0;
  const double amp_right = prior * (1.0 - config_.pan_strength * pan) / 2.0;

  RirPair rir{std::vector<double>(config_.rir_length, 0.0),
              std::vector<double>(config_.rir_length, 0.0)};
  rir.left[delay] = amp_left;
  rir.right[delay] = amp_right;

  const double decay = 3.0 * std::log(10.0) / config_.rir_t60;
  std::mt19937_64 rng(config_.seed);
  std::normal_distribution<double> noise(0.0, 1.0);
  for (long n = delay + 1; n < config_.rir_length; ++n) {
    const double t = static_cast<double>(n - delay) / config_.sample_rate;
    const double tail = config_.tail_level * noise(rng) * std::exp(-decay * t);
    rir.left[n] = amp_left * tail;
    rir.right[n] = amp_right * tail;
  }
  return rir;
}

}  // namespace soaf
