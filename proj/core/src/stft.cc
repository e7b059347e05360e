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

#include "soaf/stft.h"

#include <cmath>
#include <numbers>

#include "soaf/error.h"
#include "soaf/fft.h"

namespace soaf {

void ValidateStftConfig(const StftConfig& config) {
  if (config.n_fft < 2 || config.hop < 1 || config.win_length < 1) {
    throw ValidationError("STFT sizes must be positive");
  }
  if (!(config.hop <= config.win_length && config.win_length <= config.n_fft)) {
    throw ValidationError("STFT requires hop <= win_length <= n_fft");
  }
}

std::vector<double> StftWindow(const StftConfig& config) {
  std::vector<double> window(config.n_fft, 0.0);
  const int offset = (config.n_fft - config.win_length) / 2;
  for (int i = 0; i < config.win_length; ++i) {
    window[offset + i] =
        0.54 - 0.46 * std::cos(2.0 * std::numbers::pi * i / config.win_length);
  }
  return window;
}

size_t ReflectIndex(size_t j, size_t length, size_t pad) {
  if (j < pad) return pad - j;
  if (j < pad + length) return j - pad;
  return 2 * length + pad - 2 - j;
}

int NumFrames(size_t length, const StftConfig& config) {
  return 1 + static_cast<int>(length / config.hop);
}

Spectrogram Stft(std::span<const double> signal, const StftConfig& config) {
  ValidateStftConfig(config);
  const size_t pad = config.n_fft / 2;
  if (signal.size() < static_cast<size_t>(config.win_length) ||
      signal.size() <= pad) {
    throw DomainError("clip too short for STFT");
  }
  const size_t length = signal.size();
  std::vector<double> padded(length + 2 * pad);
  for (size_t j = 0; j < padded.size(); ++j) {
    padded[j] = signal[ReflectIndex(j, length, pad)];
  }

  Spectrogram spec;
  spec.config = config;
  spec.num_bins = config.num_bins();
  spec.num_frames = NumFrames(length, config);
  spec.signal_length = length;
  spec.bins.resize(static_cast<size_t>(spec.num_bins) * spec.num_frames);

  const std::vector<double> window = StftWindow(config);
  RealFft fft(config.n_fft);
  std::vector<double> frame(config.n_fft);
  std::vector<std::complex<double>> out(spec.num_bins);
  for (int w = 0; w < spec.num_frames; ++w) {
    const size_t start = static_cast<size_t>(w) * config.hop;
    for (int i = 0; i < config.n_fft; ++i) {
      frame[i] = padded[start + i] * window[i];
    }
    fft.Forward(frame, out);
    for (int f = 0; f < spec.num_bins; ++f) spec.at(f, w) = out[f];
  }
  return spec;
}

std::vector<double> Istft(const Spectrogram& spec) {
  const StftConfig& config = spec.config;
  ValidateStftConfig(config);
  if (spec.num_bins != config.num_bins() ||
      spec.bins.size() !=
          static_cast<size_t>(spec.num_bins) * spec.num_frames ||
      spec.num_frames < 1) {
    throw DomainError("spectrogram dimensions inconsistent with its config");
  }
  const size_t pad = config.n_fft / 2;
  const size_t total = static_cast<size_t>(config.n_fft) +
                       static_cast<size_t>(config.hop) * (spec.num_frames - 1);
  if (total < pad + spec.signal_length) {
    throw DomainError("spectrogram too short for its signal length");
  }
  std::vector<double> acc(total, 0.0);
  std::vector<double> norm(total, 0.0);
  const std::vector<double> window = StftWindow(config);
  RealFft fft(config.n_fft);
  std::vector<std::complex<double>> column(spec.num_bins);
  std::vector<double> frame(config.n_fft);
  const double scale = 1.0 / config.n_fft;
  for (int w = 0; w < spec.num_frames; ++w) {
    for (int f = 0; f < spec.num_bins; ++f) column[f] = spec.at(f, w);
    // A real signal has real DC and Nyquist bins.
    column.front() = column.front().real();
    if (config.n_fft % 2 == 0) column.back() = column.back().real();
    fft.Inverse(column, frame);
    const size_t start = static_cast<size_t>(w) * config.hop;
    for (int i = 0; i < config.n_fft; ++i) {
      acc[start + i] += frame[i] * scale * window[i];
      norm[start + i] += window[i] * window[i];
    }
  }
  std::vector<double> out(spec.signal_length);
  for (size_t n = 0; n < out.size(); ++n) {
    const double d = norm[pad + n];
    out[n] = d > 1e-11 ? acc[pad + n] / d : 0.0;
  }
  return out;
}

TfArray Magnitude(const Spectrogram& spec) {
  TfArray out(spec.num_bins, spec.num_frames);
  for (size_t i = 0; i < spec.bins.size(); ++i)
    out.data[i] = std::abs(spec.bins[i]);
  return out;
}

TfArray Phase(const Spectrogram& spec) {
  TfArray out(spec.num_bins, spec.num_frames);
  for (size_t i = 0; i < spec.bins.size(); ++i)
    out.data[i] = std::arg(spec.bins[i]);
  return out;
}

Spectrogram FromPolar(const TfArray& magnitude, const TfArray& phase,
                      const StftConfig& config, size_t signal_length) {
  if (!magnitude.SameShape(phase) || magnitude.num_bins != config.num_bins()) {
    throw DomainError("magnitude/phase shape mismatch");
  }
  Spectrogram spec;
  spec.config = config;
  spec.num_bins = magnitude.num_bins;
  spec.num_frames = magnitude.num_frames;
  spec.signal_length = signal_length;
  spec.bins.resize(magnitude.data.size());
  for (size_t i = 0; i < spec.bins.size(); ++i) {
    const double m = magnitude.data[i];
    spec.bins[i] = {m * std::cos(phase.data[i]), m * std::sin(phase.data[i])};
  }
  return spec;
}

}  // namespace soaf
