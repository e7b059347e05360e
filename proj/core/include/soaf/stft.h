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

#ifndef SOAF_STFT_H_
#define SOAF_STFT_H_

#include <complex>
#include <span>
#include <vector>

namespace soaf {

// Hamming-windowed STFT parameters. Defaults are 512 / 128 / 512.
struct StftConfig {
  int n_fft = 512;
  int hop = 128;
  int win_length = 512;

  int num_bins() const { return n_fft / 2 + 1; }
};

void ValidateStftConfig(const StftConfig& config);

// Periodic Hamming window of `win_length`, zero-padded and centered inside
// `n_fft` samples.
std::vector<double> StftWindow(const StftConfig& config);

// Frames produced for a signal of `length` samples with center padding.
int NumFrames(size_t length, const StftConfig& config);

// Index into a signal of `length` samples for position j of its reflect-padded
// copy with `pad` samples on each side. Requires length > pad.
size_t ReflectIndex(size_t j, size_t length, size_t pad);

// Dense real F x W array, bin-major: data[f * num_frames + w].
struct TfArray {
  int num_bins = 0;
  int num_frames = 0;
  std::vector<double> data;

  TfArray() = default;
  TfArray(int bins, int frames, double fill = 0.0)
      : num_bins(bins),
        num_frames(frames),
        data(static_cast<size_t>(bins) * frames, fill) {}

  double& at(int f, int w) {
    return data[static_cast<size_t>(f) * num_frames + w];
  }
  double at(int f, int w) const {
    return data[static_cast<size_t>(f) * num_frames + w];
  }
  bool SameShape(const TfArray& o) const {
    return num_bins == o.num_bins && num_frames == o.num_frames;
  }
};

struct Spectrogram {
  StftConfig config;
  int num_bins = 0;
  int num_frames = 0;
  // Samples in the analysed signal; Istft returns exactly this many.
  size_t signal_length = 0;
  std::vector<std::complex<double>> bins;  // bin-major like TfArray

  std::complex<double>& at(int f, int w) {
    return bins[static_cast<size_t>(f) * num_frames + w];
  }
  std::complex<double> at(int f, int w) const {
    return bins[static_cast<size_t>(f) * num_frames + w];
  }
};

// One-sided STFT of centered, reflection-padded (n_fft / 2 each side) frames.
// Throws DomainError when the signal is shorter than win_length or too short
// to reflect.
Spectrogram Stft(std::span<const double> signal, const StftConfig& config);

// Weighted overlap-add inverse: sum_t w * ifft(X_t) / sum_t w^2, trimmed to
// the original signal length.
std::vector<double> Istft(const Spectrogram& spec);

TfArray Magnitude(const Spectrogram& spec);
TfArray Phase(const Spectrogram& spec);

// Recombines magnitudes with phases into a spectrogram.
Spectrogram FromPolar(const TfArray& magnitude, const TfArray& phase,
                      const StftConfig& config, size_t signal_length);

}  // namespace soaf

#endif  // SOAF_STFT_H_
