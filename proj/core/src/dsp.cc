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

#include "soaf/dsp.h"

#include <cmath>
#include <complex>

#include <nlohmann/json.hpp>
#include "soaf/binary_io.h"
#include "soaf/error.h"
#include "soaf/fft.h"

namespace soaf {
namespace {

size_t NextPowerOfTwo(size_t n) {
  size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

nlohmann::json StftConfigJson(const StftConfig& config) {
  return {{"n_fft", config.n_fft},
          {"hop", config.hop},
          {"win_length", config.win_length},
          {"window", "hamming"}};
}

}  // namespace

MaskSet UniformMasks(int num_bins, int num_frames, double mixture,
                     double diff_left, double diff_right) {
  return {TfArray(num_bins, num_frames, mixture),
          TfArray(num_bins, num_frames, diff_left),
          TfArray(num_bins, num_frames, diff_right)};
}

void ValidateMasks(const MaskSet& masks) {
  if (!masks.mixture.SameShape(masks.diff_left) ||
      !masks.mixture.SameShape(masks.diff_right)) {
    throw ValidationError("mask shapes disagree");
  }
  for (double v : masks.mixture.data) {
    if (!(v >= 0.0)) throw ValidationError("mixture mask must be >= 0");
  }
  for (const TfArray* d : {&masks.diff_left, &masks.diff_right}) {
    for (double v : d->data) {
      if (!(v >= -1.0)) throw ValidationError("difference mask must be >= -1");
    }
  }
}

BinauralMagnitudes MaskedMagnitudes(const TfArray& source_magnitude,
                                    const MaskSet& masks) {
  if (!source_magnitude.SameShape(masks.mixture) ||
      !source_magnitude.SameShape(masks.diff_left) ||
      !source_magnitude.SameShape(masks.diff_right)) {
    throw DomainError("mask shape does not match the source spectrogram");
  }
  const int bins = source_magnitude.num_bins;
  const int frames = source_magnitude.num_frames;
  BinauralMagnitudes out{TfArray(bins, frames), TfArray(bins, frames),
                         TfArray(bins, frames)};
  for (size_t i = 0; i < source_magnitude.data.size(); ++i) {
    const double mix = source_magnitude.data[i] * masks.mixture.data[i];
    out.mixture.data[i] = mix;
    out.left.data[i] = mix * (1.0 + masks.diff_left.data[i]);
    out.right.data[i] = mix * (1.0 + masks.diff_right.data[i]);
  }
  return out;
}

StereoSignal ApplyMasks(const TfArray& source_magnitude,
                        const TfArray& source_phase, const MaskSet& masks,
                        const StftConfig& config, size_t signal_length) {
  const BinauralMagnitudes mags = MaskedMagnitudes(source_magnitude, masks);
  return {
      Istft(FromPolar(mags.left, source_phase, config, signal_length)),
      Istft(FromPolar(mags.right, source_phase, config, signal_length)),
  };
}

std::vector<double> ConvolveRir(std::span<const double> src,
                                std::span<const double> rir) {
  if (src.empty() || rir.empty())
    throw DomainError("convolution of empty input");
  const size_t out_len = src.size() + rir.size() - 1;
  const size_t n = NextPowerOfTwo(out_len);
  RealFft fft(static_cast<int>(n));
  std::vector<double> a(n, 0.0), b(n, 0.0);
  std::copy(src.begin(), src.end(), a.begin());
  std::copy(rir.begin(), rir.end(), b.begin());
  std::vector<std::complex<double>> fa(fft.num_bins()), fb(fft.num_bins());
  fft.Forward(a, fa);
  fft.Forward(b, fb);
  for (size_t k = 0; k < fa.size(); ++k) fa[k] *= fb[k];
  fft.Inverse(fa, a);
  std::vector<double> out(out_len);
  const double scale = 1.0 / static_cast<double>(n);
  for (size_t i = 0; i < out_len; ++i) out[i] = a[i] * scale;
  return out;
}

std::vector<double> HilbertEnvelope(std::span<const double> signal) {
  if (signal.empty()) throw DomainError("envelope of empty signal");
  const int n = static_cast<int>(signal.size());
  ComplexFft fft(n);
  std::vector<std::complex<double>> x(signal.begin(), signal.end());
  std::vector<std::complex<double>> spectrum(n);
  fft.Forward(x, spectrum);
  // Keep DC (and Nyquist for even n), double positive, zero negative.
  const int half = n / 2;
  for (int k = 1; k < n; ++k) {
    if (k < half || (k == half && n % 2 == 1)) {
      spectrum[k] *= 2.0;
    } else if (k > half) {
      spectrum[k] = 0.0;
    }
  }
  fft.Inverse(spectrum, x);
  std::vector<double> envelope(n);
  for (int i = 0; i < n; ++i) envelope[i] = std::abs(x[i]) / n;
  return envelope;
}

void WriteTfDump(const TfArray& array, const StftConfig& config,
                 const std::filesystem::path& stem) {
  WriteF32File(WithSuffix(stem, ".f32"), array.data);
  const nlohmann::json meta = {{"F", array.num_bins},
                               {"W", array.num_frames},
                               {"config", StftConfigJson(config)}};
  WriteTextFile(WithSuffix(stem, ".json"), meta.dump(2));
}

void WriteMaskDump(const MaskSet& masks, const StftConfig& config,
                   const std::filesystem::path& stem) {
  std::string bytes;
  AppendF32(masks.mixture.data, bytes);
  AppendF32(masks.diff_left.data, bytes);
  AppendF32(masks.diff_right.data, bytes);
  WriteTextFile(WithSuffix(stem, ".f32"), bytes);
  const nlohmann::json meta = {{"F", masks.num_bins()},
                               {"W", masks.num_frames()},
                               {"arrays", {"m_m", "m_d_l", "m_d_r"}},
                               {"config", StftConfigJson(config)}};
  WriteTextFile(WithSuffix(stem, ".json"), meta.dump(2));
}

}  // namespace soaf
