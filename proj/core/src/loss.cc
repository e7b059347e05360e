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

#include <cmath>
#include <complex>

#include "soaf/error.h"
#include "soaf/fft.h"

namespace soaf {
namespace {

double SquaredDistance(const TfArray& a, const TfArray& b) {
  if (!a.SameShape(b)) throw DomainError("magnitude shape mismatch");
  double sum = 0.0;
  for (size_t i = 0; i < a.data.size(); ++i) {
    const double d = a.data[i] - b.data[i];
    sum += d * d;
  }
  return sum;
}

}  // namespace

double LossLA(const BinauralMagnitudes& predicted,
              const BinauralMagnitudes& target) {
  return SquaredDistance(predicted.mixture, target.mixture) +
         SquaredDistance(predicted.left, target.left) +
         SquaredDistance(predicted.right, target.right);
}

MaskLossStats ComputeMaskLossStats(const TfArray& source_magnitude,
                                   const BinauralMagnitudes& target) {
  if (!source_magnitude.SameShape(target.mixture) ||
      !source_magnitude.SameShape(target.left) ||
      !source_magnitude.SameShape(target.right)) {
    throw DomainError("target shape does not match the source spectrogram");
  }
  const int bins = source_magnitude.num_bins;
  const int frames = source_magnitude.num_frames;
  MaskLossStats stats;
  stats.source_energy.assign(bins, 0.0);
  stats.cross_mixture.assign(bins, 0.0);
  stats.cross_left.assign(bins, 0.0);
  stats.cross_right.assign(bins, 0.0);
  for (int f = 0; f < bins; ++f) {
    for (int w = 0; w < frames; ++w) {
      const double s = source_magnitude.at(f, w);
      const double tm = target.mixture.at(f, w);
      const double tl = target.left.at(f, w);
      const double tr = target.right.at(f, w);
      stats.source_energy[f] += s * s;
      stats.cross_mixture[f] += s * tm;
      stats.cross_left[f] += s * tl;
      stats.cross_right[f] += s * tr;
      stats.target_energy += tm * tm + tl * tl + tr * tr;
    }
  }
  return stats;
}

double MaskLoss(const MaskLossStats& stats, std::span<const double> mixture,
                std::span<const double> diff_left,
                std::span<const double> diff_right, std::span<double> d_mixture,
                std::span<double> d_left, std::span<double> d_right) {
  const size_t bins = stats.source_energy.size();
  if (mixture.size() != bins || diff_left.size() != bins ||
      diff_right.size() != bins) {
    throw DomainError("mask length does not match the loss statistics");
  }
  const bool want_grad = !d_mixture.empty();
  if (want_grad && (d_mixture.size() != bins || d_left.size() != bins ||
                    d_right.size() != bins)) {
    throw DomainError("gradient length mismatch");
  }
  // sum_w (m s - t)^2 = m^2 A - 2 m B + sum_w t^2, with A, B per bin.
  double loss = stats.target_energy;
  for (size_t f = 0; f < bins; ++f) {
    const double a = stats.source_energy[f];
    const double m = mixture[f];
    const double gl = m * (1.0 + diff_left[f]);
    const double gr = m * (1.0 + diff_right[f]);
    loss += a * m * m - 2.0 * m * stats.cross_mixture[f];
    loss += a * gl * gl - 2.0 * gl * stats.cross_left[f];
    loss += a * gr * gr - 2.0 * gr * stats.cross_right[f];
    if (want_grad) {
      const double dgl = 2.0 * (a * gl - stats.cross_left[f]);
      const double dgr = 2.0 * (a * gr - stats.cross_right[f]);
      d_mixture[f] = 2.0 * (a * m - stats.cross_mixture[f]) +
                     dgl * (1.0 + diff_left[f]) + dgr * (1.0 + diff_right[f]);
      d_left[f] = dgl * m;
      d_right[f] = dgr * m;
    }
  }
  return loss;
}

double StftMagnitudeLoss(std::span<const double> rir, const TfArray& target,
                         const StftConfig& config, std::span<double> grad) {
  const Spectrogram spec = Stft(rir, config);
  if (spec.num_bins != target.num_bins ||
      spec.num_frames != target.num_frames) {
    throw DomainError("target shape does not match the STFT of the input");
  }
  const bool want_grad = !grad.empty();
  if (want_grad && grad.size() != rir.size()) {
    throw DomainError("gradient length mismatch");
  }
  double loss = 0.0;
  // dL/dX as a complex number (dL/dRe + i dL/dIm), per bin.
  std::vector<std::complex<double>> g(spec.bins.size());
  for (size_t i = 0; i < spec.bins.size(); ++i) {
    const double mag = std::abs(spec.bins[i]);
    const double r = mag - target.data[i];
    loss += r * r;
    if (mag > 0.0) g[i] = 2.0 * r * spec.bins[i] / mag;
  }
  if (!want_grad) return loss;

  // X_f = sum_i y_i e^{-2 pi i f i / N} over the one-sided bins, so
  // dL/dy_i = sum_f Re(G_f e^{+2 pi i f i / N}). An unnormalized c2r with
  // interior bins halved evaluates exactly that sum.
  const int n = config.n_fft;
  const size_t pad = n / 2;
  const std::vector<double> window = StftWindow(config);
  RealFft fft(n);
  std::vector<std::complex<double>> column(spec.num_bins);
  std::vector<double> frame(n);
  std::vector<double> d_padded(rir.size() + 2 * pad, 0.0);
  for (int w = 0; w < spec.num_frames; ++w) {
    for (int f = 0; f < spec.num_bins; ++f) {
      const std::complex<double> gf =
          g[static_cast<size_t>(f) * spec.num_frames + w];
      const bool edge = f == 0 || (n % 2 == 0 && f == spec.num_bins - 1);
      column[f] = edge ? std::complex<double>(gf.real(), 0.0) : 0.5 * gf;
    }
    fft.Inverse(column, frame);
    const size_t start = static_cast<size_t>(w) * config.hop;
    for (int i = 0; i < n; ++i) d_padded[start + i] += frame[i] * window[i];
  }
  std::fill(grad.begin(), grad.end(), 0.0);
  for (size_t j = 0; j < d_padded.size(); ++j) {
    grad[ReflectIndex(j, rir.size(), pad)] += d_padded[j];
  }
  return loss;
}

}  // namespace soaf
