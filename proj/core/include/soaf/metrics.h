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

#ifndef SOAF_METRICS_H_
#define SOAF_METRICS_H_

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "soaf/dsp.h"
#include "soaf/stft.h"

namespace soaf {

inline constexpr double kDecayFloorDb = -120.0;
inline constexpr double kC50ClampDb = 80.0;
inline constexpr double kSilentEnergy = 1e-20;

// Sum of squared magnitude differences.
double MagDistance(const TfArray& predicted, const TfArray& target);

// Sum of squared differences between Hilbert envelopes.
double EnvDistance(std::span<const double> predicted,
                   std::span<const double> target);
double EnvDistance(const StereoSignal& predicted, const StereoSignal& target);

// 10 log10 of the backward-integrated energy normalized to 0 dB at sample 0,
// floored at -120 dB. Throws DomainError for an empty or all-zero input.
std::vector<double> SchroederDecay(std::span<const double> rir);

// Least-squares slope of the decay curve over samples [first, last], dB/s.
double DecaySlope(std::span<const double> decay_db, size_t first, size_t last,
                  int sample_rate);

// T30 estimate: fit between the first samples at or below -5 and -35 dB,
// extrapolated to 60 dB. Empty when the curve never reaches -35 dB.
std::optional<double> T60(std::span<const double> rir, int sample_rate);
// 100 |T60(p) - T60(g)| / T60(g).
std::optional<double> T60Error(std::span<const double> predicted,
                               std::span<const double> target, int sample_rate);

// 10 log10(E[0, 50 ms) / E[50 ms, end)), clamped to +-80 dB when either part
// is silent. Throws DomainError when the input is not longer than 50 ms.
double C50(std::span<const double> rir, int sample_rate);
double C50Distance(std::span<const double> predicted,
                   std::span<const double> target, int sample_rate);

// Fit from the direct-path peak down to the first sample at or below -10 dB,
// extrapolated to 60 dB. Empty when the curve never reaches -10 dB.
std::optional<double> Edt(std::span<const double> rir, int sample_rate);
std::optional<double> EdtDistance(std::span<const double> predicted,
                                  std::span<const double> target,
                                  int sample_rate);

// |10 log10(El/Er)_p - 10 log10(El/Er)_g| with E the sum of squared samples.
// Empty when any channel is silent.
std::optional<double> LreError(const StereoSignal& predicted,
                               const StereoSignal& target);

// Fields stay empty when they do not apply to a comparison.
struct MetricReport {
  std::optional<double> mag;          // left + right channels
  std::optional<double> mag_mixture;  // mixture magnitudes
  std::optional<double> env;
  std::optional<double> t60_pct;
  std::optional<double> c50_db;
  std::optional<double> edt_sec;
  std::optional<double> lre_db;
};

// Compares predicted and target binaural magnitudes and waveforms.
MetricReport CompareAudio(const BinauralMagnitudes& predicted,
                          const BinauralMagnitudes& target,
                          const StereoSignal& predicted_audio,
                          const StereoSignal& target_audio);

// Compares impulse responses: T60, C50 and EDT are averaged over the two
// channels, LRE uses the channel pair. Invalid channels are skipped.
MetricReport CompareRirs(const StereoSignal& predicted,
                         const StereoSignal& target, int sample_rate);

// Unweighted mean over the reports that populate each field.
MetricReport MeanReport(std::span<const MetricReport> reports);

using NamedReport = std::pair<std::string, MetricReport>;

// {"clips": {id: report}, "mean": report}. Missing fields are null.
std::string MetricReportJson(std::span<const NamedReport> reports);
// Header plus one row per clip and a final "mean" row; missing fields empty.
std::string MetricReportCsv(std::span<const NamedReport> reports);

}  // namespace soaf

#endif  // SOAF_METRICS_H_
