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

#include "soaf/metrics.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <nlohmann/json.hpp>

#include "soaf/error.h"

namespace soaf {
namespace {

double Energy(std::span<const double> x) {
  double e = 0.0;
  for (double v : x) e += v * v;
  return e;
}

size_t FirstAtOrBelow(std::span<const double> curve, double level,
                      size_t from) {
  for (size_t i = from; i < curve.size(); ++i) {
    if (curve[i] <= level) return i;
  }
  return curve.size();
}

std::optional<double> Diff(std::optional<double> a, std::optional<double> b) {
  if (!a || !b) return std::nullopt;
  return std::abs(*a - *b);
}

// Mean of the values present; empty when none is.
std::optional<double> MeanOf(std::initializer_list<std::optional<double>> xs) {
  double sum = 0.0;
  int count = 0;
  for (const auto& x : xs) {
    if (x) {
      sum += *x;
      ++count;
    }
  }
  if (count == 0) return std::nullopt;
  return sum / count;
}

using Field = std::optional<double> MetricReport::*;

struct FieldName {
  const char* name;
  Field field;
};

constexpr FieldName kFields[] = {
    {"mag", &MetricReport::mag},
    {"mag_mixture", &MetricReport::mag_mixture},
    {"env", &MetricReport::env},
    {"t60_pct", &MetricReport::t60_pct},
    {"c50_db", &MetricReport::c50_db},
    {"edt_sec", &MetricReport::edt_sec},
    {"lre_db", &MetricReport::lre_db},
};

nlohmann::json ReportJson(const MetricReport& r) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& f : kFields) {
    const auto& v = r.*(f.field);
    j[f.name] = v ? nlohmann::json(*v) : nlohmann::json(nullptr);
  }
  return j;
}

void CsvRow(std::ostringstream& out, const std::string& id,
            const MetricReport& r) {
  out << id;
  for (const auto& f : kFields) {
    out << ',';
    if (const auto& v = r.*(f.field)) out << *v;
  }
  out << '\n';
}

}  // namespace

double MagDistance(const TfArray& predicted, const TfArray& target) {
  if (!predicted.SameShape(target))
    throw DomainError("magnitude shape mismatch");
  double sum = 0.0;
  for (size_t i = 0; i < target.data.size(); ++i) {
    const double d = predicted.data[i] - target.data[i];
    sum += d * d;
  }
  return sum;
}

double EnvDistance(std::span<const double> predicted,
                   std::span<const double> target) {
  if (predicted.size() != target.size()) throw DomainError("length mismatch");
  const std::vector<double> a = HilbertEnvelope(predicted);
  const std::vector<double> b = HilbertEnvelope(target);
  double sum = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    sum += d * d;
  }
  return sum;
}

double EnvDistance(const StereoSignal& predicted, const StereoSignal& target) {
  return EnvDistance(predicted.left, target.left) +
         EnvDistance(predicted.right, target.right);
}

std::vector<double> SchroederDecay(std::span<const double> rir) {
  if (rir.empty()) throw DomainError("empty impulse response");
  std::vector<double> tail(rir.size());
  double acc = 0.0;
  for (size_t i = rir.size(); i-- > 0;) {
    acc += rir[i] * rir[i];
    tail[i] = acc;
  }
  if (!(acc > 0.0)) throw DomainError("all-zero impulse response");
  const double total = acc;
  for (double& v : tail) {
    v = v > 0.0 ? std::max(10.0 * std::log10(v / total), kDecayFloorDb)
                : kDecayFloorDb;
  }
  return tail;
}

double DecaySlope(std::span<const double> decay_db, size_t first, size_t last,
                  int sample_rate) {
  if (last <= first || last >= decay_db.size()) {
    throw DomainError("decay fit needs at least two samples");
  }
  const double n = static_cast<double>(last - first + 1);
  double mean_t = 0.0, mean_y = 0.0;
  for (size_t i = first; i <= last; ++i) {
    mean_t += static_cast<double>(i) / sample_rate;
    mean_y += decay_db[i];
  }
  mean_t /= n;
  mean_y /= n;
  double sxy = 0.0, sxx = 0.0;
  for (size_t i = first; i <= last; ++i) {
    const double dt = static_cast<double>(i) / sample_rate - mean_t;
    sxy += dt * (decay_db[i] - mean_y);
    sxx += dt * dt;
  }
  return sxy / sxx;
}

std::optional<double> T60(std::span<const double> rir, int sample_rate) {
  const std::vector<double> decay = SchroederDecay(rir);
  const size_t start = FirstAtOrBelow(decay, -5.0, 0);
  const size_t stop = FirstAtOrBelow(decay, -35.0, start);
  if (stop >= decay.size() || stop <= start) return std::nullopt;
  const double slope = DecaySlope(decay, start, stop, sample_rate);
  if (!(slope < 0.0)) return std::nullopt;
  return -60.0 / slope;
}

std::optional<double> T60Error(std::span<const double> predicted,
                               std::span<const double> target,
                               int sample_rate) {
  const auto p = T60(predicted, sample_rate);
  const auto g = T60(target, sample_rate);
  if (!p || !g) return std::nullopt;
  return 100.0 * std::abs(*p - *g) / *g;
}

double C50(std::span<const double> rir, int sample_rate) {
  const size_t early = static_cast<size_t>(std::ceil(0.05 * sample_rate));
  if (rir.size() <= early)
    throw DomainError("impulse response shorter than 50 ms");
  const double e_early = Energy(rir.first(early));
  const double e_late = Energy(rir.subspan(early));
  if (e_late == 0.0 && e_early == 0.0)
    throw DomainError("all-zero impulse response");
  if (e_late == 0.0) return kC50ClampDb;
  if (e_early == 0.0) return -kC50ClampDb;
  return std::clamp(10.0 * std::log10(e_early / e_late), -kC50ClampDb,
                    kC50ClampDb);
}

double C50Distance(std::span<const double> predicted,
                   std::span<const double> target, int sample_rate) {
  return std::abs(C50(predicted, sample_rate) - C50(target, sample_rate));
}

std::optional<double> Edt(std::span<const double> rir, int sample_rate) {
  const std::vector<double> decay = SchroederDecay(rir);
  size_t onset = 0;
  for (size_t i = 1; i < rir.size(); ++i) {
    if (std::abs(rir[i]) > std::abs(rir[onset])) onset = i;
  }
  const size_t stop = FirstAtOrBelow(decay, -10.0, onset + 1);
  if (stop >= decay.size()) return std::nullopt;
  const double slope = DecaySlope(decay, onset, stop, sample_rate);
  if (!(slope < 0.0)) return std::nullopt;
  return -60.0 / slope;
}

std::optional<double> EdtDistance(std::span<const double> predicted,
                                  std::span<const double> target,
                                  int sample_rate) {
  return Diff(Edt(predicted, sample_rate), Edt(target, sample_rate));
}

std::optional<double> LreError(const StereoSignal& predicted,
                               const StereoSignal& target) {
  if (predicted.left.size() != target.left.size() ||
      predicted.right.size() != target.right.size() ||
      predicted.left.size() != predicted.right.size()) {
    throw DomainError("length mismatch");
  }
  const double pl = Energy(predicted.left), pr = Energy(predicted.right);
  const double gl = Energy(target.left), gr = Energy(target.right);
  if (pl < kSilentEnergy || pr < kSilentEnergy || gl < kSilentEnergy ||
      gr < kSilentEnergy) {
    return std::nullopt;
  }
  return std::abs(10.0 * std::log10(pl / pr) - 10.0 * std::log10(gl / gr));
}

MetricReport CompareAudio(const BinauralMagnitudes& predicted,
                          const BinauralMagnitudes& target,
                          const StereoSignal& predicted_audio,
                          const StereoSignal& target_audio) {
  MetricReport r;
  r.mag = MagDistance(predicted.left, target.left) +
          MagDistance(predicted.right, target.right);
  r.mag_mixture = MagDistance(predicted.mixture, target.mixture);
  r.env = EnvDistance(predicted_audio, target_audio);
  r.lre_db = LreError(predicted_audio, target_audio);
  return r;
}

MetricReport CompareRirs(const StereoSignal& predicted,
                         const StereoSignal& target, int sample_rate) {
  auto safe = [](auto&& fn) -> std::optional<double> {
    try {
      return fn();
    } catch (const DomainError&) {
      return std::nullopt;
    }
  };
  MetricReport r;
  r.t60_pct = MeanOf(
      {safe([&] { return T60Error(predicted.left, target.left, sample_rate); }),
       safe([&] {
         return T60Error(predicted.right, target.right, sample_rate);
       })});
  r.c50_db = MeanOf({safe([&] {
                       return std::optional(C50Distance(
                           predicted.left, target.left, sample_rate));
                     }),
                     safe([&] {
                       return std::optional(C50Distance(
                           predicted.right, target.right, sample_rate));
                     })});
  r.edt_sec =
      MeanOf({safe([&] {
                return EdtDistance(predicted.left, target.left, sample_rate);
              }),
              safe([&] {
                return EdtDistance(predicted.right, target.right, sample_rate);
              })});
  r.lre_db = LreError(predicted, target);
  return r;
}

MetricReport MeanReport(std::span<const MetricReport> reports) {
  MetricReport mean;
  for (const auto& f : kFields) {
    double sum = 0.0;
    int count = 0;
    for (const auto& r : reports) {
      if (const auto& v = r.*(f.field)) {
        sum += *v;
        ++count;
      }
    }
    if (count > 0) mean.*(f.field) = sum / count;
  }
  return mean;
}

std::string MetricReportJson(std::span<const NamedReport> reports) {
  nlohmann::json clips = nlohmann::json::object();
  std::vector<MetricReport> all;
  for (const auto& [id, r] : reports) {
    clips[id] = ReportJson(r);
    all.push_back(r);
  }
  const nlohmann::json out = {{"clips", clips},
                              {"mean", ReportJson(MeanReport(all))}};
  return out.dump(2);
}

std::string MetricReportCsv(std::span<const NamedReport> reports) {
  std::ostringstream out;
  out.precision(17);
  out << "clip";
  for (const auto& f : kFields) out << ',' << f.name;
  out << '\n';
  std::vector<MetricReport> all;
  for (const auto& [id, r] : reports) {
    CsvRow(out, id, r);
    all.push_back(r);
  }
  CsvRow(out, "mean", MeanReport(all));
  return out.str();
}

}  // namespace soaf
