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

#include "soaf/local_field.h"

#include <cmath>
#include <numbers>

#include <nlohmann/json.hpp>
#include "soaf/binary_io.h"
#include "soaf/error.h"

namespace soaf {

void ValidateLocalFieldConfig(const LocalFieldConfig& config) {
  if (config.num_directions < 4) {
    throw ValidationError("local field needs at least 4 directions");
  }
  if (config.samples_per_ray < 1) {
    throw ValidationError("local field needs at least 1 sample per ray");
  }
  if (!(config.r_min > 0.0 && config.r_min < config.r_max)) {
    throw ValidationError("local field radii must satisfy 0 < r_min < r_max");
  }
}

SphereDirections FibonacciDirections(int count) {
  if (count < 4) throw DomainError("Fibonacci sphere needs G >= 4");
  SphereDirections out;
  out.dirs.reserve(count);
  const double golden_angle = 2.0 * std::numbers::pi / std::numbers::phi;
  for (int k = 0; k < count; ++k) {
    const double z = 1.0 - (2.0 * k + 1.0) / count;
    const double radius = std::sqrt(1.0 - z * z);
    const double azimuth = golden_angle * k;
    out.dirs.push_back(
        {radius * std::cos(azimuth), radius * std::sin(azimuth), z});
  }
  return out;
}

SphereDirections MirrorDirections(const SphereDirections& dirs, Vec3 normal) {
  SphereDirections out;
  out.dirs.reserve(dirs.dirs.size());
  for (const Vec3& d : dirs.dirs) {
    const double along = Dot(d, normal);
    out.dirs.push_back({d.x - 2.0 * along * normal.x,
                        d.y - 2.0 * along * normal.y,
                        d.z - 2.0 * along * normal.z});
  }
  return out;
}

LocalFeature SampleLocalField(Vec3 receiver, const GlobalField& field,
                              const SphereDirections& dirs,
                              const LocalFieldConfig& config) {
  ValidateLocalFieldConfig(config);
  if (!field.scene().bounds.Contains(receiver)) {
    throw DomainError("receiver outside scene bounds");
  }
  const int h = config.samples_per_ray;
  std::vector<double> radii(h);
  std::vector<double> weights(h);
  double weight_sum = 0.0;
  for (int i = 0; i < h; ++i) {
    radii[i] = h == 1 ? config.r_min
                      : config.r_min + (static_cast<double>(i) / (h - 1)) *
                                           (config.r_max - config.r_min);
    weights[i] = std::exp(-radii[i]);
    weight_sum += weights[i];
  }

  LocalFeature feature;
  feature.values.resize(dirs.dirs.size());
  for (size_t g = 0; g < dirs.dirs.size(); ++g) {
    double acc = 0.0;
    for (int i = 0; i < h; ++i) {
      const Vec3 p = receiver + radii[i] * dirs.dirs[g];
      acc += weights[i] * field.NormalizedOrZero(p);
    }
    feature.values[g] = acc / weight_sum;
  }
  return feature;
}

EarDirections ComputeEarDirections(const Pose& pose) {
  const Vec3 side = Cross(kUp, pose.gaze);
  const double len = Norm(side);
  if (len <= 1e-9) throw ValidationError("gaze is vertical");
  const Vec3 left = (1.0 / len) * side;
  return {left, -left};
}

std::vector<double> DirectionAttention(const SphereDirections& dirs, Vec3 d) {
  if (std::abs(Norm(d) - 1.0) > 1e-9) {
    throw DomainError("attention direction must be a unit vector");
  }
  std::vector<double> attention(dirs.dirs.size());
  for (size_t g = 0; g < dirs.dirs.size(); ++g) {
    attention[g] = Dot(dirs.dirs[g], d);
  }
  return attention;
}

std::vector<double> ApplyAttention(std::span<const double> feature,
                                   std::span<const double> attention) {
  if (feature.size() != attention.size()) {
    throw DomainError("feature and attention lengths differ");
  }
  std::vector<double> out(feature.size());
  for (size_t g = 0; g < feature.size(); ++g) {
    out[g] = feature[g] * attention[g];
  }
  return out;
}

BinauralFeatures ComputeBinauralFeatures(const Pose& pose,
                                         const GlobalField& field,
                                         const SphereDirections& dirs,
                                         const LocalFieldConfig& config) {
  const EarDirections ears = ComputeEarDirections(pose);
  BinauralFeatures out;
  out.local = SampleLocalField(pose.position, field, dirs, config);
  out.left =
      ApplyAttention(out.local.values, DirectionAttention(dirs, ears.left));
  out.right =
      ApplyAttention(out.local.values, DirectionAttention(dirs, ears.right));
  return out;
}

void WriteLocalFeatureDump(const LocalFeature& feature, const Pose& pose,
                           const LocalFieldConfig& config,
                           const std::filesystem::path& stem) {
  WriteF32File(WithSuffix(stem, ".f32"), feature.values);
  const Vec3& p = pose.position;
  const Vec3& g = pose.gaze;
  const nlohmann::json meta = {
      {"G", feature.values.size()},
      {"pose", {{"position", {p.x, p.y, p.z}}, {"gaze", {g.x, g.y, g.z}}}},
      {"config",
       {{"G", config.num_directions},
        {"H", config.samples_per_ray},
        {"r_min", config.r_min},
        {"r_max", config.r_max}}},
  };
  WriteTextFile(WithSuffix(stem, ".json"), meta.dump(2));
}

}  // namespace soaf
