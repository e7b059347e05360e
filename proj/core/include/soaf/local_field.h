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

#ifndef SOAF_LOCAL_FIELD_H_
#define SOAF_LOCAL_FIELD_H_

#include <filesystem>
#include <span>
#include <vector>

#include "soaf/global_field.h"
#include "soaf/scene.h"
#include "soaf/vec.h"

namespace soaf {

struct SphereDirections {
  std::vector<Vec3> dirs;

  int size() const { return static_cast<int>(dirs.size()); }
};

struct LocalFieldConfig {
  int num_directions = 1024;  // G
  int samples_per_ray = 10;   // H
  double r_min = 0.01;
  double r_max = 1.0;
};

void ValidateLocalFieldConfig(const LocalFieldConfig& config);

// Golden-spiral lattice: point k has z = 1 - (2k + 1) / G and azimuth
// 2 pi k / phi. Requires G >= 4.
SphereDirections FibonacciDirections(int count);

// Reflection of every direction across the plane through the origin with
// unit normal `normal`.
SphereDirections MirrorDirections(const SphereDirections& dirs, Vec3 normal);

// Per-direction prior around a receiver, values in [0, 1].
struct LocalFeature {
  std::vector<double> values;
};

// For each direction g: the e^{-r}-weighted mean of the normalized prior at
// H points p + r_i * dir_g, r_i evenly spaced over [r_min, r_max] (r_min only
// when H == 1). Samples outside the bounds contribute 0.
// Throws DomainError when the receiver is outside the bounds.
LocalFeature SampleLocalField(Vec3 receiver, const GlobalField& field,
                              const SphereDirections& dirs,
                              const LocalFieldConfig& config);

struct EarDirections {
  Vec3 left;
  Vec3 right;
};

// left = normalize(up x gaze), right = -left. Throws ValidationError for a
// vertical gaze.
EarDirections ComputeEarDirections(const Pose& pose);

// Cosine similarity of every lattice direction with the unit vector `d`.
// Throws DomainError when |d| deviates from 1 by more than 1e-9.
std::vector<double> DirectionAttention(const SphereDirections& dirs, Vec3 d);

// Element-wise product. Throws DomainError on length mismatch.
std::vector<double> ApplyAttention(std::span<const double> feature,
                                   std::span<const double> attention);

// Local feature plus the two ear-attended variants.
struct BinauralFeatures {
  LocalFeature local;
  std::vector<double> left;
  std::vector<double> right;
};

BinauralFeatures ComputeBinauralFeatures(const Pose& pose,
                                         const GlobalField& field,
                                         const SphereDirections& dirs,
                                         const LocalFieldConfig& config);

// `<stem>.f32` plus `<stem>.json` {G, pose, config}.
void WriteLocalFeatureDump(const LocalFeature& feature, const Pose& pose,
                           const LocalFieldConfig& config,
                           const std::filesystem::path& stem);

}  // namespace soaf

#endif  // SOAF_LOCAL_FIELD_H_
