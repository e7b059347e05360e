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

#include "soaf/posenc.h"

#include <cmath>
#include <numbers>

#include "soaf/error.h"

namespace soaf {

void ValidatePosEncConfig(const PosEncConfig& config) {
  if (config.num_frequencies < 1) {
    throw ValidationError("num_frequencies must be >= 1");
  }
}

int PosEncSize(const PosEncConfig& config) {
  return 3 * (2 * config.num_frequencies + (config.include_input ? 1 : 0));
}

Vec3 NormalizeToBounds(Vec3 p, const Bounds& bounds) {
  auto axis = [](double v, double lo, double hi) {
    const double half = 0.5 * (hi - lo);
    if (!(half > 0.0)) return 0.0;
    return (v - 0.5 * (lo + hi)) / half;
  };
  return {axis(p.x, bounds.min.x, bounds.max.x),
          axis(p.y, bounds.min.y, bounds.max.y),
          axis(p.z, bounds.z_lo, bounds.z_hi)};
}

std::vector<double> PositionalEncoding(Vec3 p, const PosEncConfig& config) {
  ValidatePosEncConfig(config);
  if (!IsFinite(p)) throw DomainError("non-finite position");
  std::vector<double> out;
  out.reserve(PosEncSize(config));
  const double coords[3] = {p.x, p.y, p.z};
  if (config.include_input) out.insert(out.end(), coords, coords + 3);
  double scale = std::numbers::pi;
  for (int k = 0; k < config.num_frequencies; ++k, scale *= 2.0) {
    for (double c : coords) out.push_back(std::sin(scale * c));
    for (double c : coords) out.push_back(std::cos(scale * c));
  }
  return out;
}

}  // namespace soaf
