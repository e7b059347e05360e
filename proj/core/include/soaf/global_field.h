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

#ifndef SOAF_GLOBAL_FIELD_H_
#define SOAF_GLOBAL_FIELD_H_

#include <cstdint>
#include <filesystem>
#include <vector>

#include "soaf/scene.h"
#include "soaf/vec.h"

namespace soaf {

struct FieldParams {
  double tau = 0.25;
  // Distances below this are clamped so the source itself stays finite.
  double d_floor = 0.1;
  // Rasterization density, cells per meter.
  double grid_resolution = 10.0;
};

// Params carrying the scene's transmission coefficient and default clamps.
FieldParams DefaultFieldParams(const SceneLayout& scene);
void ValidateFieldParams(const FieldParams& params);

// Inverse-square intensity attenuated by tau per crossed wall:
//   E = tau^n / (4 pi max(d, d_floor)^2).
// Throws DomainError when p lies outside the scene bounds.
double PriorRaw(Vec3 p, const SceneLayout& scene, const FieldParams& params);

// Occlusion-aware prior over one scene with its log-scale normalization
// precomputed. Immutable after construction; all queries are const.
class GlobalField {
 public:
  GlobalField(SceneLayout scene, FieldParams params);

  const SceneLayout& scene() const { return scene_; }
  const FieldParams& params() const { return params_; }

  // Largest occlusion count realized over the rasterization grid.
  int max_occlusions() const { return max_occlusions_; }
  // Normalization endpoints: E at d_floor with no walls, and E at the
  // farthest bounds corner behind max_occlusions() walls.
  double e_max() const { return e_max_; }
  double e_min() const { return e_min_; }
  double max_distance() const { return max_distance_; }

  double Raw(Vec3 p) const;
  // Log-scale normalized prior in [0, 1]. tau == 0 with at least one wall
  // crossed maps to 0.
  double Normalized(Vec3 p) const;
  // Like Normalized() but returns 0 outside the bounds instead of throwing.
  double NormalizedOrZero(Vec3 p) const;
  // Normalization of an already computed raw value and wall count.
  double NormalizeRaw(double raw, int occlusions) const;

 private:
  SceneLayout scene_;
  FieldParams params_;
  int max_occlusions_ = 0;
  double max_distance_ = 0.0;
  double e_max_ = 0.0;
  double e_min_ = 0.0;
  double log_e_min_ = 0.0;
  double log_range_ = 1.0;
};

// One-shot convenience; builds a GlobalField per call.
double PriorNormalized(Vec3 p, const SceneLayout& scene,
                       const FieldParams& params);

// Normalized prior sampled at mid-height cell centers. Row-major, row j
// covers y in [origin.y + j * cell_size, origin.y + (j + 1) * cell_size).
struct FieldGrid {
  Vec2 origin;
  double cell_size = 0.0;
  int width = 0;
  int height = 0;
  std::vector<double> values;

  double at(int i, int j) const { return values[j * width + i]; }
  Vec2 CellCenter(int i, int j) const {
    return {origin.x + (i + 0.5) * cell_size, origin.y + (j + 0.5) * cell_size};
  }
};

// Grid geometry for a scene at a given resolution (values left empty).
FieldGrid MakeGridLayout(const Bounds& bounds, double grid_resolution);

FieldGrid RasterizeField(const GlobalField& field);
FieldGrid RasterizeField(const SceneLayout& scene, const FieldParams& params);

// 8-bit grayscale pixels, value v -> floor(255 v + 0.5). Row 0 of the image
// is the grid's top row (largest y).
std::vector<std::uint8_t> HeatmapPixels(const FieldGrid& grid);
// Binary PGM (P5).
void ExportHeatmap(const FieldGrid& grid, const std::filesystem::path& path);
// `<stem>.f32` (little-endian float32, row-major) plus `<stem>.json`
// {origin, cell_size, width, height}.
void WriteFieldGridDump(const FieldGrid& grid,
                        const std::filesystem::path& stem);
FieldGrid ReadFieldGridDump(const std::filesystem::path& stem);

}  // namespace soaf

#endif  // SOAF_GLOBAL_FIELD_H_
