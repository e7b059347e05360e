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

#include "soaf/global_field.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <nlohmann/json.hpp>
#include "soaf/binary_io.h"
#include "soaf/error.h"
#include "soaf/occlusion.h"

namespace soaf {
namespace {

constexpr double kCoincident = 1e-9;

double InverseSquare(double distance) {
  return 1.0 / (4.0 * std::numbers::pi * distance * distance);
}

int OcclusionsToSource(Vec3 p, const SceneLayout& scene) {
  if (Distance(p, scene.source) <= kCoincident) return 0;
  return CountOcclusions(p, scene.source, scene);
}

double RawWithCount(Vec3 p, const SceneLayout& scene, const FieldParams& params,
                    int* occlusions) {
  if (!scene.bounds.Contains(p)) {
    throw DomainError("point outside scene bounds");
  }
  const int n = OcclusionsToSource(p, scene);
  if (occlusions != nullptr) *occlusions = n;
  const double d = std::max(Distance(p, scene.source), params.d_floor);
  return InverseSquare(d) * std::pow(params.tau, n);
}

}  // namespace

FieldParams DefaultFieldParams(const SceneLayout& scene) {
  FieldParams params;
  params.tau = scene.tau;
  return params;
}

void ValidateFieldParams(const FieldParams& params) {
  if (!(params.tau >= 0.0 && params.tau <= 1.0)) {
    throw ValidationError("tau out of range [0, 1]");
  }
  if (!(params.d_floor > 0.0)) throw ValidationError("d_floor must be > 0");
  if (!(params.grid_resolution > 0.0) ||
      !std::isfinite(params.grid_resolution)) {
    throw ValidationError("grid_resolution must be > 0");
  }
}

double PriorRaw(Vec3 p, const SceneLayout& scene, const FieldParams& params) {
  return RawWithCount(p, scene, params, nullptr);
}

GlobalField::GlobalField(SceneLayout scene, FieldParams params)
    : scene_(std::move(scene)), params_(params) {
  ValidateScene(scene_);
  ValidateFieldParams(params_);

  const FieldGrid layout =
      MakeGridLayout(scene_.bounds, params_.grid_resolution);
  const double z = scene_.bounds.MidHeight();
  for (int j = 0; j < layout.height; ++j) {
    for (int i = 0; i < layout.width; ++i) {
      const Vec2 c = layout.CellCenter(i, j);
      const Vec3 p{c.x, c.y, z};
      if (!scene_.bounds.Contains(p)) continue;
      max_occlusions_ =
          std::max(max_occlusions_, OcclusionsToSource(p, scene_));
    }
  }
  for (const Vec3& corner : scene_.bounds.Corners()) {
    max_distance_ = std::max(max_distance_, Distance(corner, scene_.source));
  }

  e_max_ = InverseSquare(params_.d_floor);
  // With tau == 0 every occluded point bypasses the log map, so the lower
  // endpoint only has to cover unoccluded points.
  const int n_lower = params_.tau > 0.0 ? max_occlusions_ : 0;
  e_min_ = InverseSquare(std::max(max_distance_, params_.d_floor)) *
           std::pow(params_.tau, n_lower);
  if (!(e_max_ > e_min_)) {
    throw ConfigError("degenerate normalization: E_max == E_min");
  }
  log_e_min_ = std::log(e_min_);
  log_range_ = std::log(e_max_) - log_e_min_;
}

double GlobalField::Raw(Vec3 p) const {
  return RawWithCount(p, scene_, params_, nullptr);
}

double GlobalField::NormalizeRaw(double raw, int occlusions) const {
  if (occlusions > 0 && params_.tau == 0.0) return 0.0;
  if (!(raw > 0.0)) return 0.0;
  const double v = (std::log(raw) - log_e_min_) / log_range_;
  return std::clamp(v, 0.0, 1.0);
}

double GlobalField::Normalized(Vec3 p) const {
  int n = 0;
  const double raw = RawWithCount(p, scene_, params_, &n);
  return NormalizeRaw(raw, n);
}

double GlobalField::NormalizedOrZero(Vec3 p) const {
  if (!scene_.bounds.Contains(p)) return 0.0;
  return Normalized(p);
}

double PriorNormalized(Vec3 p, const SceneLayout& scene,
                       const FieldParams& params) {
  return GlobalField(scene, params).Normalized(p);
}

FieldGrid MakeGridLayout(const Bounds& bounds, double grid_resolution) {
  FieldGrid grid;
  grid.origin = bounds.min;
  grid.cell_size = 1.0 / grid_resolution;
  // The small slack keeps exact multiples from gaining a sliver column.
  grid.width =
      std::max(1, static_cast<int>(std::ceil(
                      (bounds.max.x - bounds.min.x) * grid_resolution - 1e-9)));
  grid.height =
      std::max(1, static_cast<int>(std::ceil(
                      (bounds.max.y - bounds.min.y) * grid_resolution - 1e-9)));
  return grid;
}

FieldGrid RasterizeField(const GlobalField& field) {
  const Bounds& bounds = field.scene().bounds;
  FieldGrid grid = MakeGridLayout(bounds, field.params().grid_resolution);
  grid.values.assign(static_cast<size_t>(grid.width) * grid.height, 0.0);
  const double z = bounds.MidHeight();
  for (int j = 0; j < grid.height; ++j) {
    for (int i = 0; i < grid.width; ++i) {
      const Vec2 c = grid.CellCenter(i, j);
      grid.values[j * grid.width + i] = field.NormalizedOrZero({c.x, c.y, z});
    }
  }
  return grid;
}

FieldGrid RasterizeField(const SceneLayout& scene, const FieldParams& params) {
  return RasterizeField(GlobalField(scene, params));
}

std::vector<std::uint8_t> HeatmapPixels(const FieldGrid& grid) {
  if (grid.values.size() != static_cast<size_t>(grid.width) * grid.height) {
    throw DomainError("field grid size does not match its dimensions");
  }
  std::vector<std::uint8_t> pixels(grid.values.size());
  for (int row = 0; row < grid.height; ++row) {
    const int j = grid.height - 1 - row;
    for (int i = 0; i < grid.width; ++i) {
      const double v = std::clamp(grid.at(i, j), 0.0, 1.0);
      pixels[row * grid.width + i] =
          static_cast<std::uint8_t>(std::floor(255.0 * v + 0.5));
    }
  }
  return pixels;
}

void ExportHeatmap(const FieldGrid& grid, const std::filesystem::path& path) {
  const std::vector<std::uint8_t> pixels = HeatmapPixels(grid);
  std::string bytes = "P5\n" + std::to_string(grid.width) + " " +
                      std::to_string(grid.height) + "\n255\n";
  bytes.append(pixels.begin(), pixels.end());
  WriteTextFile(path, bytes);
}

void WriteFieldGridDump(const FieldGrid& grid,
                        const std::filesystem::path& stem) {
  WriteF32File(WithSuffix(stem, ".f32"), grid.values);
  const nlohmann::json meta = {
      {"origin", {grid.origin.x, grid.origin.y}},
      {"cell_size", grid.cell_size},
      {"width", grid.width},
      {"height", grid.height},
  };
  WriteTextFile(WithSuffix(stem, ".json"), meta.dump(2));
}

FieldGrid ReadFieldGridDump(const std::filesystem::path& stem) {
  FieldGrid grid;
  try {
    const auto meta =
        nlohmann::json::parse(ReadTextFile(WithSuffix(stem, ".json")));
    grid.origin = {meta.at("origin").at(0).get<double>(),
                   meta.at("origin").at(1).get<double>()};
    grid.cell_size = meta.at("cell_size").get<double>();
    grid.width = meta.at("width").get<int>();
    grid.height = meta.at("height").get<int>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad field grid sidecar: ") + e.what());
  }
  grid.values = ReadF32File(WithSuffix(stem, ".f32"));
  if (grid.values.size() != static_cast<size_t>(grid.width) * grid.height) {
    throw ParseError("field grid blob does not match sidecar dimensions");
  }
  return grid;
}

}  // namespace soaf
