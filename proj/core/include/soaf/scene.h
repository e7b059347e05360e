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

#ifndef SOAF_SCENE_H_
#define SOAF_SCENE_H_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "soaf/vec.h"

namespace soaf {

// Axis-aligned room extent. The xy rectangle is closed; z spans [z_lo, z_hi].
struct Bounds {
  Vec2 min;
  Vec2 max;
  double z_lo = 0.0;
  double z_hi = 0.0;

  bool Contains(Vec3 p) const;
  bool Contains2D(Vec2 p) const;
  double MidHeight() const { return 0.5 * (z_lo + z_hi); }
  Vec3 Center() const;
  // Length of the 3D box diagonal. Used to make tolerances scale-free.
  double Diagonal() const;
  // The eight box corners.
  std::vector<Vec3> Corners() const;
};

// A wall as seen in the mid-height plane.
struct WallSegment {
  Vec2 a;
  Vec2 b;
};

struct SceneLayout {
  Bounds bounds;
  std::vector<WallSegment> walls;
  Vec3 source;
  double tau = 0.25;
};

// Receiver pose. `gaze` is a unit vector that is not vertical.
struct Pose {
  Vec3 position;
  Vec3 gaze{1.0, 0.0, 0.0};
};

// Throws ValidationError naming the first violated invariant.
void ValidateScene(const SceneLayout& scene);
void ValidatePose(const Pose& pose);

// Scene file: {"bounds": {"min": [x, y], "max": [x, y], "z": [lo, hi]},
//              "walls": [[[ax, ay], [bx, by]], ...],
//              "source": [x, y, z], "tau": t}
// Throws ParseError on malformed JSON and ValidationError on bad values.
SceneLayout ParseScene(std::string_view json_text);
SceneLayout LoadScene(const std::filesystem::path& path);
std::string SceneToJson(const SceneLayout& scene);

// Pose list file: [{"position": [x, y, z], "gaze": [x, y, z]}, ...].
std::vector<Pose> ParsePoses(std::string_view json_text);
std::vector<Pose> LoadPoses(const std::filesystem::path& path);
std::string PosesToJson(const std::vector<Pose>& poses);

// Reads a whole file; throws IoError with "no such file" when missing.
std::string ReadTextFile(const std::filesystem::path& path);

}  // namespace soaf

#endif  // SOAF_SCENE_H_
