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

#include "soaf/scene.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>
#include "soaf/error.h"

namespace soaf {
namespace {

using nlohmann::json;

constexpr double kMinWallLength = 1e-6;
constexpr double kUnitTolerance = 1e-9;

double ReadNumber(const json& j, const char* what) {
  if (!j.is_number()) {
    throw ParseError(std::string("expected a number for ") + what);
  }
  return j.get<double>();
}

Vec2 ReadVec2(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 2) {
    throw ParseError(std::string("expected [x, y] for ") + what);
  }
  return {ReadNumber(j[0], what), ReadNumber(j[1], what)};
}

Vec3 ReadVec3(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 3) {
    throw ParseError(std::string("expected [x, y, z] for ") + what);
  }
  return {ReadNumber(j[0], what), ReadNumber(j[1], what),
          ReadNumber(j[2], what)};
}

const json& Field(const json& j, const char* name) {
  auto it = j.find(name);
  if (it == j.end()) {
    throw ParseError(std::string("missing field '") + name + "'");
  }
  return *it;
}

json ParseJson(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace

bool Bounds::Contains2D(Vec2 p) const {
  return p.x >= min.x && p.x <= max.x && p.y >= min.y && p.y <= max.y;
}

bool Bounds::Contains(Vec3 p) const {
  return Contains2D(p.xy()) && p.z >= z_lo && p.z <= z_hi;
}

Vec3 Bounds::Center() const {
  return {0.5 * (min.x + max.x), 0.5 * (min.y + max.y), MidHeight()};
}

double Bounds::Diagonal() const {
  return Norm(Vec3{max.x - min.x, max.y - min.y, z_hi - z_lo});
}

std::vector<Vec3> Bounds::Corners() const {
  std::vector<Vec3> corners;
  corners.reserve(8);
  for (double x : {min.x, max.x}) {
    for (double y : {min.y, max.y}) {
      for (double z : {z_lo, z_hi}) corners.push_back({x, y, z});
    }
  }
  return corners;
}

void ValidateScene(const SceneLayout& scene) {
  const Bounds& b = scene.bounds;
  if (!(b.max.x > b.min.x) || !(b.max.y > b.min.y) || !(b.z_hi >= b.z_lo)) {
    throw ValidationError("bounds are empty or inverted");
  }
  if (!std::isfinite(b.min.x) || !std::isfinite(b.min.y) ||
      !std::isfinite(b.max.x) || !std::isfinite(b.max.y) ||
      !std::isfinite(b.z_lo) || !std::isfinite(b.z_hi)) {
    throw ValidationError("bounds are not finite");
  }
  if (!(scene.tau >= 0.0 && scene.tau <= 1.0)) {
    throw ValidationError("tau out of range [0, 1]");
  }
  if (!IsFinite(scene.source)) {
    throw ValidationError("source is not finite");
  }
  if (!b.Contains(scene.source)) {
    throw ValidationError("source outside bounds");
  }
  for (size_t i = 0; i < scene.walls.size(); ++i) {
    const WallSegment& w = scene.walls[i];
    const std::string id = "wall " + std::to_string(i);
    if (!b.Contains2D(w.a) || !b.Contains2D(w.b)) {
      throw ValidationError(id + " endpoint outside bounds");
    }
    if (Norm(w.b - w.a) <= kMinWallLength) {
      throw ValidationError(id + " is degenerate (length <= 1e-6 m)");
    }
  }
}

void ValidatePose(const Pose& pose) {
  if (!IsFinite(pose.position) || !IsFinite(pose.gaze)) {
    throw ValidationError("pose is not finite");
  }
  if (std::abs(Norm(pose.gaze) - 1.0) > kUnitTolerance) {
    throw ValidationError("gaze is not a unit vector");
  }
  if (std::hypot(pose.gaze.x, pose.gaze.y) <= kUnitTolerance) {
    throw ValidationError("gaze is vertical");
  }
}

SceneLayout ParseScene(std::string_view json_text) {
  const json root = ParseJson(json_text);
  if (!root.is_object()) throw ParseError("scene must be a JSON object");
  SceneLayout scene;
  try {
    const json& bounds = Field(root, "bounds");
    scene.bounds.min = ReadVec2(Field(bounds, "min"), "bounds.min");
    scene.bounds.max = ReadVec2(Field(bounds, "max"), "bounds.max");
    const Vec2 z = ReadVec2(Field(bounds, "z"), "bounds.z");
    scene.bounds.z_lo = z.x;
    scene.bounds.z_hi = z.y;
    const json& walls = Field(root, "walls");
    if (!walls.is_array()) throw ParseError("walls must be an array");
    for (const json& w : walls) {
      if (!w.is_array() || w.size() != 2) {
        throw ParseError("each wall must be [[ax, ay], [bx, by]]");
      }
      scene.walls.push_back({ReadVec2(w[0], "wall"), ReadVec2(w[1], "wall")});
    }
    scene.source = ReadVec3(Field(root, "source"), "source");
    scene.tau = ReadNumber(Field(root, "tau"), "tau");
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad scene: ") + e.what());
  }
  ValidateScene(scene);
  return scene;
}

std::string ReadTextFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path.string() + ": no such file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

SceneLayout LoadScene(const std::filesystem::path& path) {
  return ParseScene(ReadTextFile(path));
}

std::string SceneToJson(const SceneLayout& scene) {
  json walls = json::array();
  for (const WallSegment& w : scene.walls) {
    walls.push_back({{w.a.x, w.a.y}, {w.b.x, w.b.y}});
  }
  const Bounds& b = scene.bounds;
  json root = {
      {"bounds",
       {{"min", {b.min.x, b.min.y}},
        {"max", {b.max.x, b.max.y}},
        {"z", {b.z_lo, b.z_hi}}}},
      {"walls", walls},
      {"source", {scene.source.x, scene.source.y, scene.source.z}},
      {"tau", scene.tau},
  };
  return root.dump(2);
}

std::vector<Pose> ParsePoses(std::string_view json_text) {
  const json root = ParseJson(json_text);
  if (!root.is_array()) throw ParseError("pose list must be a JSON array");
  std::vector<Pose> poses;
  for (const json& p : root) {
    if (!p.is_object()) throw ParseError("pose must be an object");
    Pose pose{ReadVec3(Field(p, "position"), "position"),
              ReadVec3(Field(p, "gaze"), "gaze")};
    ValidatePose(pose);
    poses.push_back(pose);
  }
  return poses;
}

std::vector<Pose> LoadPoses(const std::filesystem::path& path) {
  return ParsePoses(ReadTextFile(path));
}

std::string PosesToJson(const std::vector<Pose>& poses) {
  json root = json::array();
  for (const Pose& p : poses) {
    root.push_back({{"position", {p.position.x, p.position.y, p.position.z}},
                    {"gaze", {p.gaze.x, p.gaze.y, p.gaze.z}}});
  }
  return root.dump(2);
}

}  // namespace soaf
