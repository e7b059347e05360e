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

#ifndef SOAF_OCCLUSION_H_
#define SOAF_OCCLUSION_H_

#include "soaf/scene.h"
#include "soaf/vec.h"

namespace soaf {

// Number of walls crossed by the segment p->q in the mid-height plane; z is
// ignored. A wall counts iff p and q lie strictly on opposite sides of its
// supporting line and the crossing point lies within the wall's closed
// extent. Touching a wall without changing side counts 0. A query whose xy
// projection collapses to a point returns 0.
//
// Parametric solve with a tolerance of 1e-9 in units of the bounds diagonal.
// Throws DomainError when p == q (within 1e-9 m).
int CountOcclusions(Vec3 p, Vec3 q, const SceneLayout& scene);

// Same contract as CountOcclusions, computed from exact orientation
// predicates on the segment endpoints (floating-point filter with an exact
// rational fallback). No division and no tolerance.
int CountOcclusionsOracle(Vec3 p, Vec3 q, const SceneLayout& scene);

// Sign of the orientation determinant of (a, b, c): +1 counter-clockwise,
// -1 clockwise, 0 collinear. Exact for all finite inputs.
int Orient2dExact(Vec2 a, Vec2 b, Vec2 c);

}  // namespace soaf

#endif  // SOAF_OCCLUSION_H_
