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

#include "soaf/occlusion.h"

#include <cmath>
#include <limits>

#include <boost/multiprecision/cpp_int.hpp>

#include "soaf/error.h"

namespace soaf {
namespace {

constexpr double kDegenerateQuery = 1e-9;
constexpr double kRelativeEpsilon = 1e-9;

void CheckQuery(Vec3 p, Vec3 q) {
  if (Distance(p, q) <= kDegenerateQuery) {
    throw DomainError("degenerate occlusion query: p == q");
  }
}

int Sign(double v) { return (v > 0.0) - (v < 0.0); }

}  // namespace

int CountOcclusions(Vec3 p, Vec3 q, const SceneLayout& scene) {
  CheckQuery(p, q);
  const double eps = kRelativeEpsilon * scene.bounds.Diagonal();
  const Vec2 origin = p.xy();
  const Vec2 r = q.xy() - origin;
  const double r_len = Norm(r);
  if (r_len <= eps) return 0;

  int count = 0;
  for (const WallSegment& wall : scene.walls) {
    const Vec2 s = wall.b - wall.a;
    const double s_len = Norm(s);
    const double denom = Cross(r, s);
    // Parallel or collinear: the query never strictly changes side.
    if (std::abs(denom) <= 1e-12 * r_len * s_len) continue;
    const Vec2 ap = wall.a - origin;
    const double t = Cross(ap, s) / denom;  // along the query
    const double u = Cross(ap, r) / denom;  // along the wall
    const double t_tol = eps / r_len;
    const double u_tol = eps / s_len;
    if (t > t_tol && t < 1.0 - t_tol && u >= -u_tol && u <= 1.0 + u_tol) {
      ++count;
    }
  }
  return count;
}

int Orient2dExact(Vec2 a, Vec2 b, Vec2 c) {
  // Error bound of the double evaluation below, from Shewchuk's orient2d.
  constexpr double kEps = std::numeric_limits<double>::epsilon() / 2.0;
  constexpr double kErrBound = (3.0 + 16.0 * kEps) * kEps;
  const double left = (a.x - c.x) * (b.y - c.y);
  const double right = (a.y - c.y) * (b.x - c.x);
  const double det = left - right;
  const double bound = kErrBound * (std::abs(left) + std::abs(right));
  if (std::abs(det) > bound) return Sign(det);

  using boost::multiprecision::cpp_rational;
  const cpp_rational ax(a.x), ay(a.y), bx(b.x), by(b.y), cx(c.x), cy(c.y);
  const cpp_rational exact = (ax - cx) * (by - cy) - (ay - cy) * (bx - cx);
  return exact.sign();
}

int CountOcclusionsOracle(Vec3 p, Vec3 q, const SceneLayout& scene) {
  CheckQuery(p, q);
  const Vec2 p2 = p.xy();
  const Vec2 q2 = q.xy();
  int count = 0;
  for (const WallSegment& wall : scene.walls) {
    const int side_p = Orient2dExact(wall.a, wall.b, p2);
    const int side_q = Orient2dExact(wall.a, wall.b, q2);
    if (side_p * side_q >= 0) continue;
    const int side_a = Orient2dExact(p2, q2, wall.a);
    const int side_b = Orient2dExact(p2, q2, wall.b);
    if (side_a * side_b <= 0) ++count;
  }
  return count;
}

}  // namespace soaf
