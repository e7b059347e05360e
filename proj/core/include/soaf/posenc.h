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

#ifndef SOAF_POSENC_H_
#define SOAF_POSENC_H_

#include <vector>

#include "soaf/scene.h"
#include "soaf/vec.h"

namespace soaf {

struct PosEncConfig {
  int num_frequencies = 10;  // L
  bool include_input = true;
};

void ValidatePosEncConfig(const PosEncConfig& config);

// 3 * (2L + include_input).
int PosEncSize(const PosEncConfig& config);

// Maps p affinely so the bounds become [-1, 1]^3. A flat axis maps to 0.
Vec3 NormalizeToBounds(Vec3 p, const Bounds& bounds);

// [p] followed by, for k = 0..L-1,
// [sin(2^k pi x), sin(2^k pi y), sin(2^k pi z),
//  cos(2^k pi x), cos(2^k pi y), cos(2^k pi z)].
std::vector<double> PositionalEncoding(Vec3 p, const PosEncConfig& config);

}  // namespace soaf

#endif  // SOAF_POSENC_H_
