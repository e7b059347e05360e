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

#ifndef SOAF_BENCHMARKS_BENCH_SUPPORT_H_
#define SOAF_BENCHMARKS_BENCH_SUPPORT_H_

#include <string>

#include "soaf/scene.h"

namespace soaf::bench {

inline SceneLayout Fixture(const std::string& name) {
  return LoadScene(std::string(SOAF_FIXTURE_DIR) + "/" + name);
}

}  // namespace soaf::bench

#endif  // SOAF_BENCHMARKS_BENCH_SUPPORT_H_
