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

#ifndef SOAF_BINARY_IO_H_
#define SOAF_BINARY_IO_H_

#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace soaf {

// Little-endian float32 blobs, used by every dump and checkpoint format.
void WriteF32File(const std::filesystem::path& path,
                  std::span<const double> values);
std::vector<double> ReadF32File(const std::filesystem::path& path);

// Appends values as little-endian float32 to `out`.
void AppendF32(std::span<const double> values, std::string& out);

void WriteTextFile(const std::filesystem::path& path, const std::string& text);

// `<stem>` with `ext` appended (stem "out/grid" + ".json" -> "out/grid.json").
std::filesystem::path WithSuffix(const std::filesystem::path& stem,
                                 const std::string& ext);

}  // namespace soaf

#endif  // SOAF_BINARY_IO_H_
