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

#include "soaf/binary_io.h"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "soaf/error.h"

namespace soaf {
namespace {

static_assert(std::endian::native == std::endian::little,
              "float32 dumps assume a little-endian host");

}  // namespace

void AppendF32(std::span<const double> values, std::string& out) {
  const size_t offset = out.size();
  out.resize(offset + values.size() * sizeof(float));
  for (size_t i = 0; i < values.size(); ++i) {
    const float f = static_cast<float>(values[i]);
    std::memcpy(out.data() + offset + i * sizeof(float), &f, sizeof(float));
  }
}

void WriteF32File(const std::filesystem::path& path,
                  std::span<const double> values) {
  std::string bytes;
  AppendF32(values, bytes);
  WriteTextFile(path, bytes);
}

std::vector<double> ReadF32File(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path.string() + ": no such file");
  std::vector<char> bytes((std::istreambuf_iterator<char>(in)),
                          std::istreambuf_iterator<char>());
  if (bytes.size() % sizeof(float) != 0) {
    throw ParseError(path.string() + ": truncated float32 blob");
  }
  std::vector<double> values(bytes.size() / sizeof(float));
  for (size_t i = 0; i < values.size(); ++i) {
    float f;
    std::memcpy(&f, bytes.data() + i * sizeof(float), sizeof(float));
    values[i] = f;
  }
  return values;
}

void WriteTextFile(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(path.string() + ": cannot open for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw IoError(path.string() + ": write failed");
}

std::filesystem::path WithSuffix(const std::filesystem::path& stem,
                                 const std::string& ext) {
  std::filesystem::path p = stem;
  p += ext;
  return p;
}

}  // namespace soaf
