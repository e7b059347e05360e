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

#ifndef SOAF_WAV_H_
#define SOAF_WAV_H_

#include <filesystem>
#include <string>
#include <vector>

namespace soaf {

inline constexpr int kDefaultSampleRate = 22050;

struct AudioClip {
  int sample_rate = kDefaultSampleRate;
  // One vector per channel, equal lengths.
  std::vector<std::vector<double>> channels;

  int num_channels() const { return static_cast<int>(channels.size()); }
  size_t num_samples() const {
    return channels.empty() ? 0 : channels.front().size();
  }
};

void ValidateClip(const AudioClip& clip);

enum class WavEncoding { kPcm16, kFloat32 };

// RIFF/WAVE, PCM16 or IEEE float32, one or two channels. PCM16 samples are
// rounded to the nearest step of 1/32768 and clamped symmetrically to
// +-32767/32768.
std::string EncodeWav(const AudioClip& clip, WavEncoding encoding);
void WriteWav(const AudioClip& clip, const std::filesystem::path& path,
              WavEncoding encoding = WavEncoding::kFloat32);

// Throws ParseError naming the missing chunk or unsupported encoding.
AudioClip DecodeWav(const std::string& bytes);
AudioClip ReadWav(const std::filesystem::path& path);

}  // namespace soaf

#endif  // SOAF_WAV_H_
