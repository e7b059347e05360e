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

#include "soaf/wav.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>

#include "soaf/binary_io.h"
#include "soaf/error.h"
#include "soaf/scene.h"

namespace soaf {
namespace {

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatFloat = 3;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

template <typename T>
void Put(std::string& out, T value) {
  char buf[sizeof(T)];
  std::memcpy(buf, &value, sizeof(T));
  out.append(buf, sizeof(T));
}

template <typename T>
T Get(const std::string& bytes, size_t offset) {
  T value;
  std::memcpy(&value, bytes.data() + offset, sizeof(T));
  return value;
}

}  // namespace

void ValidateClip(const AudioClip& clip) {
  if (clip.sample_rate <= 0) throw ValidationError("sample_rate must be > 0");
  if (clip.channels.empty()) throw ValidationError("clip has no channels");
  for (const auto& ch : clip.channels) {
    if (ch.size() != clip.channels.front().size()) {
      throw ValidationError("clip channels differ in length");
    }
  }
}

std::string EncodeWav(const AudioClip& clip, WavEncoding encoding) {
  ValidateClip(clip);
  if (clip.num_channels() > 2) throw DomainError("at most 2 channels");
  const std::uint16_t channels =
      static_cast<std::uint16_t>(clip.num_channels());
  const std::uint16_t bits = encoding == WavEncoding::kPcm16 ? 16 : 32;
  const std::uint16_t block_align = channels * bits / 8;
  const std::uint32_t data_bytes =
      static_cast<std::uint32_t>(clip.num_samples() * block_align);

  std::string out;
  out.reserve(44 + data_bytes);
  out += "RIFF";
  Put<std::uint32_t>(out, 36 + data_bytes);
  out += "WAVE";
  out += "fmt ";
  Put<std::uint32_t>(out, 16);
  Put<std::uint16_t>(
      out, encoding == WavEncoding::kPcm16 ? kFormatPcm : kFormatFloat);
  Put<std::uint16_t>(out, channels);
  Put<std::uint32_t>(out, static_cast<std::uint32_t>(clip.sample_rate));
  Put<std::uint32_t>(
      out, static_cast<std::uint32_t>(clip.sample_rate) * block_align);
  Put<std::uint16_t>(out, block_align);
  Put<std::uint16_t>(out, bits);
  out += "data";
  Put<std::uint32_t>(out, data_bytes);
  for (size_t n = 0; n < clip.num_samples(); ++n) {
    for (const auto& ch : clip.channels) {
      if (encoding == WavEncoding::kPcm16) {
        const double scaled = std::round(ch[n] * 32768.0);
        Put<std::int16_t>(out, static_cast<std::int16_t>(
                                   std::clamp(scaled, -32767.0, 32767.0)));
      } else {
        Put<float>(out, static_cast<float>(ch[n]));
      }
    }
  }
  return out;
}

void WriteWav(const AudioClip& clip, const std::filesystem::path& path,
              WavEncoding encoding) {
  WriteTextFile(path, EncodeWav(clip, encoding));
}

AudioClip DecodeWav(const std::string& bytes) {
  if (bytes.size() < 12 || bytes.compare(0, 4, "RIFF") != 0 ||
      bytes.compare(8, 4, "WAVE") != 0) {
    throw ParseError("missing RIFF/WAVE header");
  }
  bool have_fmt = false;
  std::uint16_t format = 0, channels = 0, bits = 0;
  std::uint32_t rate = 0;
  size_t data_offset = 0, data_size = 0;
  bool have_data = false;
  size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const std::string id = bytes.substr(pos, 4);
    const std::uint32_t size = Get<std::uint32_t>(bytes, pos + 4);
    const size_t body = pos + 8;
    if (id == "fmt ") {
      if (size < 16 || body + 16 > bytes.size()) {
        throw ParseError("truncated 'fmt ' chunk");
      }
      format = Get<std::uint16_t>(bytes, body);
      channels = Get<std::uint16_t>(bytes, body + 2);
      rate = Get<std::uint32_t>(bytes, body + 4);
      bits = Get<std::uint16_t>(bytes, body + 14);
      if (format == kFormatExtensible && size >= 26 &&
          body + 26 <= bytes.size()) {
        format = Get<std::uint16_t>(bytes, body + 24);
      }
      have_fmt = true;
    } else if (id == "data") {
      data_offset = body;
      data_size = std::min<size_t>(size, bytes.size() - body);
      if (data_size < size) throw ParseError("truncated 'data' chunk");
      have_data = true;
      break;
    }
    pos = body + size + (size & 1u);
  }
  if (!have_fmt) throw ParseError("missing 'fmt ' chunk");
  if (!have_data) throw ParseError("missing 'data' chunk");
  if (channels < 1 || channels > 2) {
    throw ParseError("unsupported channel count " + std::to_string(channels));
  }
  const bool pcm16 = format == kFormatPcm && bits == 16;
  const bool float32 = format == kFormatFloat && bits == 32;
  if (!pcm16 && !float32) {
    throw ParseError("unsupported encoding (format " + std::to_string(format) +
                     ", " + std::to_string(bits) + " bits)");
  }
  const size_t frame_bytes = static_cast<size_t>(channels) * bits / 8;
  const size_t frames = data_size / frame_bytes;
  AudioClip clip;
  clip.sample_rate = static_cast<int>(rate);
  clip.channels.assign(channels, std::vector<double>(frames));
  for (size_t n = 0; n < frames; ++n) {
    for (int c = 0; c < channels; ++c) {
      const size_t at = data_offset + n * frame_bytes + c * (bits / 8);
      clip.channels[c][n] = pcm16 ? Get<std::int16_t>(bytes, at) / 32768.0
                                  : static_cast<double>(Get<float>(bytes, at));
    }
  }
  if (clip.sample_rate <= 0) throw ParseError("invalid sample rate");
  return clip;
}

AudioClip ReadWav(const std::filesystem::path& path) {
  return DecodeWav(ReadTextFile(path));
}

}  // namespace soaf
