// Copyright 2026 The swasr Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "swasr/data/wav.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace swasr::data {

namespace {

constexpr std::uint16_t kFormatPcm = 1;

std::uint32_t U32(const unsigned char* p) {
  return std::uint32_t(p[0]) | std::uint32_t(p[1]) << 8 |
         std::uint32_t(p[2]) << 16 | std::uint32_t(p[3]) << 24;
}

std::uint16_t U16(const unsigned char* p) {
  return static_cast<std::uint16_t>(p[0] | p[1] << 8);
}

void PutU32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>(v >> (8 * i)));
}

void PutU16(std::string& out, std::uint16_t v) {
  out.push_back(static_cast<char>(v));
  out.push_back(static_cast<char>(v >> 8));
}

struct Parsed {
  WavInfo info;
  std::streamoff data_offset = 0;
};

Parsed Parse(std::ifstream& in, const std::string& path) {
  auto fail = [&](const std::string& what) {
    return std::runtime_error(path + ": " + what);
  };
  unsigned char riff[12];
  if (!in.read(reinterpret_cast<char*>(riff), 12)) {
    throw fail("too short for a RIFF header");
  }
  if (std::memcmp(riff, "RIFF", 4) != 0 || std::memcmp(riff + 8, "WAVE", 4) != 0) {
    throw fail("not a RIFF/WAVE file");
  }
  bool have_fmt = false;
  Parsed parsed;
  while (true) {
    unsigned char chunk[8];
    if (!in.read(reinterpret_cast<char*>(chunk), 8)) {
      throw fail(have_fmt ? "missing data chunk" : "missing fmt chunk");
    }
    const std::uint32_t size = U32(chunk + 4);
    if (std::memcmp(chunk, "fmt ", 4) == 0) {
      if (size < 16) throw fail("fmt chunk too short");
      std::vector<unsigned char> fmt(size);
      if (!in.read(reinterpret_cast<char*>(fmt.data()), size)) {
        throw fail("truncated fmt chunk");
      }
      const std::uint16_t format = U16(&fmt[0]);
      const std::uint16_t channels = U16(&fmt[2]);
      const std::uint16_t bits = U16(&fmt[14]);
      if (format != kFormatPcm) {
        throw fail("unsupported codec (format tag " + std::to_string(format) +
                   "); only PCM is supported");
      }
      if (channels != 1) {
        throw fail("expected mono audio, got " + std::to_string(channels) +
                   " channels");
      }
      if (bits != 16) {
        throw fail("expected 16-bit samples, got " + std::to_string(bits) +
                   "-bit");
      }
      parsed.info.sample_rate = U32(&fmt[4]);
      if (parsed.info.sample_rate == 0) throw fail("sample rate is zero");
      have_fmt = true;
      if (size % 2) in.seekg(1, std::ios::cur);
    } else if (std::memcmp(chunk, "data", 4) == 0) {
      if (!have_fmt) throw fail("data chunk precedes fmt chunk");
      parsed.info.num_samples = size / 2;
      parsed.data_offset = in.tellg();
      return parsed;
    } else {
      in.seekg(size + (size % 2), std::ios::cur);
    }
  }
}

}  // namespace

WavInfo ReadWavInfo(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  return Parse(in, path).info;
}

WavAudio ReadWav(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  const Parsed parsed = Parse(in, path);
  std::vector<unsigned char> raw(parsed.info.num_samples * 2);
  if (!in.read(reinterpret_cast<char*>(raw.data()),
               static_cast<std::streamsize>(raw.size()))) {
    throw std::runtime_error(path + ": truncated data chunk");
  }
  WavAudio audio;
  audio.sample_rate = parsed.info.sample_rate;
  audio.samples.resize(parsed.info.num_samples);
  for (std::size_t i = 0; i < audio.samples.size(); ++i) {
    const auto v = static_cast<std::int16_t>(U16(&raw[2 * i]));
    audio.samples[i] = static_cast<float>(v) / 32768.0f;
  }
  return audio;
}

std::int16_t QuantizeSample(double x) {
  const double q = std::round(x * 32768.0);
  return static_cast<std::int16_t>(std::clamp(q, -32768.0, 32767.0));
}

void WriteWav(const std::string& path, std::span<const float> samples,
              std::uint32_t sample_rate) {
  if (sample_rate == 0) throw std::invalid_argument("sample rate is zero");
  const auto data_bytes = static_cast<std::uint32_t>(samples.size() * 2);
  std::string out;
  out.reserve(44 + data_bytes);
  out += "RIFF";
  PutU32(out, 36 + data_bytes);
  out += "WAVEfmt ";
  PutU32(out, 16);
  PutU16(out, kFormatPcm);
  PutU16(out, 1);
  PutU32(out, sample_rate);
  PutU32(out, sample_rate * 2);
  PutU16(out, 2);
  PutU16(out, 16);
  out += "data";
  PutU32(out, data_bytes);
  for (float s : samples) PutU16(out, static_cast<std::uint16_t>(QuantizeSample(s)));
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f.write(out.data(), static_cast<std::streamsize>(out.size()));
  if (!f) throw std::runtime_error("failed writing " + path);
}

}  // namespace swasr::data
