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

#ifndef SWASR_DATA_WAV_H_
#define SWASR_DATA_WAV_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace swasr::data {

struct WavInfo {
  std::size_t num_samples = 0;
  std::uint32_t sample_rate = 0;
  double duration() const {
    return static_cast<double>(num_samples) / static_cast<double>(sample_rate);
  }
};

struct WavAudio {
  std::vector<float> samples;  // int16 / 32768, in [-1, 1)
  std::uint32_t sample_rate = 0;
};

// RIFF/WAVE, PCM, 16-bit, mono only. Throws std::runtime_error describing
// the offending field otherwise. No resampling.
WavInfo ReadWavInfo(const std::string& path);
WavAudio ReadWav(const std::string& path);

// Quantizes to round(x * 32768) clamped to the int16 range.
std::int16_t QuantizeSample(double x);
void WriteWav(const std::string& path, std::span<const float> samples,
              std::uint32_t sample_rate);

}  // namespace swasr::data

#endif  // SWASR_DATA_WAV_H_
