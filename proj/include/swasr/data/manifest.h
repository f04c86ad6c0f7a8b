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

#ifndef SWASR_DATA_MANIFEST_H_
#define SWASR_DATA_MANIFEST_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace swasr::data {

struct Utterance {
  std::string audio_path;  // resolved; empty for in-memory audio
  std::string text;        // normalized transcript
  double duration = 0.0;   // seconds
  std::uint32_t sample_rate = 0;
  std::vector<float> samples;  // empty until loaded
};

using Manifest = std::vector<Utterance>;

// JSON lines: {"audio": path, "text": transcript, "duration": seconds?}.
// Relative audio paths are resolved against the manifest's directory; blank
// lines are skipped and other keys ignored. Durations come from the WAV
// header; a stated duration must agree within 10 ms. Throws
// std::runtime_error prefixed with "path:line:" on any bad record.
Manifest LoadManifest(const std::string& path);

// One line per utterance with "audio" written relative to the manifest
// directory when possible.
void WriteManifest(const std::string& path, const Manifest& manifest);

// Reads the samples of every utterance that has none yet.
void LoadAudio(Manifest& manifest);

}  // namespace swasr::data

#endif  // SWASR_DATA_MANIFEST_H_
