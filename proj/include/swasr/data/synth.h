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

#ifndef SWASR_DATA_SYNTH_H_
#define SWASR_DATA_SYNTH_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "swasr/data/manifest.h"

namespace swasr::data {

struct SynthOptions {
  std::uint64_t seed = 0;
  std::size_t num_utterances = 30;
  // Single-character tokens; token i is a tone at 300 + 80 i Hz.
  std::vector<std::string> tokens{"A", "B", "C", "塔", "台", "机"};
  std::uint32_t sample_rate = 8000;
  double noise_sigma = 0.01;
  std::size_t min_tokens = 2;
  std::size_t max_tokens = 8;
  double tone_seconds = 0.1;
  double amplitude = 0.5;

  // Throws std::invalid_argument on fewer than two tokens, tokens that are
  // not distinct normalized single characters, or a tone at or above fs/2.
  void Validate() const;
};

double ToneFrequency(std::size_t token_index);

// Utterances with in-memory samples already quantized to 16-bit levels, so
// they equal what the written WAV files read back as.
Manifest SynthesizeCorpus(const SynthOptions& options);

struct SynthOutput {
  std::string manifest_path;
  std::string vocab_path;
  Manifest manifest;
};

// Writes <dir>/wav/utt_NNNN.wav, <dir>/manifest.jsonl and <dir>/vocab.txt
// (the vocabulary built from the token set).
SynthOutput WriteSynthCorpus(const SynthOptions& options,
                             const std::string& dir);

}  // namespace swasr::data

#endif  // SWASR_DATA_SYNTH_H_
