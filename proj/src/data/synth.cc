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

#include "swasr/data/synth.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <numbers>
#include <random>
#include <set>
#include <stdexcept>

#include "swasr/data/wav.h"
#include "swasr/vocab/text.h"
#include "swasr/vocab/vocabulary.h"

namespace swasr::data {

namespace fs = std::filesystem;

double ToneFrequency(std::size_t token_index) {
  return 300.0 + 80.0 * static_cast<double>(token_index);
}

void SynthOptions::Validate() const {
  if (tokens.size() < 2) {
    throw std::invalid_argument("synth: need at least 2 tokens");
  }
  std::set<std::string> seen;
  for (const std::string& t : tokens) {
    if (vocab::SplitCodePoints(t).size() != 1 || vocab::NormalizeText(t) != t) {
      throw std::invalid_argument("synth: token '" + t +
                                  "' is not a single normalized character");
    }
    if (!seen.insert(t).second) {
      throw std::invalid_argument("synth: duplicate token '" + t + "'");
    }
  }
  if (sample_rate == 0) throw std::invalid_argument("synth: sample rate is zero");
  const double top = ToneFrequency(tokens.size() - 1);
  if (top >= sample_rate / 2.0) {
    throw std::invalid_argument(
        "synth: token " + std::to_string(tokens.size() - 1) + " tone at " +
        std::to_string(top) + " Hz is not below fs/2 = " +
        std::to_string(sample_rate / 2.0) + " Hz; use fewer tokens");
  }
  if (min_tokens < 1 || min_tokens > max_tokens) {
    throw std::invalid_argument("synth: need 1 <= min_tokens <= max_tokens");
  }
  if (num_utterances == 0) throw std::invalid_argument("synth: no utterances");
  if (noise_sigma < 0.0) throw std::invalid_argument("synth: negative noise");
  if (!(tone_seconds > 0.0)) throw std::invalid_argument("synth: bad tone length");
}

Manifest SynthesizeCorpus(const SynthOptions& options) {
  options.Validate();
  std::mt19937_64 rng(options.seed);
  std::uniform_int_distribution<std::size_t> length_dist(options.min_tokens,
                                                         options.max_tokens);
  std::uniform_int_distribution<std::size_t> token_dist(0, options.tokens.size() - 1);
  std::normal_distribution<double> noise(0.0, 1.0);
  const double fs = options.sample_rate;
  const auto segment = static_cast<std::size_t>(std::lround(options.tone_seconds * fs));

  Manifest manifest;
  for (std::size_t u = 0; u < options.num_utterances; ++u) {
    Utterance utt;
    utt.sample_rate = options.sample_rate;
    const std::size_t count = length_dist(rng);
    for (std::size_t i = 0; i < count; ++i) {
      const std::size_t token = token_dist(rng);
      utt.text += options.tokens[token];
      const double f = ToneFrequency(token);
      for (std::size_t n = 0; n < segment; ++n) {
        const double tone = options.amplitude *
                            std::sin(2.0 * std::numbers::pi * f * double(n) / fs);
        utt.samples.push_back(static_cast<float>(tone));
      }
    }
    for (float& s : utt.samples) {
      const double noisy = s + options.noise_sigma * noise(rng);
      s = static_cast<float>(QuantizeSample(noisy)) / 32768.0f;
    }
    utt.duration = double(utt.samples.size()) / fs;
    manifest.push_back(std::move(utt));
  }
  return manifest;
}

SynthOutput WriteSynthCorpus(const SynthOptions& options, const std::string& dir) {
  SynthOutput out;
  out.manifest = SynthesizeCorpus(options);
  const fs::path root(dir);
  fs::create_directories(root / "wav");
  for (std::size_t i = 0; i < out.manifest.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof(name), "utt_%04zu.wav", i);
    Utterance& u = out.manifest[i];
    u.audio_path = (root / "wav" / name).string();
    WriteWav(u.audio_path, u.samples, u.sample_rate);
  }
  out.manifest_path = (root / "manifest.jsonl").string();
  out.vocab_path = (root / "vocab.txt").string();
  WriteManifest(out.manifest_path, out.manifest);
  vocab::TokenVocabulary::Build(options.tokens).Save(out.vocab_path);
  return out;
}

}  // namespace swasr::data
