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

#include "swasr/data/manifest.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "json.hpp"
#include "swasr/data/wav.h"
#include "swasr/vocab/text.h"

namespace swasr::data {

namespace fs = std::filesystem;

namespace {

constexpr double kDurationTolerance = 0.010;

Utterance ParseRecord(const std::string& line, const fs::path& base) {
  const nlohmann::json j = nlohmann::json::parse(line);
  if (!j.is_object()) throw std::runtime_error("expected a JSON object");
  if (!j.contains("audio") || !j["audio"].is_string()) {
    throw std::runtime_error("missing string field \"audio\"");
  }
  if (!j.contains("text") || !j["text"].is_string()) {
    throw std::runtime_error("missing string field \"text\"");
  }
  Utterance u;
  fs::path audio = j["audio"].get<std::string>();
  if (audio.is_relative()) audio = base / audio;
  u.audio_path = audio.lexically_normal().string();
  u.text = vocab::NormalizeText(j["text"].get<std::string>());
  if (u.text.empty()) throw std::runtime_error("empty transcript");
  if (!fs::exists(audio)) {
    throw std::runtime_error("audio file not found: " + u.audio_path);
  }
  const WavInfo info = ReadWavInfo(u.audio_path);
  u.sample_rate = info.sample_rate;
  u.duration = info.duration();
  if (j.contains("duration")) {
    if (!j["duration"].is_number()) {
      throw std::runtime_error("\"duration\" must be a number");
    }
    const double stated = j["duration"].get<double>();
    if (std::abs(stated - u.duration) > kDurationTolerance) {
      throw std::runtime_error("duration " + std::to_string(stated) +
                               " s disagrees with the WAV header (" +
                               std::to_string(u.duration) + " s)");
    }
  }
  return u;
}

}  // namespace

Manifest LoadManifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open manifest " + path);
  const fs::path base = fs::path(path).parent_path();
  Manifest manifest;
  std::string line;
  for (std::size_t number = 1; std::getline(in, line); ++number) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      manifest.push_back(ParseRecord(line, base));
    } catch (const std::exception& e) {
      throw std::runtime_error(path + ":" + std::to_string(number) + ": " +
                               e.what());
    }
  }
  return manifest;
}

void WriteManifest(const std::string& path, const Manifest& manifest) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write manifest " + path);
  const fs::path base = fs::absolute(fs::path(path)).parent_path();
  for (const Utterance& u : manifest) {
    fs::path audio = fs::absolute(u.audio_path).lexically_relative(base);
    if (audio.empty()) audio = u.audio_path;
    const nlohmann::json j = {{"audio", audio.generic_string()},
                              {"text", u.text},
                              {"duration", u.duration}};
    out << j.dump() << '\n';
  }
  if (!out) throw std::runtime_error("failed writing " + path);
}

void LoadAudio(Manifest& manifest) {
  for (Utterance& u : manifest) {
    if (!u.samples.empty()) continue;
    WavAudio audio = ReadWav(u.audio_path);
    u.sample_rate = audio.sample_rate;
    u.samples = std::move(audio.samples);
  }
}

}  // namespace swasr::data
