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

#include "swasr/model/config.h"

#include <set>
#include <stdexcept>

#include "json.hpp"

namespace swasr::model {

std::string PathKindName(PathKind kind) {
  return kind == PathKind::kSinc ? "sinc" : "cnn";
}

std::vector<PathKind> ParseStructure(const std::string& name) {
  if (name == "cnn1") return {PathKind::kCnn};
  if (name == "sinc1") return {PathKind::kSinc};
  if (name == "sinc2") return {PathKind::kSinc, PathKind::kSinc};
  if (name == "sinc+cnn") return {PathKind::kSinc, PathKind::kCnn};
  throw std::invalid_argument("unknown path structure '" + name +
                              "' (expected cnn1, sinc1, sinc2 or sinc+cnn)");
}

std::string StructureName(const std::vector<PathKind>& paths) {
  using enum PathKind;
  if (paths == std::vector{kCnn}) return "cnn1";
  if (paths == std::vector{kSinc}) return "sinc1";
  if (paths == std::vector{kSinc, kSinc}) return "sinc2";
  if (paths == std::vector{kSinc, kCnn}) return "sinc+cnn";
  throw std::invalid_argument("unsupported path structure");
}

void ModelConfig::Validate() const {
  StructureName(paths);
  if (first_kernel == 0 || first_kernel % 2 == 0) {
    throw std::invalid_argument("first_kernel must be odd, got " +
                                std::to_string(first_kernel));
  }
  if (channels == 0) throw std::invalid_argument("channels must be >= 1");
  if (lstm_layers == 0) throw std::invalid_argument("lstm_layers must be >= 1");
  if (lstm_hidden == 0) throw std::invalid_argument("lstm_hidden must be >= 1");
  if (!(dropout >= 0.0 && dropout < 1.0)) {
    throw std::invalid_argument("dropout must be in [0, 1)");
  }
  if (vocab_size < 2) {
    throw std::invalid_argument("vocab_size must be >= 2, got " +
                                std::to_string(vocab_size));
  }
  if (!(sample_rate > 0.0)) {
    throw std::invalid_argument("sample_rate must be positive");
  }
}

dsp::SincLayerConfig ModelConfig::SincConfig() const {
  return {channels, first_kernel, sample_rate, window};
}

std::vector<nn::LayerSpec> ModelConfig::LayerChain() const {
  std::vector<nn::LayerSpec> chain;
  for (std::size_t i = 0; i < kPathLayers; ++i) {
    chain.push_back({"conv" + std::to_string(i),
                     i == 0 ? first_kernel : kInnerKernel, 1, kPoolWindow});
  }
  return chain;
}

std::size_t ModelConfig::FrameCount(std::size_t num_samples) const {
  const auto chain = LayerChain();
  return nn::OutputLength(num_samples, chain);
}

std::size_t ModelConfig::MinSamples() const {
  const auto chain = LayerChain();
  return nn::MinInputLength(chain);
}

ModelConfig PresetConfig(const std::string& name) {
  ModelConfig c;
  c.preset = name;
  if (name == "paper-sinc-cnn-129" || name == "sinc+cnn") {
    return c;
  }
  if (name == "ablation-k251") {
    c.first_kernel = 251;
  } else if (name == "ablation-k65") {
    c.first_kernel = 65;
  } else if (name == "cnn1" || name == "sinc1" || name == "sinc2") {
    c.paths = ParseStructure(name);
  } else {
    throw std::invalid_argument("unknown preset '" + name + "'");
  }
  return c;
}

std::vector<std::string> PresetNames() {
  return {"paper-sinc-cnn-129", "ablation-k251", "ablation-k65",
          "cnn1",               "sinc1",         "sinc2",
          "sinc+cnn"};
}

ModelConfig ModelConfigFromJson(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("model config must be an object");
  static const std::set<std::string> kKeys{
      "preset",      "structure",   "first_kernel", "channels",
      "lstm_layers", "lstm_hidden", "dropout",      "sample_rate",
      "window",      "vocab_size"};
  for (const auto& [key, value] : j.items()) {
    if (!kKeys.contains(key)) {
      throw std::invalid_argument("unknown model config key '" + key + "'");
    }
  }
  try {
    ModelConfig c = PresetConfig(j.value("preset", "paper-sinc-cnn-129"));
    if (j.contains("structure")) {
      c.paths = ParseStructure(j.at("structure").get<std::string>());
    }
    if (j.contains("first_kernel")) c.first_kernel = j.at("first_kernel").get<std::size_t>();
    if (j.contains("channels")) c.channels = j.at("channels").get<std::size_t>();
    if (j.contains("lstm_layers")) c.lstm_layers = j.at("lstm_layers").get<std::size_t>();
    if (j.contains("lstm_hidden")) c.lstm_hidden = j.at("lstm_hidden").get<std::size_t>();
    if (j.contains("dropout")) c.dropout = j.at("dropout").get<double>();
    if (j.contains("sample_rate")) c.sample_rate = j.at("sample_rate").get<double>();
    if (j.contains("window")) {
      c.window = dsp::ParseWindowMode(j.at("window").get<std::string>());
    }
    if (j.contains("vocab_size")) c.vocab_size = j.at("vocab_size").get<std::size_t>();
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("model config: ") + e.what());
  }
}

nlohmann::json ModelConfigToJson(const ModelConfig& c) {
  return {{"preset", c.preset},
          {"structure", StructureName(c.paths)},
          {"first_kernel", c.first_kernel},
          {"channels", c.channels},
          {"lstm_layers", c.lstm_layers},
          {"lstm_hidden", c.lstm_hidden},
          {"dropout", c.dropout},
          {"sample_rate", c.sample_rate},
          {"window", dsp::WindowModeName(c.window)},
          {"vocab_size", c.vocab_size}};
}

}  // namespace swasr::model
