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

#ifndef SWASR_MODEL_CONFIG_H_
#define SWASR_MODEL_CONFIG_H_

#include <cstddef>
#include <string>
#include <vector>

#include "json.hpp"
#include "swasr/dsp/sinc.h"
#include "swasr/nn/output_length.h"

namespace swasr::model {

enum class PathKind { kSinc, kCnn };

std::string PathKindName(PathKind kind);

// Structure names: "cnn1", "sinc1", "sinc2", "sinc+cnn".
std::vector<PathKind> ParseStructure(const std::string& name);
std::string StructureName(const std::vector<PathKind>& paths);

inline constexpr std::size_t kPathLayers = 5;
inline constexpr std::size_t kPoolWindow = 3;
inline constexpr std::size_t kInnerKernel = 3;

struct ModelConfig {
  std::string preset = "paper-sinc-cnn-129";
  std::vector<PathKind> paths{PathKind::kSinc, PathKind::kCnn};
  std::size_t first_kernel = 129;  // K1, shared by the sinc and cnn paths
  std::size_t channels = 64;       // per conv layer; also the sinc filter count
  std::size_t lstm_layers = 7;
  std::size_t lstm_hidden = 256;
  double dropout = 0.1;
  std::size_t vocab_size = 0;
  double sample_rate = 8000.0;
  dsp::WindowMode window = dsp::WindowMode::kStandardHamming;

  // Throws std::invalid_argument describing the first bad field.
  void Validate() const;

  dsp::SincLayerConfig SincConfig() const;
  // Kernel/pool chain shared by every path.
  std::vector<nn::LayerSpec> LayerChain() const;
  std::size_t FeatureWidth() const { return paths.size() * channels; }
  std::size_t FrameCount(std::size_t num_samples) const;
  std::size_t MinSamples() const;
};

// Presets: paper-sinc-cnn-129 (alias sinc+cnn), ablation-k251, ablation-k65,
// cnn1, sinc1, sinc2. Throws std::invalid_argument on an unknown name.
ModelConfig PresetConfig(const std::string& name);
std::vector<std::string> PresetNames();

// {"preset": ..., plus any of "structure", "first_kernel", "channels",
// "lstm_layers", "lstm_hidden", "dropout", "sample_rate", "window",
// "vocab_size"}. Unknown keys are rejected.
ModelConfig ModelConfigFromJson(const nlohmann::json& j);
nlohmann::json ModelConfigToJson(const ModelConfig& config);

}  // namespace swasr::model

#endif  // SWASR_MODEL_CONFIG_H_
