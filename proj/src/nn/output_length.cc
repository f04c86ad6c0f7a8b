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

#include "swasr/nn/output_length.h"

#include <stdexcept>

namespace swasr::nn {

std::size_t OutputLength(std::size_t input_length,
                         std::span<const LayerSpec> chain) {
  std::size_t len = input_length;
  for (const LayerSpec& layer : chain) {
    if (layer.kernel == 0 || layer.stride == 0 || layer.pool == 0) {
      throw std::invalid_argument("layer " + layer.name +
                                  ": kernel, stride and pool must be >= 1");
    }
    if (len < layer.kernel) {
      throw std::invalid_argument(
          "layer " + layer.name + ": input length " + std::to_string(len) +
          " is shorter than kernel " + std::to_string(layer.kernel));
    }
    len = (len - layer.kernel) / layer.stride + 1;
    len /= layer.pool;
    if (len < 1) {
      throw std::invalid_argument("layer " + layer.name +
                                  ": pooling leaves no output frames");
    }
  }
  return len;
}

std::size_t MinInputLength(std::span<const LayerSpec> chain,
                           std::size_t frames) {
  std::size_t need = frames == 0 ? 1 : frames;
  for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
    need *= it->pool;
    need = (need - 1) * it->stride + it->kernel;
  }
  return need;
}

}  // namespace swasr::nn
