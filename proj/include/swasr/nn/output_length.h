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

#ifndef SWASR_NN_OUTPUT_LENGTH_H_
#define SWASR_NN_OUTPUT_LENGTH_H_

#include <cstddef>
#include <span>
#include <string>

namespace swasr::nn {

// A valid convolution followed by optional non-overlapping pooling. A pure
// pooling stage is {kernel = 1, stride = 1, pool = window}.
struct LayerSpec {
  std::string name;
  std::size_t kernel = 1;
  std::size_t stride = 1;
  std::size_t pool = 1;
};

// Applies Lout = floor((L - K) / stride) + 1 and then floor(L / pool) for
// each layer. Throws std::invalid_argument naming the first layer whose
// input is shorter than its kernel or whose output is empty.
std::size_t OutputLength(std::size_t input_length,
                         std::span<const LayerSpec> chain);

// Smallest input length producing at least `frames` outputs.
std::size_t MinInputLength(std::span<const LayerSpec> chain,
                           std::size_t frames = 1);

}  // namespace swasr::nn

#endif  // SWASR_NN_OUTPUT_LENGTH_H_
