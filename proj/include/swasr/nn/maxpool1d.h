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

#ifndef SWASR_NN_MAXPOOL1D_H_
#define SWASR_NN_MAXPOOL1D_H_

#include <cstddef>
#include <vector>

#include "swasr/tensor.h"

namespace swasr::nn {

template <typename T>
struct MaxPool1dResult {
  Tensor<T> output;
  // Flat input offset of the (first) maximum of every output element.
  std::vector<std::size_t> argmax;
};

// Non-overlapping max pooling over the last axis of [B, C, L]; the output
// length is floor(L / window) and trailing samples are dropped.
template <typename T>
MaxPool1dResult<T> MaxPool1d(const Tensor<T>& input, std::size_t window);

template <typename T>
Tensor<T> MaxPool1dBackward(const Shape& input_shape,
                            const std::vector<std::size_t>& argmax,
                            const Tensor<T>& grad_output);

}  // namespace swasr::nn

#endif  // SWASR_NN_MAXPOOL1D_H_
