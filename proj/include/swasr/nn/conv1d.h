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

#ifndef SWASR_NN_CONV1D_H_
#define SWASR_NN_CONV1D_H_

#include <cstddef>

#include "swasr/tensor.h"

namespace swasr::nn {

// Valid (unpadded) 1-D cross-correlation.
//   input  [B, C, Lin]
//   kernel [Cout, C, K]
//   output [B, Cout, floor((Lin - K) / stride) + 1]
template <typename T>
Tensor<T> Conv1d(const Tensor<T>& input, const Tensor<T>& kernel,
                 std::size_t stride = 1);

template <typename T>
struct Conv1dGrads {
  Tensor<T> input;  // empty when not requested
  Tensor<T> kernel;
};

template <typename T>
Conv1dGrads<T> Conv1dBackward(const Tensor<T>& input, const Tensor<T>& kernel,
                              std::size_t stride, const Tensor<T>& grad_output,
                              bool need_input_grad = true);

}  // namespace swasr::nn

#endif  // SWASR_NN_CONV1D_H_
