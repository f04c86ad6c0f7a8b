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

#ifndef SWASR_NN_LINEAR_H_
#define SWASR_NN_LINEAR_H_

#include "swasr/tensor.h"

namespace swasr::nn {

// y = x W^T + b over the last axis; weight is [O, F], bias is [O].
template <typename T>
Tensor<T> Linear(const Tensor<T>& input, const Tensor<T>& weight,
                 const Tensor<T>& bias);

template <typename T>
struct LinearGrads {
  Tensor<T> input;
  Tensor<T> weight;
  Tensor<T> bias;
};

template <typename T>
LinearGrads<T> LinearBackward(const Tensor<T>& input, const Tensor<T>& weight,
                              const Tensor<T>& grad_output);

}  // namespace swasr::nn

#endif  // SWASR_NN_LINEAR_H_
