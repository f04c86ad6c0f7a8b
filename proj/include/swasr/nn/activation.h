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

#ifndef SWASR_NN_ACTIVATION_H_
#define SWASR_NN_ACTIVATION_H_

#include "swasr/tensor.h"

namespace swasr::nn {

template <typename T>
Tensor<T> Relu(const Tensor<T>& input);

// Subgradient at zero is taken as 0.
template <typename T>
Tensor<T> ReluBackward(const Tensor<T>& input, const Tensor<T>& grad_output);

// Max-subtracted log-softmax over the last axis.
template <typename T>
Tensor<T> LogSoftmax(const Tensor<T>& input);

// Takes the forward *output*.
template <typename T>
Tensor<T> LogSoftmaxBackward(const Tensor<T>& output,
                             const Tensor<T>& grad_output);

}  // namespace swasr::nn

#endif  // SWASR_NN_ACTIVATION_H_
