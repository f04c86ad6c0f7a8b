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

#ifndef SWASR_NN_DROPOUT_H_
#define SWASR_NN_DROPOUT_H_

#include <cstdint>

#include "swasr/nn/mode.h"
#include "swasr/tensor.h"

namespace swasr::nn {

// Inverted-dropout mask: each entry is 0 with probability `rate`, otherwise
// 1 / (1 - rate). Deterministic in (shape, rate, seed).
template <typename T>
Tensor<T> DropoutMask(const Shape& shape, double rate, std::uint64_t seed);

// Identity in eval mode or at rate 0; `mask` receives the applied mask (left
// empty when the op is the identity).
template <typename T>
Tensor<T> Dropout(const Tensor<T>& input, double rate, Mode mode,
                  std::uint64_t seed, Tensor<T>* mask);

template <typename T>
Tensor<T> DropoutBackward(const Tensor<T>& grad_output, const Tensor<T>& mask);

}  // namespace swasr::nn

#endif  // SWASR_NN_DROPOUT_H_
