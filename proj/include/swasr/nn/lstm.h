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

#ifndef SWASR_NN_LSTM_H_
#define SWASR_NN_LSTM_H_

#include <array>
#include <cstddef>

#include "swasr/tensor.h"

namespace swasr::nn {

// Weights of one LSTM direction. Gate rows are stacked as [input; forget;
// cell candidate; output], each of height H.
//   w_ih [4H, F], w_hh [4H, H], bias [4H]
template <typename T>
struct LstmWeightsRef {
  const Tensor<T>& w_ih;
  const Tensor<T>& w_hh;
  const Tensor<T>& bias;

  std::size_t hidden() const { return w_hh.dim(1); }
};

template <typename T>
struct LstmGrads {
  Tensor<T> w_ih;
  Tensor<T> w_hh;
  Tensor<T> bias;
};

template <typename T>
struct BiLstmCache {
  Tensor<T> input;
  // Index 0 is the forward direction, 1 the backward direction.
  std::array<Tensor<T>, 2> gates;  // [B, T, 4H], post-activation
  std::array<Tensor<T>, 2> cells;  // [B, T, H]
  std::array<Tensor<T>, 2> hidden; // [B, T, H]
};

// Bidirectional LSTM over [B, T, F] returning [B, T, 2H] with the forward
// direction in features [0, H) and the backward direction in [H, 2H). Each
// sequence runs over its first lengths[b] steps only; outputs at padded steps
// are zero. Initial hidden and cell states are zero.
template <typename T>
Tensor<T> BiLstm(const Tensor<T>& input, const Lengths& lengths,
                 const LstmWeightsRef<T>& forward,
                 const LstmWeightsRef<T>& backward, BiLstmCache<T>* cache);

template <typename T>
struct BiLstmGrads {
  Tensor<T> input;
  LstmGrads<T> forward;
  LstmGrads<T> backward;
};

template <typename T>
BiLstmGrads<T> BiLstmBackward(const Tensor<T>& grad_output,
                              const Lengths& lengths,
                              const LstmWeightsRef<T>& forward,
                              const LstmWeightsRef<T>& backward,
                              const BiLstmCache<T>& cache);

}  // namespace swasr::nn

#endif  // SWASR_NN_LSTM_H_
