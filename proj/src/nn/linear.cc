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

#include "swasr/nn/linear.h"

#include <stdexcept>

namespace swasr::nn {

template <typename T>
Tensor<T> Linear(const Tensor<T>& input, const Tensor<T>& weight,
                 const Tensor<T>& bias) {
  RequireRank(weight, 2, "linear weight");
  const std::size_t in_f = weight.dim(1);
  const std::size_t out_f = weight.dim(0);
  if (input.rank() == 0 || input.shape().back() != in_f) {
    throw std::invalid_argument("linear: input " + ShapeString(input.shape()) +
                                " incompatible with weight " +
                                ShapeString(weight.shape()));
  }
  if (bias.size() != out_f) {
    throw std::invalid_argument("linear: bias size mismatch");
  }
  const std::size_t rows = input.size() / in_f;
  Shape out_shape = input.shape();
  out_shape.back() = out_f;
  Tensor<T> output(out_shape);
  for (std::size_t r = 0; r < rows; ++r) {
    const T* x = input.data() + r * in_f;
    T* y = output.data() + r * out_f;
    for (std::size_t o = 0; o < out_f; ++o) {
      const T* w = weight.data() + o * in_f;
      T acc = bias[o];
      for (std::size_t f = 0; f < in_f; ++f) acc += w[f] * x[f];
      y[o] = acc;
    }
  }
  return output;
}

template <typename T>
LinearGrads<T> LinearBackward(const Tensor<T>& input, const Tensor<T>& weight,
                              const Tensor<T>& grad_output) {
  const std::size_t in_f = weight.dim(1);
  const std::size_t out_f = weight.dim(0);
  const std::size_t rows = input.size() / in_f;
  if (grad_output.size() != rows * out_f) {
    throw std::invalid_argument("linear backward: grad shape mismatch");
  }
  LinearGrads<T> grads{Tensor<T>(input.shape()), Tensor<T>(weight.shape()),
                       Tensor<T>({out_f})};
  for (std::size_t r = 0; r < rows; ++r) {
    const T* x = input.data() + r * in_f;
    const T* gy = grad_output.data() + r * out_f;
    T* gx = grads.input.data() + r * in_f;
    for (std::size_t o = 0; o < out_f; ++o) {
      const T g = gy[o];
      const T* w = weight.data() + o * in_f;
      T* gw = grads.weight.data() + o * in_f;
      for (std::size_t f = 0; f < in_f; ++f) {
        gx[f] += g * w[f];
        gw[f] += g * x[f];
      }
      grads.bias[o] += g;
    }
  }
  return grads;
}

template Tensor<float> Linear(const Tensor<float>&, const Tensor<float>&,
                              const Tensor<float>&);
template Tensor<double> Linear(const Tensor<double>&, const Tensor<double>&,
                               const Tensor<double>&);
template LinearGrads<float> LinearBackward(const Tensor<float>&,
                                           const Tensor<float>&,
                                           const Tensor<float>&);
template LinearGrads<double> LinearBackward(const Tensor<double>&,
                                            const Tensor<double>&,
                                            const Tensor<double>&);

}  // namespace swasr::nn
