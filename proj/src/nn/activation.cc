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

#include "swasr/nn/activation.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace swasr::nn {

template <typename T>
Tensor<T> Relu(const Tensor<T>& input) {
  Tensor<T> out = input;
  for (T& v : out.storage()) v = v > T(0) ? v : T(0);
  return out;
}

template <typename T>
Tensor<T> ReluBackward(const Tensor<T>& input, const Tensor<T>& grad_output) {
  if (input.shape() != grad_output.shape()) {
    throw std::invalid_argument("relu backward: shape mismatch");
  }
  Tensor<T> grad = grad_output;
  for (std::size_t i = 0; i < grad.size(); ++i) {
    if (!(input[i] > T(0))) grad[i] = T(0);
  }
  return grad;
}

template <typename T>
Tensor<T> LogSoftmax(const Tensor<T>& input) {
  if (input.rank() == 0) throw std::invalid_argument("log_softmax: rank 0");
  const std::size_t classes = input.shape().back();
  const std::size_t rows = input.size() / classes;
  Tensor<T> out(input.shape());
  for (std::size_t r = 0; r < rows; ++r) {
    const T* x = input.data() + r * classes;
    T* y = out.data() + r * classes;
    const T max = *std::max_element(x, x + classes);
    T sum = 0;
    for (std::size_t k = 0; k < classes; ++k) sum += std::exp(x[k] - max);
    const T log_z = max + std::log(sum);
    for (std::size_t k = 0; k < classes; ++k) y[k] = x[k] - log_z;
  }
  return out;
}

template <typename T>
Tensor<T> LogSoftmaxBackward(const Tensor<T>& output,
                             const Tensor<T>& grad_output) {
  if (output.shape() != grad_output.shape()) {
    throw std::invalid_argument("log_softmax backward: shape mismatch");
  }
  const std::size_t classes = output.shape().back();
  const std::size_t rows = output.size() / classes;
  Tensor<T> grad(output.shape());
  for (std::size_t r = 0; r < rows; ++r) {
    const T* y = output.data() + r * classes;
    const T* gy = grad_output.data() + r * classes;
    T* gx = grad.data() + r * classes;
    T total = 0;
    for (std::size_t k = 0; k < classes; ++k) total += gy[k];
    for (std::size_t k = 0; k < classes; ++k) {
      gx[k] = gy[k] - std::exp(y[k]) * total;
    }
  }
  return grad;
}

template Tensor<float> Relu(const Tensor<float>&);
template Tensor<double> Relu(const Tensor<double>&);
template Tensor<float> ReluBackward(const Tensor<float>&, const Tensor<float>&);
template Tensor<double> ReluBackward(const Tensor<double>&,
                                     const Tensor<double>&);
template Tensor<float> LogSoftmax(const Tensor<float>&);
template Tensor<double> LogSoftmax(const Tensor<double>&);
template Tensor<float> LogSoftmaxBackward(const Tensor<float>&,
                                          const Tensor<float>&);
template Tensor<double> LogSoftmaxBackward(const Tensor<double>&,
                                           const Tensor<double>&);

}  // namespace swasr::nn
