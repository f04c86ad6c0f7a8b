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

#include "swasr/nn/maxpool1d.h"

#include <stdexcept>
#include <string>

namespace swasr::nn {

template <typename T>
MaxPool1dResult<T> MaxPool1d(const Tensor<T>& input, std::size_t window) {
  RequireRank(input, 3, "maxpool1d input");
  if (window == 0) throw std::invalid_argument("maxpool1d: window must be >= 1");
  const std::size_t rows = input.dim(0) * input.dim(1);
  const std::size_t len = input.dim(2);
  if (len < window) {
    throw std::invalid_argument("maxpool1d: input length " +
                                std::to_string(len) + " < window " +
                                std::to_string(window));
  }
  const std::size_t out_len = len / window;

  MaxPool1dResult<T> result;
  result.output = Tensor<T>({input.dim(0), input.dim(1), out_len});
  result.argmax.resize(rows * out_len);
  const T* x = input.data();
  T* y = result.output.data();
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t j = 0; j < out_len; ++j) {
      std::size_t best = r * len + j * window;
      for (std::size_t k = 1; k < window; ++k) {
        const std::size_t idx = r * len + j * window + k;
        if (x[idx] > x[best]) best = idx;
      }
      y[r * out_len + j] = x[best];
      result.argmax[r * out_len + j] = best;
    }
  }
  return result;
}

template <typename T>
Tensor<T> MaxPool1dBackward(const Shape& input_shape,
                            const std::vector<std::size_t>& argmax,
                            const Tensor<T>& grad_output) {
  if (argmax.size() != grad_output.size()) {
    throw std::invalid_argument("maxpool1d backward: argmax/grad size mismatch");
  }
  Tensor<T> grad_input(input_shape);
  for (std::size_t i = 0; i < argmax.size(); ++i) {
    grad_input[argmax[i]] += grad_output[i];
  }
  return grad_input;
}

template MaxPool1dResult<float> MaxPool1d(const Tensor<float>&, std::size_t);
template MaxPool1dResult<double> MaxPool1d(const Tensor<double>&, std::size_t);
template Tensor<float> MaxPool1dBackward(const Shape&,
                                         const std::vector<std::size_t>&,
                                         const Tensor<float>&);
template Tensor<double> MaxPool1dBackward(const Shape&,
                                          const std::vector<std::size_t>&,
                                          const Tensor<double>&);

}  // namespace swasr::nn
