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

#include "swasr/nn/conv1d.h"

#include <stdexcept>
#include <string>

namespace swasr::nn {

namespace {

template <typename T>
void CheckConvShapes(const Tensor<T>& input, const Tensor<T>& kernel,
                     std::size_t stride) {
  RequireRank(input, 3, "conv1d input");
  RequireRank(kernel, 3, "conv1d kernel");
  if (stride == 0) throw std::invalid_argument("conv1d: stride must be >= 1");
  if (kernel.dim(1) != input.dim(1)) {
    throw std::invalid_argument("conv1d: kernel expects " +
                                std::to_string(kernel.dim(1)) +
                                " input channels, got " +
                                std::to_string(input.dim(1)));
  }
  if (input.dim(2) < kernel.dim(2)) {
    throw std::invalid_argument("conv1d: input length " +
                                std::to_string(input.dim(2)) +
                                " is shorter than kernel " +
                                std::to_string(kernel.dim(2)));
  }
}

}  // namespace

template <typename T>
Tensor<T> Conv1d(const Tensor<T>& input, const Tensor<T>& kernel,
                 std::size_t stride) {
  CheckConvShapes(input, kernel, stride);
  const std::size_t batch = input.dim(0);
  const std::size_t in_ch = input.dim(1);
  const std::size_t in_len = input.dim(2);
  const std::size_t out_ch = kernel.dim(0);
  const std::size_t width = kernel.dim(2);
  const std::size_t out_len = (in_len - width) / stride + 1;

  Tensor<T> output({batch, out_ch, out_len});
  for (std::size_t b = 0; b < batch; ++b) {
    for (std::size_t o = 0; o < out_ch; ++o) {
      T* y = &output(b, o, 0);
      for (std::size_t c = 0; c < in_ch; ++c) {
        const T* x = &input(b, c, 0);
        const T* w = &kernel(o, c, 0);
        for (std::size_t k = 0; k < width; ++k) {
          const T wk = w[k];
          const T* xk = x + k;
          if (stride == 1) {
            for (std::size_t t = 0; t < out_len; ++t) y[t] += wk * xk[t];
          } else {
            for (std::size_t t = 0; t < out_len; ++t) {
              y[t] += wk * xk[t * stride];
            }
          }
        }
      }
    }
  }
  return output;
}

template <typename T>
Conv1dGrads<T> Conv1dBackward(const Tensor<T>& input, const Tensor<T>& kernel,
                              std::size_t stride, const Tensor<T>& grad_output,
                              bool need_input_grad) {
  CheckConvShapes(input, kernel, stride);
  const std::size_t batch = input.dim(0);
  const std::size_t in_ch = input.dim(1);
  const std::size_t out_ch = kernel.dim(0);
  const std::size_t width = kernel.dim(2);
  const std::size_t out_len = (input.dim(2) - width) / stride + 1;
  if (grad_output.shape() != Shape{batch, out_ch, out_len}) {
    throw std::invalid_argument("conv1d backward: grad shape " +
                                ShapeString(grad_output.shape()));
  }

  Conv1dGrads<T> grads;
  grads.kernel = Tensor<T>(kernel.shape());
  if (need_input_grad) grads.input = Tensor<T>(input.shape());

  for (std::size_t b = 0; b < batch; ++b) {
    for (std::size_t o = 0; o < out_ch; ++o) {
      const T* gy = &grad_output(b, o, 0);
      for (std::size_t c = 0; c < in_ch; ++c) {
        const T* x = &input(b, c, 0);
        T* gw = &grads.kernel(o, c, 0);
        // Accumulate over t with k innermost so the update is a contiguous
        // axpy into the kernel row.
        for (std::size_t t = 0; t < out_len; ++t) {
          const T g = gy[t];
          const T* xt = x + t * stride;
          for (std::size_t k = 0; k < width; ++k) gw[k] += g * xt[k];
        }
        if (need_input_grad) {
          T* gx = &grads.input(b, c, 0);
          const T* w = &kernel(o, c, 0);
          for (std::size_t k = 0; k < width; ++k) {
            const T wk = w[k];
            T* gxk = gx + k;
            if (stride == 1) {
              for (std::size_t t = 0; t < out_len; ++t) gxk[t] += wk * gy[t];
            } else {
              for (std::size_t t = 0; t < out_len; ++t) {
                gxk[t * stride] += wk * gy[t];
              }
            }
          }
        }
      }
    }
  }
  return grads;
}

template Tensor<float> Conv1d(const Tensor<float>&, const Tensor<float>&,
                              std::size_t);
template Tensor<double> Conv1d(const Tensor<double>&, const Tensor<double>&,
                               std::size_t);
template Conv1dGrads<float> Conv1dBackward(const Tensor<float>&,
                                           const Tensor<float>&, std::size_t,
                                           const Tensor<float>&, bool);
template Conv1dGrads<double> Conv1dBackward(const Tensor<double>&,
                                            const Tensor<double>&, std::size_t,
                                            const Tensor<double>&, bool);

}  // namespace swasr::nn
