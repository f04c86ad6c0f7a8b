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

#include "swasr/nn/dropout.h"

#include <random>
#include <stdexcept>
#include <string>

namespace swasr::nn {

namespace {

void CheckRate(double rate) {
  if (!(rate >= 0.0 && rate < 1.0)) {
    throw std::invalid_argument("dropout: rate must be in [0, 1), got " +
                                std::to_string(rate));
  }
}

}  // namespace

template <typename T>
Tensor<T> DropoutMask(const Shape& shape, double rate, std::uint64_t seed) {
  CheckRate(rate);
  Tensor<T> mask(shape);
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution drop(rate);
  const T keep = static_cast<T>(1.0 / (1.0 - rate));
  for (T& m : mask.storage()) m = drop(rng) ? T(0) : keep;
  return mask;
}

template <typename T>
Tensor<T> Dropout(const Tensor<T>& input, double rate, Mode mode,
                  std::uint64_t seed, Tensor<T>* mask) {
  CheckRate(rate);
  if (mode == Mode::kEval || rate == 0.0) {
    if (mask) *mask = Tensor<T>();
    return input;
  }
  Tensor<T> m = DropoutMask<T>(input.shape(), rate, seed);
  Tensor<T> out = input;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] *= m[i];
  if (mask) *mask = std::move(m);
  return out;
}

template <typename T>
Tensor<T> DropoutBackward(const Tensor<T>& grad_output, const Tensor<T>& mask) {
  if (mask.empty()) return grad_output;
  if (mask.shape() != grad_output.shape()) {
    throw std::invalid_argument("dropout backward: mask shape mismatch");
  }
  Tensor<T> grad = grad_output;
  for (std::size_t i = 0; i < grad.size(); ++i) grad[i] *= mask[i];
  return grad;
}

template Tensor<float> DropoutMask<float>(const Shape&, double, std::uint64_t);
template Tensor<double> DropoutMask<double>(const Shape&, double,
                                            std::uint64_t);
template Tensor<float> Dropout(const Tensor<float>&, double, Mode,
                               std::uint64_t, Tensor<float>*);
template Tensor<double> Dropout(const Tensor<double>&, double, Mode,
                                std::uint64_t, Tensor<double>*);
template Tensor<float> DropoutBackward(const Tensor<float>&,
                                       const Tensor<float>&);
template Tensor<double> DropoutBackward(const Tensor<double>&,
                                        const Tensor<double>&);

}  // namespace swasr::nn
