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

#ifndef SWASR_NN_BATCH_NORM_H_
#define SWASR_NN_BATCH_NORM_H_

#include <cstddef>
#include <vector>

#include "swasr/nn/mode.h"
#include "swasr/tensor.h"

namespace swasr::nn {

enum class Layout {
  kChannelsFirst,  // [B, C, L]
  kChannelsLast,   // [B, L, C]
};

inline constexpr double kBatchNormEpsilon = 1e-5;
inline constexpr double kBatchNormMomentum = 0.1;

template <typename T>
struct BatchNormCache {
  Mode mode = Mode::kEval;
  Tensor<T> x_hat;
  std::vector<T> inv_std;
  std::vector<T> batch_mean;
  std::vector<T> batch_var;  // biased
  std::size_t count = 0;     // valid positions per channel
};

// Per-channel normalization over the valid positions of a padded batch.
// Position t of sequence b is valid iff t < lengths[b]; invalid positions
// are excluded from the statistics and written as zero. Training mode uses
// batch statistics and requires more than one valid position per channel;
// evaluation mode uses the running statistics.
template <typename T>
Tensor<T> BatchNorm(const Tensor<T>& input, const Lengths& lengths,
                    Layout layout, const Tensor<T>& gamma,
                    const Tensor<T>& beta, const Tensor<T>& running_mean,
                    const Tensor<T>& running_var, Mode mode,
                    BatchNormCache<T>* cache);

// running = (1 - momentum) * running + momentum * batch, with the unbiased
// batch variance.
template <typename T>
void UpdateRunningStats(const BatchNormCache<T>& cache, Tensor<T>& running_mean,
                        Tensor<T>& running_var,
                        double momentum = kBatchNormMomentum);

template <typename T>
struct BatchNormGrads {
  Tensor<T> input;
  Tensor<T> gamma;
  Tensor<T> beta;
};

template <typename T>
BatchNormGrads<T> BatchNormBackward(const Tensor<T>& grad_output,
                                    const Lengths& lengths, Layout layout,
                                    const Tensor<T>& gamma,
                                    const BatchNormCache<T>& cache);

}  // namespace swasr::nn

#endif  // SWASR_NN_BATCH_NORM_H_
