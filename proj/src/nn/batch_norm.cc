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

#include "swasr/nn/batch_norm.h"

#include <cmath>
#include <stdexcept>
#include <string>

namespace swasr::nn {

namespace {

struct Geometry {
  std::size_t batch;
  std::size_t channels;
  std::size_t length;
  std::size_t channel_stride;
  std::size_t time_stride;

  std::size_t Offset(std::size_t b, std::size_t c, std::size_t t) const {
    return b * channels * length + c * channel_stride + t * time_stride;
  }
};

template <typename T>
Geometry MakeGeometry(const Tensor<T>& x, const Lengths& lengths,
                      Layout layout) {
  RequireRank(x, 3, "batchnorm input");
  Geometry g{};
  g.batch = x.dim(0);
  if (layout == Layout::kChannelsFirst) {
    g.channels = x.dim(1);
    g.length = x.dim(2);
    g.channel_stride = g.length;
    g.time_stride = 1;
  } else {
    g.length = x.dim(1);
    g.channels = x.dim(2);
    g.channel_stride = 1;
    g.time_stride = g.channels;
  }
  if (lengths.size() != g.batch) {
    throw std::invalid_argument("batchnorm: " + std::to_string(lengths.size()) +
                                " lengths for batch of " +
                                std::to_string(g.batch));
  }
  for (std::size_t len : lengths) {
    if (len > g.length) {
      throw std::invalid_argument("batchnorm: length " + std::to_string(len) +
                                  " exceeds padded length " +
                                  std::to_string(g.length));
    }
  }
  return g;
}

}  // namespace

template <typename T>
Tensor<T> BatchNorm(const Tensor<T>& input, const Lengths& lengths,
                    Layout layout, const Tensor<T>& gamma,
                    const Tensor<T>& beta, const Tensor<T>& running_mean,
                    const Tensor<T>& running_var, Mode mode,
                    BatchNormCache<T>* cache) {
  const Geometry g = MakeGeometry(input, lengths, layout);
  if (gamma.size() != g.channels || beta.size() != g.channels ||
      running_mean.size() != g.channels || running_var.size() != g.channels) {
    throw std::invalid_argument("batchnorm: parameter size does not match " +
                                std::to_string(g.channels) + " channels");
  }
  std::size_t count = 0;
  for (std::size_t len : lengths) count += len;

  std::vector<T> mean(g.channels), var(g.channels), inv_std(g.channels);
  if (mode == Mode::kTrain) {
    if (count < 2) {
      throw std::invalid_argument(
          "batchnorm: training needs more than one valid position per "
          "channel, got " +
          std::to_string(count));
    }
    for (std::size_t c = 0; c < g.channels; ++c) {
      double sum = 0.0;
      for (std::size_t b = 0; b < g.batch; ++b) {
        for (std::size_t t = 0; t < lengths[b]; ++t) {
          sum += input[g.Offset(b, c, t)];
        }
      }
      const double m = sum / static_cast<double>(count);
      double sq = 0.0;
      for (std::size_t b = 0; b < g.batch; ++b) {
        for (std::size_t t = 0; t < lengths[b]; ++t) {
          const double d = input[g.Offset(b, c, t)] - m;
          sq += d * d;
        }
      }
      mean[c] = static_cast<T>(m);
      var[c] = static_cast<T>(sq / static_cast<double>(count));
    }
  } else {
    for (std::size_t c = 0; c < g.channels; ++c) {
      mean[c] = running_mean[c];
      var[c] = running_var[c];
    }
  }
  for (std::size_t c = 0; c < g.channels; ++c) {
    inv_std[c] = T(1) / std::sqrt(var[c] + T(kBatchNormEpsilon));
  }

  Tensor<T> output(input.shape());
  Tensor<T> x_hat;
  if (cache) x_hat = Tensor<T>(input.shape());
  for (std::size_t b = 0; b < g.batch; ++b) {
    for (std::size_t c = 0; c < g.channels; ++c) {
      for (std::size_t t = 0; t < lengths[b]; ++t) {
        const std::size_t i = g.Offset(b, c, t);
        const T xh = (input[i] - mean[c]) * inv_std[c];
        output[i] = gamma[c] * xh + beta[c];
        if (cache) x_hat[i] = xh;
      }
    }
  }
  if (cache) {
    cache->mode = mode;
    cache->x_hat = std::move(x_hat);
    cache->inv_std = std::move(inv_std);
    cache->batch_mean = std::move(mean);
    cache->batch_var = std::move(var);
    cache->count = count;
  }
  return output;
}

template <typename T>
void UpdateRunningStats(const BatchNormCache<T>& cache, Tensor<T>& running_mean,
                        Tensor<T>& running_var, double momentum) {
  if (cache.mode != Mode::kTrain) return;
  const double unbias = static_cast<double>(cache.count) /
                        static_cast<double>(cache.count - 1);
  for (std::size_t c = 0; c < running_mean.size(); ++c) {
    running_mean[c] = static_cast<T>((1.0 - momentum) * running_mean[c] +
                                     momentum * cache.batch_mean[c]);
    running_var[c] = static_cast<T>((1.0 - momentum) * running_var[c] +
                                    momentum * cache.batch_var[c] * unbias);
  }
}

template <typename T>
BatchNormGrads<T> BatchNormBackward(const Tensor<T>& grad_output,
                                    const Lengths& lengths, Layout layout,
                                    const Tensor<T>& gamma,
                                    const BatchNormCache<T>& cache) {
  const Geometry g = MakeGeometry(grad_output, lengths, layout);
  if (cache.x_hat.shape() != grad_output.shape()) {
    throw std::invalid_argument("batchnorm backward: cache shape mismatch");
  }
  BatchNormGrads<T> grads;
  grads.input = Tensor<T>(grad_output.shape());
  grads.gamma = Tensor<T>({g.channels});
  grads.beta = Tensor<T>({g.channels});
  const double n = static_cast<double>(cache.count);

  for (std::size_t c = 0; c < g.channels; ++c) {
    double sum_gy = 0.0, sum_gy_xhat = 0.0;
    for (std::size_t b = 0; b < g.batch; ++b) {
      for (std::size_t t = 0; t < lengths[b]; ++t) {
        const std::size_t i = g.Offset(b, c, t);
        sum_gy += grad_output[i];
        sum_gy_xhat += grad_output[i] * cache.x_hat[i];
      }
    }
    grads.gamma[c] = static_cast<T>(sum_gy_xhat);
    grads.beta[c] = static_cast<T>(sum_gy);
    const double scale = gamma[c] * cache.inv_std[c];
    for (std::size_t b = 0; b < g.batch; ++b) {
      for (std::size_t t = 0; t < lengths[b]; ++t) {
        const std::size_t i = g.Offset(b, c, t);
        if (cache.mode == Mode::kTrain) {
          grads.input[i] = static_cast<T>(
              scale * (grad_output[i] - sum_gy / n -
                       cache.x_hat[i] * sum_gy_xhat / n));
        } else {
          grads.input[i] = static_cast<T>(scale * grad_output[i]);
        }
      }
    }
  }
  return grads;
}

#define SWASR_INSTANTIATE(T)                                                 \
  template Tensor<T> BatchNorm(const Tensor<T>&, const Lengths&, Layout,     \
                               const Tensor<T>&, const Tensor<T>&,           \
                               const Tensor<T>&, const Tensor<T>&, Mode,     \
                               BatchNormCache<T>*);                          \
  template void UpdateRunningStats(const BatchNormCache<T>&, Tensor<T>&,     \
                                   Tensor<T>&, double);                      \
  template BatchNormGrads<T> BatchNormBackward(                              \
      const Tensor<T>&, const Lengths&, Layout, const Tensor<T>&,            \
      const BatchNormCache<T>&);
SWASR_INSTANTIATE(float)
SWASR_INSTANTIATE(double)
#undef SWASR_INSTANTIATE

}  // namespace swasr::nn
