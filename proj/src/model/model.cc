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

#include "swasr/model/model.h"

#include <cmath>
#include <random>
#include <stdexcept>

#include "swasr/nn/activation.h"
#include "swasr/nn/conv1d.h"
#include "swasr/nn/dropout.h"
#include "swasr/nn/linear.h"
#include "swasr/nn/maxpool1d.h"

namespace swasr::model {

namespace {

template <typename T>
Tensor<T> Uniform(const Shape& shape, double bound, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(-bound, bound);
  Tensor<T> t(shape);
  for (T& v : t.values()) v = static_cast<T>(dist(rng));
  return t;
}

template <typename T>
void AddInto(Tensor<T>& dst, const Tensor<T>& src) {
  if (dst.shape() != src.shape()) {
    throw std::logic_error("gradient shape mismatch " +
                           ShapeString(dst.shape()) + " vs " +
                           ShapeString(src.shape()));
  }
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += src[i];
}

std::uint64_t MixSeed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

template <typename T>
Model<T>::Model(const ModelConfig& config, std::uint64_t seed)
    : config_(config) {
  config_.Validate();
  std::mt19937_64 rng(seed);
  const std::size_t c = config_.channels;
  const std::size_t k1 = config_.first_kernel;
  const dsp::SincLayerConfig sinc = config_.SincConfig();

  for (std::size_t p = 0; p < config_.paths.size(); ++p) {
    const std::string prefix = "path" + std::to_string(p) + ".";
    PathIndex idx{};
    idx.kind = config_.paths[p];
    if (idx.kind == PathKind::kSinc) {
      dsp::SincParams<T> sp = dsp::InitSincParams<T>(sinc, rng());
      idx.first = AddParameter(prefix + "sinc.low_hz", std::move(sp.low_hz));
      AddParameter(prefix + "sinc.band_hz", std::move(sp.band_hz));
    } else {
      idx.first = AddParameter(
          prefix + "conv0.weight",
          Uniform<T>({c, 1, k1}, 1.0 / std::sqrt(double(k1)), rng));
    }
    idx.conv[0] = idx.first;
    for (std::size_t i = 1; i < kPathLayers; ++i) {
      idx.conv[i] = AddParameter(
          prefix + "conv" + std::to_string(i) + ".weight",
          Uniform<T>({c, c, kInnerKernel},
                     1.0 / std::sqrt(double(c * kInnerKernel)), rng));
    }
    for (std::size_t i = 0; i < kPathLayers; ++i) {
      const std::string bn = prefix + "bn" + std::to_string(i) + ".";
      idx.gamma[i] = AddParameter(bn + "gamma", Tensor<T>({c}, T(1)));
      idx.beta[i] = AddParameter(bn + "beta", Tensor<T>({c}, T(0)));
      idx.running[i] = AddBuffer(bn + "running_mean", Tensor<T>({c}, T(0)));
      AddBuffer(bn + "running_var", Tensor<T>({c}, T(1)));
    }
    paths_.push_back(idx);
  }

  const std::size_t h = config_.lstm_hidden;
  const double bound = 1.0 / std::sqrt(double(h));
  for (std::size_t l = 0; l < config_.lstm_layers; ++l) {
    const std::string prefix = "lstm" + std::to_string(l) + ".";
    const std::size_t in = l == 0 ? config_.FeatureWidth() : 2 * h;
    LstmIndex idx{};
    if (l > 0) {
      idx.gamma = AddParameter(prefix + "bn.gamma", Tensor<T>({in}, T(1)));
      idx.beta = AddParameter(prefix + "bn.beta", Tensor<T>({in}, T(0)));
      idx.running = AddBuffer(prefix + "bn.running_mean", Tensor<T>({in}, T(0)));
      AddBuffer(prefix + "bn.running_var", Tensor<T>({in}, T(1)));
    }
    for (std::size_t d = 0; d < 2; ++d) {
      const std::string dir = prefix + (d == 0 ? "fwd." : "bwd.");
      idx.w_ih[d] = AddParameter(dir + "w_ih", Uniform<T>({4 * h, in}, bound, rng));
      idx.w_hh[d] = AddParameter(dir + "w_hh", Uniform<T>({4 * h, h}, bound, rng));
      idx.bias[d] = AddParameter(dir + "bias", Uniform<T>({4 * h}, bound, rng));
    }
    lstm_.push_back(idx);
  }

  const double out_bound = 1.0 / std::sqrt(double(2 * h));
  out_weight_ = AddParameter("output.weight",
                             Uniform<T>({config_.vocab_size, 2 * h}, out_bound, rng));
  out_bias_ = AddParameter("output.bias",
                           Uniform<T>({config_.vocab_size}, out_bound, rng));
}

template <typename T>
std::size_t Model<T>::AddParameter(std::string name, Tensor<T> value) {
  params_.emplace_back(std::move(name), std::move(value));
  return params_.size() - 1;
}

template <typename T>
std::size_t Model<T>::AddBuffer(std::string name, Tensor<T> value) {
  buffers_.push_back({std::move(name), std::move(value)});
  return buffers_.size() - 1;
}

template <typename T>
Parameter<T>& Model<T>::FindParameter(const std::string& name) {
  for (auto& p : params_) {
    if (p.name == name) return p;
  }
  throw std::invalid_argument("no parameter named '" + name + "'");
}

template <typename T>
std::size_t Model<T>::ParamCount() const {
  std::size_t n = 0;
  for (const auto& p : params_) n += p.value.size();
  return n;
}

template <typename T>
void Model<T>::ZeroGrad() {
  for (auto& p : params_) p.ZeroGrad();
}

template <typename T>
dsp::SincParams<T> Model<T>::SincParamsOf(std::size_t path) const {
  const PathIndex& idx = paths_.at(path);
  if (idx.kind != PathKind::kSinc) {
    throw std::invalid_argument("path " + std::to_string(path) +
                                " is not a sinc path");
  }
  return {params_[idx.first].value, params_[idx.first + 1].value};
}

template <typename T>
nn::LstmWeightsRef<T> Model<T>::LstmRef(std::size_t layer,
                                        std::size_t dir) const {
  const LstmIndex& idx = lstm_[layer];
  return {params_[idx.w_ih[dir]].value, params_[idx.w_hh[dir]].value,
          params_[idx.bias[dir]].value};
}

template <typename T>
Tensor<T> Model<T>::PathForward(std::size_t p, const Tensor<T>& waveforms,
                                nn::Mode mode, ForwardCache<T>& cache) {
  const PathIndex& idx = paths_[p];
  Tensor<T> x = waveforms;
  for (std::size_t i = 0; i < kPathLayers; ++i) {
    ConvLayerCache<T>& lc = cache.paths[p][i];
    Tensor<T> y = (i == 0 && idx.kind == PathKind::kSinc)
                      ? dsp::SincConv(x, SincParamsOf(p), config_.SincConfig())
                      : nn::Conv1d(x, params_[idx.conv[i]].value);
    lc.conv_shape = y.shape();
    lc.input = std::move(x);
    nn::MaxPool1dResult<T> pooled = nn::MaxPool1d(y, kPoolWindow);
    lc.argmax = std::move(pooled.argmax);
    Buffer<T>& rm = buffers_[idx.running[i]];
    Buffer<T>& rv = buffers_[idx.running[i] + 1];
    lc.bn_output = nn::BatchNorm(pooled.output, cache.sample_lengths[i + 1],
                                 nn::Layout::kChannelsFirst,
                                 params_[idx.gamma[i]].value,
                                 params_[idx.beta[i]].value, rm.value, rv.value,
                                 mode, &lc.bn);
    if (mode == nn::Mode::kTrain) nn::UpdateRunningStats(lc.bn, rm.value, rv.value);
    x = nn::Relu(lc.bn_output);
  }
  return x;
}

template <typename T>
Tensor<T> Model<T>::FeatureBlockForward(const Tensor<T>& waveforms,
                                        const Lengths& lengths, nn::Mode mode,
                                        ForwardCache<T>* cache) {
  RequireRank(waveforms, 3, "model input");
  if (waveforms.dim(1) != 1) {
    throw std::invalid_argument("model input must be [B, 1, N], got " +
                                ShapeString(waveforms.shape()));
  }
  const std::size_t batch = waveforms.dim(0);
  if (lengths.size() != batch) {
    throw std::invalid_argument("model input: " + std::to_string(lengths.size()) +
                                " lengths for batch of " + std::to_string(batch));
  }
  const std::size_t min_samples = config_.MinSamples();
  for (std::size_t b = 0; b < batch; ++b) {
    if (lengths[b] > waveforms.dim(2)) {
      throw std::invalid_argument("utterance " + std::to_string(b) +
                                  " length exceeds the padded width");
    }
    if (lengths[b] < min_samples) {
      throw std::invalid_argument(
          "utterance " + std::to_string(b) + " has " +
          std::to_string(lengths[b]) + " samples; the model needs at least " +
          std::to_string(min_samples));
    }
  }

  ForwardCache<T> local;
  ForwardCache<T>& c = cache ? *cache : local;
  c.mode = mode;
  const auto chain = config_.LayerChain();
  c.sample_lengths.assign(1, lengths);
  for (const nn::LayerSpec& layer : chain) {
    Lengths next;
    for (std::size_t len : c.sample_lengths.back()) {
      next.push_back((len - layer.kernel + 1) / layer.pool);
    }
    c.sample_lengths.push_back(std::move(next));
  }
  c.paths.assign(paths_.size(), {});

  const std::size_t ch = config_.channels;
  const std::size_t width = config_.FeatureWidth();
  Tensor<T> features;
  for (std::size_t p = 0; p < paths_.size(); ++p) {
    const Tensor<T> out = PathForward(p, waveforms, mode, c);
    const std::size_t frames = out.dim(2);
    if (p == 0) features = Tensor<T>({batch, frames, width});
    for (std::size_t b = 0; b < batch; ++b) {
      for (std::size_t k = 0; k < ch; ++k) {
        for (std::size_t t = 0; t < frames; ++t) {
          features(b, t, p * ch + k) = out(b, k, t);
        }
      }
    }
  }
  return features;
}

template <typename T>
ForwardOutput<T> Model<T>::Forward(const Tensor<T>& waveforms,
                                   const Lengths& lengths, nn::Mode mode,
                                   std::uint64_t dropout_seed,
                                   ForwardCache<T>* cache) {
  ForwardCache<T> local;
  ForwardCache<T>& c = cache ? *cache : local;
  Tensor<T> h = FeatureBlockForward(waveforms, lengths, mode, &c);
  const Lengths& frames = c.sample_lengths.back();
  const double rate = config_.dropout;

  c.lstm.assign(lstm_.size(), {});
  for (std::size_t l = 0; l < lstm_.size(); ++l) {
    LstmLayerCache<T>& lc = c.lstm[l];
    if (l > 0) {
      const LstmIndex& idx = lstm_[l];
      Buffer<T>& rm = buffers_[idx.running];
      Buffer<T>& rv = buffers_[idx.running + 1];
      h = nn::BatchNorm(h, frames, nn::Layout::kChannelsLast,
                        params_[idx.gamma].value, params_[idx.beta].value,
                        rm.value, rv.value, mode, &lc.bn);
      if (mode == nn::Mode::kTrain) nn::UpdateRunningStats(lc.bn, rm.value, rv.value);
      h = nn::Dropout(h, rate, mode, MixSeed(dropout_seed, l), &lc.dropout_mask);
    }
    h = nn::BiLstm(h, frames, LstmRef(l, 0), LstmRef(l, 1), &lc.lstm);
  }
  c.projection_input =
      nn::Dropout(h, rate, mode, MixSeed(dropout_seed, lstm_.size()),
                  &c.output_mask);
  c.log_probs = nn::LogSoftmax(nn::Linear(
      c.projection_input, params_[out_weight_].value, params_[out_bias_].value));
  return {c.log_probs, frames};
}

template <typename T>
void Model<T>::PathBackward(std::size_t p, const ForwardCache<T>& cache,
                            Tensor<T> grad) {
  const PathIndex& idx = paths_[p];
  for (std::size_t i = kPathLayers; i-- > 0;) {
    const ConvLayerCache<T>& lc = cache.paths[p][i];
    grad = nn::ReluBackward(lc.bn_output, grad);
    nn::BatchNormGrads<T> bn = nn::BatchNormBackward(
        grad, cache.sample_lengths[i + 1], nn::Layout::kChannelsFirst,
        params_[idx.gamma[i]].value, lc.bn);
    AddInto(params_[idx.gamma[i]].grad, bn.gamma);
    AddInto(params_[idx.beta[i]].grad, bn.beta);
    grad = nn::MaxPool1dBackward(lc.conv_shape, lc.argmax, bn.input);
    if (i == 0 && idx.kind == PathKind::kSinc) {
      dsp::SincConvGrads<T> g = dsp::SincConvBackward(
          lc.input, SincParamsOf(p), config_.SincConfig(), grad, false);
      AddInto(params_[idx.first].grad, g.low_hz);
      AddInto(params_[idx.first + 1].grad, g.band_hz);
    } else {
      nn::Conv1dGrads<T> g = nn::Conv1dBackward(
          lc.input, params_[idx.conv[i]].value, 1, grad, i > 0);
      AddInto(params_[idx.conv[i]].grad, g.kernel);
      grad = std::move(g.input);
    }
  }
}

template <typename T>
void Model<T>::Backward(const ForwardCache<T>& cache,
                        const Tensor<T>& grad_log_probs) {
  if (cache.log_probs.shape() != grad_log_probs.shape()) {
    throw std::invalid_argument("backward: gradient shape " +
                                ShapeString(grad_log_probs.shape()) +
                                " does not match the forward output");
  }
  const Lengths& frames = cache.sample_lengths.back();
  Tensor<T> grad = nn::LogSoftmaxBackward(cache.log_probs, grad_log_probs);
  nn::LinearGrads<T> out = nn::LinearBackward(
      cache.projection_input, params_[out_weight_].value, grad);
  AddInto(params_[out_weight_].grad, out.weight);
  AddInto(params_[out_bias_].grad, out.bias);
  grad = std::move(out.input);
  if (!cache.output_mask.empty()) grad = nn::DropoutBackward(grad, cache.output_mask);

  for (std::size_t l = lstm_.size(); l-- > 0;) {
    const LstmLayerCache<T>& lc = cache.lstm[l];
    const LstmIndex& idx = lstm_[l];
    nn::BiLstmGrads<T> g =
        nn::BiLstmBackward(grad, frames, LstmRef(l, 0), LstmRef(l, 1), lc.lstm);
    const std::array<const nn::LstmGrads<T>*, 2> dirs{&g.forward, &g.backward};
    for (std::size_t d = 0; d < 2; ++d) {
      AddInto(params_[idx.w_ih[d]].grad, dirs[d]->w_ih);
      AddInto(params_[idx.w_hh[d]].grad, dirs[d]->w_hh);
      AddInto(params_[idx.bias[d]].grad, dirs[d]->bias);
    }
    grad = std::move(g.input);
    if (l > 0) {
      if (!lc.dropout_mask.empty()) grad = nn::DropoutBackward(grad, lc.dropout_mask);
      nn::BatchNormGrads<T> bn =
          nn::BatchNormBackward(grad, frames, nn::Layout::kChannelsLast,
                                params_[idx.gamma].value, lc.bn);
      AddInto(params_[idx.gamma].grad, bn.gamma);
      AddInto(params_[idx.beta].grad, bn.beta);
      grad = std::move(bn.input);
    }
  }

  const std::size_t batch = grad.dim(0);
  const std::size_t steps = grad.dim(1);
  const std::size_t ch = config_.channels;
  for (std::size_t p = 0; p < paths_.size(); ++p) {
    Tensor<T> slice({batch, ch, steps});
    for (std::size_t b = 0; b < batch; ++b) {
      for (std::size_t k = 0; k < ch; ++k) {
        for (std::size_t t = 0; t < steps; ++t) {
          slice(b, k, t) = grad(b, t, p * ch + k);
        }
      }
    }
    PathBackward(p, cache, std::move(slice));
  }
}

template class Model<float>;
template class Model<double>;

}  // namespace swasr::model
