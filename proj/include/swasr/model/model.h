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

#ifndef SWASR_MODEL_MODEL_H_
#define SWASR_MODEL_MODEL_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "swasr/dsp/sinc.h"
#include "swasr/model/config.h"
#include "swasr/nn/batch_norm.h"
#include "swasr/nn/lstm.h"
#include "swasr/nn/mode.h"
#include "swasr/tensor.h"

namespace swasr::model {

// A non-trainable named tensor (batch-norm running statistics).
template <typename T>
struct Buffer {
  std::string name;
  Tensor<T> value;
};

template <typename T>
struct ConvLayerCache {
  Tensor<T> input;
  Shape conv_shape;
  std::vector<std::size_t> argmax;
  nn::BatchNormCache<T> bn;
  Tensor<T> bn_output;  // pre-ReLU
};

template <typename T>
struct LstmLayerCache {
  nn::BatchNormCache<T> bn;  // unused for layer 0
  Tensor<T> dropout_mask;    // empty when dropout is the identity
  nn::BiLstmCache<T> lstm;
};

// Everything Backward needs from one Forward call.
template <typename T>
struct ForwardCache {
  nn::Mode mode = nn::Mode::kEval;
  // Valid lengths entering each path layer; the last entry is the frame
  // lengths.
  std::vector<Lengths> sample_lengths;
  std::vector<std::array<ConvLayerCache<T>, kPathLayers>> paths;
  std::vector<LstmLayerCache<T>> lstm;
  Tensor<T> output_mask;
  Tensor<T> projection_input;
  Tensor<T> log_probs;
};

template <typename T>
struct ForwardOutput {
  Tensor<T> log_probs;  // [B, T, K]
  Lengths frame_lengths;
};

// Sinc and/or plain convolutional paths, concatenated along channels, then
// a BiLSTM stack, a linear projection and log-softmax.
template <typename T>
class Model {
 public:
  Model(const ModelConfig& config, std::uint64_t seed);

  const ModelConfig& config() const { return config_; }

  std::vector<Parameter<T>>& parameters() { return params_; }
  const std::vector<Parameter<T>>& parameters() const { return params_; }
  std::vector<Buffer<T>>& buffers() { return buffers_; }
  const std::vector<Buffer<T>>& buffers() const { return buffers_; }
  Parameter<T>& FindParameter(const std::string& name);

  std::size_t ParamCount() const;
  void ZeroGrad();

  // The sinc cutoffs of path `path`, which must be a sinc path.
  dsp::SincParams<T> SincParamsOf(std::size_t path) const;

  // waveforms [B, 1, N]; sequence b is valid for its first lengths[b]
  // samples. Throws std::invalid_argument naming the utterance and the
  // minimum sample count when any length is too short. Training mode uses
  // batch statistics (updating the running ones) and dropout seeded by
  // `dropout_seed`.
  ForwardOutput<T> Forward(const Tensor<T>& waveforms, const Lengths& lengths,
                           nn::Mode mode, std::uint64_t dropout_seed = 0,
                           ForwardCache<T>* cache = nullptr);

  // [B, frames, paths * channels]; padded frames are zero.
  Tensor<T> FeatureBlockForward(const Tensor<T>& waveforms,
                                const Lengths& lengths, nn::Mode mode,
                                ForwardCache<T>* cache = nullptr);

  // Accumulates d(loss)/d(parameter) into every parameter's grad given
  // d(loss)/d(log_probs).
  void Backward(const ForwardCache<T>& cache, const Tensor<T>& grad_log_probs);

 private:
  struct PathIndex {
    PathKind kind;
    std::size_t first;                     // sinc low_hz or conv0 weight
    std::array<std::size_t, kPathLayers> conv;  // conv[0] unused for sinc
    std::array<std::size_t, kPathLayers> gamma;
    std::array<std::size_t, kPathLayers> beta;
    std::array<std::size_t, kPathLayers> running;  // mean; var follows
  };
  struct LstmIndex {
    std::array<std::size_t, 2> w_ih, w_hh, bias;
    std::size_t gamma = 0, beta = 0, running = 0;  // layers >= 1
  };

  std::size_t AddParameter(std::string name, Tensor<T> value);
  std::size_t AddBuffer(std::string name, Tensor<T> value);
  Tensor<T> PathForward(std::size_t p, const Tensor<T>& waveforms,
                        nn::Mode mode, ForwardCache<T>& cache);
  void PathBackward(std::size_t p, const ForwardCache<T>& cache,
                    Tensor<T> grad);
  nn::LstmWeightsRef<T> LstmRef(std::size_t layer, std::size_t dir) const;

  ModelConfig config_;
  std::vector<Parameter<T>> params_;
  std::vector<Buffer<T>> buffers_;
  std::vector<PathIndex> paths_;
  std::vector<LstmIndex> lstm_;
  std::size_t out_weight_ = 0;
  std::size_t out_bias_ = 0;
};

}  // namespace swasr::model

#endif  // SWASR_MODEL_MODEL_H_
