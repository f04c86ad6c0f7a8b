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

#ifndef SWASR_CTC_CTC_H_
#define SWASR_CTC_CTC_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "swasr/tensor.h"

namespace swasr::ctc {

inline constexpr std::int32_t kBlankId = 0;

// Non-blank token ids.
using LabelSequence = std::vector<std::int32_t>;

// Merges consecutive repeats and then removes blanks.
LabelSequence CollapsePath(std::span<const std::int32_t> path);

// Fewest frames that can emit `label`: one per token plus one blank between
// every pair of equal adjacent tokens.
std::size_t MinFrames(std::span<const std::int32_t> label);

template <typename T>
struct CtcResult {
  // Mean of -log p(label | x) over the batch.
  double loss = 0.0;
  // d(loss)/d(log_probs), zero on padded frames.
  Tensor<T> grad;
  // log p(label | x) per utterance.
  std::vector<double> log_likelihoods;
};

// Log-space forward-backward over the blank-extended label of each
// utterance. log_probs is [B, T, K] with the blank at id 0; only the first
// frame_lengths[b] frames of utterance b are used. Throws
// std::invalid_argument naming the utterance when its label cannot fit its
// frames, when an id is out of range, or when a used log-probability is not
// finite.
template <typename T>
CtcResult<T> CtcLossAndGrad(const Tensor<T>& log_probs,
                            const std::vector<LabelSequence>& labels,
                            const Lengths& frame_lengths);

// Reference p(label | x) by summing over every one of the K^T frame paths of
// a [T, K] log-probability matrix. Refuses instances with K^T > 1e6.
double BruteForceCtc(const Tensor<double>& log_probs,
                     std::span<const std::int32_t> label);

// Per-frame argmax (ties go to the lowest id) followed by CollapsePath.
template <typename T>
std::vector<LabelSequence> GreedyDecode(const Tensor<T>& log_probs,
                                        const Lengths& frame_lengths);

}  // namespace swasr::ctc

#endif  // SWASR_CTC_CTC_H_
