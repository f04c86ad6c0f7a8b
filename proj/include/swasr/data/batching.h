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

#ifndef SWASR_DATA_BATCHING_H_
#define SWASR_DATA_BATCHING_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "swasr/ctc/ctc.h"
#include "swasr/data/manifest.h"
#include "swasr/tensor.h"
#include "swasr/vocab/vocabulary.h"

namespace swasr::data {

inline constexpr std::size_t kDefaultBatchSize = 32;

// Utterance indices per batch. Epoch 0 orders by descending duration (ties
// keep manifest order); later epochs use a shuffle seeded by seed ^ epoch.
// The last batch may be short.
std::vector<std::vector<std::size_t>> MakeBatches(const Manifest& manifest,
                                                  std::size_t batch_size,
                                                  std::size_t epoch,
                                                  std::uint64_t seed);

template <typename T>
struct Batch {
  Tensor<T> waveforms;  // [B, 1, Nmax], zero-padded
  Lengths lengths;      // true sample counts
  std::vector<ctc::LabelSequence> labels;
  std::vector<std::size_t> label_lengths;
};

// Utterances must have loaded samples and a common sample rate.
template <typename T>
Batch<T> PadBatch(const Manifest& manifest,
                  std::span<const std::size_t> indices,
                  const vocab::TokenVocabulary& vocab);

}  // namespace swasr::data

#endif  // SWASR_DATA_BATCHING_H_
