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

#include "swasr/data/batching.h"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

namespace swasr::data {

std::vector<std::vector<std::size_t>> MakeBatches(const Manifest& manifest,
                                                  std::size_t batch_size,
                                                  std::size_t epoch,
                                                  std::uint64_t seed) {
  if (manifest.empty()) throw std::invalid_argument("make_batches: empty manifest");
  if (batch_size == 0) throw std::invalid_argument("make_batches: batch_size must be >= 1");
  std::vector<std::size_t> order(manifest.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  if (epoch == 0) {
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return manifest[a].duration > manifest[b].duration;
    });
  } else {
    std::mt19937_64 rng(seed ^ static_cast<std::uint64_t>(epoch));
    std::shuffle(order.begin(), order.end(), rng);
  }
  std::vector<std::vector<std::size_t>> batches;
  for (std::size_t i = 0; i < order.size(); i += batch_size) {
    const std::size_t end = std::min(order.size(), i + batch_size);
    batches.emplace_back(order.begin() + static_cast<std::ptrdiff_t>(i),
                         order.begin() + static_cast<std::ptrdiff_t>(end));
  }
  return batches;
}

template <typename T>
Batch<T> PadBatch(const Manifest& manifest,
                  std::span<const std::size_t> indices,
                  const vocab::TokenVocabulary& vocab) {
  if (indices.empty()) throw std::invalid_argument("pad_batch: no utterances");
  const std::uint32_t rate = manifest.at(indices[0]).sample_rate;
  std::size_t longest = 0;
  for (std::size_t i : indices) {
    const Utterance& u = manifest.at(i);
    if (u.sample_rate != rate) {
      throw std::invalid_argument("pad_batch: mixed sample rates (" +
                                  std::to_string(rate) + " and " +
                                  std::to_string(u.sample_rate) + " Hz)");
    }
    if (u.samples.empty()) {
      throw std::invalid_argument("pad_batch: audio not loaded for " +
                                  u.audio_path);
    }
    longest = std::max(longest, u.samples.size());
  }
  Batch<T> batch;
  batch.waveforms = Tensor<T>({indices.size(), 1, longest});
  for (std::size_t b = 0; b < indices.size(); ++b) {
    const Utterance& u = manifest[indices[b]];
    std::copy(u.samples.begin(), u.samples.end(),
              batch.waveforms.data() + b * longest);
    batch.lengths.push_back(u.samples.size());
    batch.labels.push_back(vocab.Tokenize(u.text));
    batch.label_lengths.push_back(batch.labels.back().size());
  }
  return batch;
}

template Batch<float> PadBatch(const Manifest&, std::span<const std::size_t>,
                               const vocab::TokenVocabulary&);
template Batch<double> PadBatch(const Manifest&, std::span<const std::size_t>,
                                const vocab::TokenVocabulary&);

}  // namespace swasr::data
