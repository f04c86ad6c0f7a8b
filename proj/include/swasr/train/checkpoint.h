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

#ifndef SWASR_TRAIN_CHECKPOINT_H_
#define SWASR_TRAIN_CHECKPOINT_H_

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "json.hpp"
#include "swasr/model/model.h"
#include "swasr/nn/adam.h"
#include "swasr/vocab/vocabulary.h"

namespace swasr::train {

inline constexpr char kCheckpointMagic[4] = {'S', 'W', 'A', '1'};
inline constexpr int kCheckpointVersion = 1;

template <typename T>
struct Checkpoint {
  std::size_t epoch = 0;
  std::vector<std::string> vocab_tokens;
  std::unique_ptr<model::Model<T>> model;
  nn::AdamState<T> adam;
  nlohmann::json metadata;
};

// Layout: "SWA1", u32 LE metadata length, UTF-8 JSON metadata, then per
// tensor: u32 name length, name, u8 dtype (0 = f32, 1 = f64), u32 rank,
// u64 dims, raw little-endian data. Tensors are the model parameters,
// batch-norm buffers and Adam moments ("adam.m.<name>", "adam.v.<name>").
// Written to a temporary file and renamed into place.
template <typename T>
void SaveCheckpoint(const std::string& path, const model::Model<T>& model,
                    const nn::AdamState<T>& adam,
                    const vocab::TokenVocabulary& vocab, std::size_t epoch);

// Throws std::runtime_error on a bad magic, unsupported version, truncated
// file, dtype other than T, vocabulary digest mismatch or a tensor that does
// not fit the configured model.
template <typename T>
Checkpoint<T> LoadCheckpoint(const std::string& path);

// Metadata only; lets callers inspect precision before choosing T.
nlohmann::json ReadCheckpointMetadata(const std::string& path);

}  // namespace swasr::train

#endif  // SWASR_TRAIN_CHECKPOINT_H_
