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

#ifndef SWASR_TRAIN_METRICS_H_
#define SWASR_TRAIN_METRICS_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace swasr::train {

// Levenshtein distance with unit costs.
std::size_t EditDistance(std::span<const std::int32_t> ref,
                         std::span<const std::int32_t> hyp);

// Corpus-level CER: sum of edit distances over sum of reference lengths.
// Throws std::invalid_argument on mismatched sizes or an empty reference
// total.
double CharacterErrorRate(const std::vector<std::vector<std::int32_t>>& refs,
                          const std::vector<std::vector<std::int32_t>>& hyps);

}  // namespace swasr::train

#endif  // SWASR_TRAIN_METRICS_H_
