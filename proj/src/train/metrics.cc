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

#include "swasr/train/metrics.h"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace swasr::train {

std::size_t EditDistance(std::span<const std::int32_t> ref,
                         std::span<const std::int32_t> hyp) {
  std::vector<std::size_t> row(hyp.size() + 1);
  std::iota(row.begin(), row.end(), std::size_t{0});
  for (std::size_t i = 1; i <= ref.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= hyp.size(); ++j) {
      const std::size_t up = row[j];
      const std::size_t sub = diag + (ref[i - 1] == hyp[j - 1] ? 0 : 1);
      row[j] = std::min({sub, up + 1, row[j - 1] + 1});
      diag = up;
    }
  }
  return row.back();
}

double CharacterErrorRate(const std::vector<std::vector<std::int32_t>>& refs,
                          const std::vector<std::vector<std::int32_t>>& hyps) {
  if (refs.size() != hyps.size()) {
    throw std::invalid_argument("cer: " + std::to_string(refs.size()) +
                                " references but " +
                                std::to_string(hyps.size()) + " hypotheses");
  }
  std::size_t errors = 0, total = 0;
  for (std::size_t i = 0; i < refs.size(); ++i) {
    errors += EditDistance(refs[i], hyps[i]);
    total += refs[i].size();
  }
  if (total == 0) throw std::invalid_argument("cer: total reference length is zero");
  return static_cast<double>(errors) / static_cast<double>(total);
}

}  // namespace swasr::train
