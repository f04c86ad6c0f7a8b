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

#ifndef SWASR_NN_ADAM_H_
#define SWASR_NN_ADAM_H_

#include <cstdint>
#include <map>
#include <span>
#include <string>

#include "swasr/tensor.h"

namespace swasr::nn {

struct AdamOptions {
  double lr = 1e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

// Moments are keyed by parameter name and created zero-filled on first use.
template <typename T>
struct AdamState {
  AdamOptions options;
  std::int64_t step_count = 0;
  std::map<std::string, Tensor<T>> first_moment;
  std::map<std::string, Tensor<T>> second_moment;
};

// One bias-corrected Adam update of every parameter from its `grad`.
// Throws std::runtime_error naming the parameter if any gradient is
// non-finite; in that case nothing is modified.
template <typename T>
void AdamStep(std::span<Parameter<T>* const> params, AdamState<T>& state);

}  // namespace swasr::nn

#endif  // SWASR_NN_ADAM_H_
