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

#ifndef SWASR_NN_GRAD_CHECK_H_
#define SWASR_NN_GRAD_CHECK_H_

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace swasr::nn {

struct GradCheckOptions {
  double step = 1e-5;
  double tolerance = 1e-4;
  // Denominator floor of the relative error, so that coordinates whose true
  // gradient is at finite-difference noise level are compared absolutely.
  double scale_floor = 1e-5;
  // Coordinates to probe; all of them when empty.
  std::vector<std::size_t> indices;
  // Smaller steps tried, in order, for a coordinate that fails at `step`.
  // Piecewise-linear ops (max pooling, ReLU) make the central difference
  // meaningless when a switch point lies within +-step; a wrong gradient
  // fails at every step.
  std::vector<double> refine_steps;
};

struct GradCheckReport {
  double max_rel_error = 0.0;
  double max_abs_error = 0.0;
  std::size_t worst_index = 0;
  std::size_t checked = 0;
  std::size_t refined = 0;  // coordinates that passed only at a refined step
  bool passed = true;
};

// Compares `analytic` against central differences of `loss` taken by
// perturbing `x` in place. `loss` must read its inputs from `x`. Relative
// error is |a - n| / max(|a|, |n|, scale_floor).
GradCheckReport GradCheck(std::span<double> x,
                          std::span<const double> analytic,
                          const std::function<double()>& loss,
                          const GradCheckOptions& options = {});

}  // namespace swasr::nn

#endif  // SWASR_NN_GRAD_CHECK_H_
