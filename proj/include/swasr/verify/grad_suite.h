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

#ifndef SWASR_VERIFY_GRAD_SUITE_H_
#define SWASR_VERIFY_GRAD_SUITE_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace swasr::verify {

struct OpGradResult {
  std::string op;
  std::size_t seeds = 0;
  std::size_t passed = 0;
  double max_rel_error = 0.0;
  double tolerance = 0.0;
  std::size_t refined = 0;  // coordinates re-probed at a smaller step
  bool ok() const { return passed == seeds && seeds > 0; }
};

inline constexpr double kOpTolerance = 1e-4;
inline constexpr double kModelTolerance = 1e-3;

// Central-difference checks (double precision, step 1e-5) of every
// differentiable operation on randomized small shapes, `seeds` instances
// each, plus the end-to-end micro model.
std::vector<OpGradResult> RunGradSuite(std::size_t seeds,
                                       std::uint64_t base_seed = 0);

std::string FormatResult(const OpGradResult& r);

}  // namespace swasr::verify

#endif  // SWASR_VERIFY_GRAD_SUITE_H_
