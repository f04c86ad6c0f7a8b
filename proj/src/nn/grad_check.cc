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

#include "swasr/nn/grad_check.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace swasr::nn {

GradCheckReport GradCheck(std::span<double> x,
                          std::span<const double> analytic,
                          const std::function<double()>& loss,
                          const GradCheckOptions& options) {
  if (x.size() != analytic.size()) {
    throw std::invalid_argument("grad_check: parameter/gradient size mismatch");
  }
  std::vector<std::size_t> indices = options.indices;
  if (indices.empty()) {
    indices.resize(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) indices[i] = i;
  }

  GradCheckReport report;
  auto central = [&](std::size_t i, double h) {
    const double saved = x[i];
    x[i] = saved + h;
    const double plus = loss();
    x[i] = saved - h;
    const double minus = loss();
    x[i] = saved;
    return (plus - minus) / (2.0 * h);
  };
  auto relative = [&](std::size_t i, double numeric) {
    const double scale = std::max({std::abs(numeric), std::abs(analytic[i]),
                                   options.scale_floor});
    return std::abs(numeric - analytic[i]) / scale;
  };
  for (std::size_t i : indices) {
    if (i >= x.size()) throw std::out_of_range("grad_check: index out of range");
    double numeric = central(i, options.step);
    double rel_err = relative(i, numeric);
    if (!(rel_err < options.tolerance)) {
      for (double h : options.refine_steps) {
        const double n = central(i, h);
        const double r = relative(i, n);
        if (r < options.tolerance) {
          numeric = n;
          rel_err = r;
          ++report.refined;
          break;
        }
      }
    }
    const double abs_err = std::abs(numeric - analytic[i]);
    if (!std::isfinite(rel_err) || rel_err > report.max_rel_error) {
      report.max_rel_error = rel_err;
      report.worst_index = i;
    }
    report.max_abs_error = std::max(report.max_abs_error, abs_err);
    ++report.checked;
  }
  report.passed = std::isfinite(report.max_rel_error) &&
                  report.max_rel_error < options.tolerance;
  return report;
}

}  // namespace swasr::nn
