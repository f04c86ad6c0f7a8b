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

#include "swasr/nn/adam.h"

#include <cmath>
#include <stdexcept>

namespace swasr::nn {

template <typename T>
void AdamStep(std::span<Parameter<T>* const> params, AdamState<T>& state) {
  for (const Parameter<T>* p : params) {
    if (p->grad.shape() != p->value.shape()) {
      throw std::invalid_argument("adam: gradient shape mismatch for " +
                                  p->name);
    }
    for (T g : p->grad.values()) {
      if (!std::isfinite(g)) {
        throw std::runtime_error("adam: non-finite gradient in parameter " +
                                 p->name);
      }
    }
  }

  const AdamOptions& opt = state.options;
  ++state.step_count;
  const double step = static_cast<double>(state.step_count);
  const double bias1 = 1.0 - std::pow(opt.beta1, step);
  const double bias2 = 1.0 - std::pow(opt.beta2, step);
  const T b1 = static_cast<T>(opt.beta1), b2 = static_cast<T>(opt.beta2);

  for (Parameter<T>* p : params) {
    auto m_it =
        state.first_moment.try_emplace(p->name, p->value.shape()).first;
    auto v_it =
        state.second_moment.try_emplace(p->name, p->value.shape()).first;
    Tensor<T>& m = m_it->second;
    Tensor<T>& v = v_it->second;
    if (m.shape() != p->value.shape() || v.shape() != p->value.shape()) {
      throw std::invalid_argument("adam: moment shape mismatch for " + p->name);
    }
    for (std::size_t i = 0; i < p->value.size(); ++i) {
      const T g = p->grad[i];
      m[i] = b1 * m[i] + (T(1) - b1) * g;
      v[i] = b2 * v[i] + (T(1) - b2) * g * g;
      const double m_hat = m[i] / bias1;
      const double v_hat = v[i] / bias2;
      p->value[i] -= static_cast<T>(opt.lr * m_hat /
                                    (std::sqrt(v_hat) + opt.epsilon));
    }
  }
}

template void AdamStep(std::span<Parameter<float>* const>, AdamState<float>&);
template void AdamStep(std::span<Parameter<double>* const>,
                       AdamState<double>&);

}  // namespace swasr::nn
