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

#include "swasr/nn/lstm.h"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace swasr::nn {

namespace {

template <typename T>
T Sigmoid(T x) {
  return T(1) / (T(1) + std::exp(-x));
}

template <typename T>
void CheckWeights(const LstmWeightsRef<T>& w, std::size_t features,
                  const char* which) {
  const std::size_t h = w.w_hh.rank() == 2 ? w.w_hh.dim(1) : 0;
  if (h == 0 || w.w_hh.shape() != Shape{4 * h, h} ||
      w.w_ih.shape() != Shape{4 * h, features} || w.bias.size() != 4 * h) {
    throw std::invalid_argument(std::string("bilstm: ") + which +
                                " weights do not match " +
                                std::to_string(features) + " input features");
  }
}

template <typename T>
std::vector<T> Transposed(const Tensor<T>& m) {
  const std::size_t rows = m.dim(0), cols = m.dim(1);
  std::vector<T> out(rows * cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) out[c * rows + r] = m(r, c);
  }
  return out;
}

void CheckLengths(const Lengths& lengths, std::size_t batch,
                  std::size_t steps) {
  if (lengths.size() != batch) {
    throw std::invalid_argument("bilstm: " + std::to_string(lengths.size()) +
                                " lengths for batch of " +
                                std::to_string(batch));
  }
  for (std::size_t b = 0; b < batch; ++b) {
    if (lengths[b] > steps) {
      throw std::invalid_argument("bilstm: sequence " + std::to_string(b) +
                                  " has length " + std::to_string(lengths[b]) +
                                  " > " + std::to_string(steps) + " steps");
    }
  }
}

// Step index of the s-th processed frame for direction `dir`.
inline std::size_t StepAt(int dir, std::size_t s, std::size_t len) {
  return dir == 0 ? s : len - 1 - s;
}

}  // namespace

template <typename T>
Tensor<T> BiLstm(const Tensor<T>& input, const Lengths& lengths,
                 const LstmWeightsRef<T>& forward,
                 const LstmWeightsRef<T>& backward, BiLstmCache<T>* cache) {
  RequireRank(input, 3, "bilstm input");
  const std::size_t batch = input.dim(0);
  const std::size_t steps = input.dim(1);
  const std::size_t features = input.dim(2);
  CheckLengths(lengths, batch, steps);
  CheckWeights(forward, features, "forward");
  CheckWeights(backward, features, "backward");
  const std::size_t hid = forward.hidden();
  if (backward.hidden() != hid) {
    throw std::invalid_argument("bilstm: direction hidden sizes differ");
  }
  const std::size_t g4 = 4 * hid;

  Tensor<T> output({batch, steps, 2 * hid});
  BiLstmCache<T> local;
  BiLstmCache<T>& c = cache ? *cache : local;
  c.input = input;
  for (int d = 0; d < 2; ++d) {
    c.gates[d] = Tensor<T>({batch, steps, g4});
    c.cells[d] = Tensor<T>({batch, steps, hid});
    c.hidden[d] = Tensor<T>({batch, steps, hid});
  }

  std::vector<T> pre(g4), h_prev(hid), c_prev(hid);
  for (int d = 0; d < 2; ++d) {
    const LstmWeightsRef<T>& w = d == 0 ? forward : backward;
    const std::vector<T> w_ih_t = Transposed(w.w_ih);  // [F, 4H]
    const std::vector<T> w_hh_t = Transposed(w.w_hh);  // [H, 4H]
    for (std::size_t b = 0; b < batch; ++b) {
      const std::size_t len = lengths[b];
      std::fill(h_prev.begin(), h_prev.end(), T(0));
      std::fill(c_prev.begin(), c_prev.end(), T(0));
      for (std::size_t s = 0; s < len; ++s) {
        const std::size_t t = StepAt(d, s, len);
        const T* x = &input(b, t, 0);
        for (std::size_t r = 0; r < g4; ++r) pre[r] = w.bias[r];
        for (std::size_t f = 0; f < features; ++f) {
          const T xf = x[f];
          const T* col = &w_ih_t[f * g4];
          for (std::size_t r = 0; r < g4; ++r) pre[r] += xf * col[r];
        }
        for (std::size_t j = 0; j < hid; ++j) {
          const T hj = h_prev[j];
          const T* col = &w_hh_t[j * g4];
          for (std::size_t r = 0; r < g4; ++r) pre[r] += hj * col[r];
        }
        T* gates = &c.gates[d](b, t, 0);
        T* cell = &c.cells[d](b, t, 0);
        T* hidden = &c.hidden[d](b, t, 0);
        T* out = &output(b, t, d * hid);
        for (std::size_t j = 0; j < hid; ++j) {
          const T ig = Sigmoid(pre[j]);
          const T fg = Sigmoid(pre[hid + j]);
          const T gg = std::tanh(pre[2 * hid + j]);
          const T og = Sigmoid(pre[3 * hid + j]);
          gates[j] = ig;
          gates[hid + j] = fg;
          gates[2 * hid + j] = gg;
          gates[3 * hid + j] = og;
          const T cj = fg * c_prev[j] + ig * gg;
          const T hj = og * std::tanh(cj);
          cell[j] = cj;
          hidden[j] = hj;
          out[j] = hj;
        }
        std::copy(cell, cell + hid, c_prev.begin());
        std::copy(hidden, hidden + hid, h_prev.begin());
      }
    }
  }
  return output;
}

template <typename T>
BiLstmGrads<T> BiLstmBackward(const Tensor<T>& grad_output,
                              const Lengths& lengths,
                              const LstmWeightsRef<T>& forward,
                              const LstmWeightsRef<T>& backward,
                              const BiLstmCache<T>& cache) {
  const Tensor<T>& input = cache.input;
  const std::size_t batch = input.dim(0);
  const std::size_t steps = input.dim(1);
  const std::size_t features = input.dim(2);
  const std::size_t hid = forward.hidden();
  const std::size_t g4 = 4 * hid;
  if (grad_output.shape() != Shape{batch, steps, 2 * hid}) {
    throw std::invalid_argument("bilstm backward: grad shape " +
                                ShapeString(grad_output.shape()));
  }
  CheckLengths(lengths, batch, steps);

  BiLstmGrads<T> grads;
  grads.input = Tensor<T>(input.shape());
  std::vector<T> dpre(g4), dh_next(hid), dc_next(hid);
  const std::vector<T> zeros(hid, T(0));
  for (int d = 0; d < 2; ++d) {
    const LstmWeightsRef<T>& w = d == 0 ? forward : backward;
    LstmGrads<T> g{Tensor<T>(w.w_ih.shape()), Tensor<T>(w.w_hh.shape()),
                   Tensor<T>(w.bias.shape())};
    for (std::size_t b = 0; b < batch; ++b) {
      const std::size_t len = lengths[b];
      std::fill(dh_next.begin(), dh_next.end(), T(0));
      std::fill(dc_next.begin(), dc_next.end(), T(0));
      for (std::size_t s = len; s-- > 0;) {
        const std::size_t t = StepAt(d, s, len);
        const T* gates = &cache.gates[d](b, t, 0);
        const T* cell = &cache.cells[d](b, t, 0);
        const T* c_prev = zeros.data();
        const T* h_prev = zeros.data();
        if (s > 0) {
          const std::size_t tp = StepAt(d, s - 1, len);
          c_prev = &cache.cells[d](b, tp, 0);
          h_prev = &cache.hidden[d](b, tp, 0);
        }
        const T* gy = &grad_output(b, t, d * hid);
        for (std::size_t j = 0; j < hid; ++j) {
          const T ig = gates[j], fg = gates[hid + j];
          const T gg = gates[2 * hid + j], og = gates[3 * hid + j];
          const T tc = std::tanh(cell[j]);
          const T dh = gy[j] + dh_next[j];
          const T dc = dc_next[j] + dh * og * (T(1) - tc * tc);
          dpre[j] = dc * gg * ig * (T(1) - ig);
          dpre[hid + j] = dc * c_prev[j] * fg * (T(1) - fg);
          dpre[2 * hid + j] = dc * ig * (T(1) - gg * gg);
          dpre[3 * hid + j] = dh * tc * og * (T(1) - og);
          dc_next[j] = dc * fg;
        }
        const T* x = &input(b, t, 0);
        T* gx = &grads.input(b, t, 0);
        std::fill(dh_next.begin(), dh_next.end(), T(0));
        for (std::size_t r = 0; r < g4; ++r) {
          const T dr = dpre[r];
          g.bias[r] += dr;
          T* gw_ih = &g.w_ih(r, 0);
          const T* w_ih = &w.w_ih(r, 0);
          for (std::size_t f = 0; f < features; ++f) {
            gw_ih[f] += dr * x[f];
            gx[f] += dr * w_ih[f];
          }
          T* gw_hh = &g.w_hh(r, 0);
          const T* w_hh = &w.w_hh(r, 0);
          for (std::size_t j = 0; j < hid; ++j) {
            gw_hh[j] += dr * h_prev[j];
            dh_next[j] += dr * w_hh[j];
          }
        }
      }
    }
    (d == 0 ? grads.forward : grads.backward) = std::move(g);
  }
  return grads;
}

template Tensor<float> BiLstm(const Tensor<float>&, const Lengths&,
                              const LstmWeightsRef<float>&,
                              const LstmWeightsRef<float>&,
                              BiLstmCache<float>*);
template Tensor<double> BiLstm(const Tensor<double>&, const Lengths&,
                               const LstmWeightsRef<double>&,
                               const LstmWeightsRef<double>&,
                               BiLstmCache<double>*);
template BiLstmGrads<float> BiLstmBackward(const Tensor<float>&,
                                           const Lengths&,
                                           const LstmWeightsRef<float>&,
                                           const LstmWeightsRef<float>&,
                                           const BiLstmCache<float>&);
template BiLstmGrads<double> BiLstmBackward(const Tensor<double>&,
                                            const Lengths&,
                                            const LstmWeightsRef<double>&,
                                            const LstmWeightsRef<double>&,
                                            const BiLstmCache<double>&);

}  // namespace swasr::nn
