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

#include "swasr/ctc/ctc.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace swasr::ctc {

namespace {

constexpr double kLogZero = -std::numeric_limits<double>::infinity();

double LogAdd(double a, double b) {
  if (a == kLogZero) return b;
  if (b == kLogZero) return a;
  const double hi = std::max(a, b);
  return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

std::string Utt(std::size_t b) { return "utterance " + std::to_string(b); }

// Log-likelihood of one utterance and, if `grad` is non-null, the gradient
// of -log p w.r.t. its [frames, K] log-probabilities scaled by `scale`.
template <typename T>
double ForwardBackward(const T* lp, std::size_t frames, std::size_t classes,
                       std::span<const std::int32_t> label, double scale,
                       T* grad) {
  const std::size_t m = label.size();
  const std::size_t states = 2 * m + 1;
  auto token = [&](std::size_t s) {
    return s % 2 == 0 ? kBlankId : label[s / 2];
  };
  auto y = [&](std::size_t t, std::size_t s) {
    return static_cast<double>(lp[t * classes + token(s)]);
  };
  // s may be reached from s - 2 when it is a label distinct from the
  // previous label.
  auto can_skip = [&](std::size_t s) {
    return s >= 2 && s % 2 == 1 && token(s) != token(s - 2);
  };

  std::vector<double> alpha(frames * states, kLogZero);
  std::vector<double> beta(frames * states, kLogZero);
  alpha[0] = y(0, 0);
  if (states > 1) alpha[1] = y(0, 1);
  for (std::size_t t = 1; t < frames; ++t) {
    const double* prev = &alpha[(t - 1) * states];
    double* cur = &alpha[t * states];
    for (std::size_t s = 0; s < states; ++s) {
      double acc = prev[s];
      if (s >= 1) acc = LogAdd(acc, prev[s - 1]);
      if (can_skip(s)) acc = LogAdd(acc, prev[s - 2]);
      cur[s] = acc == kLogZero ? kLogZero : acc + y(t, s);
    }
  }
  const double* last = &alpha[(frames - 1) * states];
  double log_p = last[states - 1];
  if (states > 1) log_p = LogAdd(log_p, last[states - 2]);
  if (!grad) return log_p;

  double* bend = &beta[(frames - 1) * states];
  bend[states - 1] = y(frames - 1, states - 1);
  if (states > 1) bend[states - 2] = y(frames - 1, states - 2);
  for (std::size_t t = frames - 1; t-- > 0;) {
    const double* next = &beta[(t + 1) * states];
    double* cur = &beta[t * states];
    for (std::size_t s = 0; s < states; ++s) {
      double acc = next[s];
      if (s + 1 < states) acc = LogAdd(acc, next[s + 1]);
      if (s + 2 < states && can_skip(s + 2)) acc = LogAdd(acc, next[s + 2]);
      cur[s] = acc == kLogZero ? kLogZero : acc + y(t, s);
    }
  }

  // alpha_t(s) + beta_t(s) counts y_t(s) twice.
  std::vector<double> occupancy(classes);
  for (std::size_t t = 0; t < frames; ++t) {
    std::fill(occupancy.begin(), occupancy.end(), kLogZero);
    for (std::size_t s = 0; s < states; ++s) {
      const double a = alpha[t * states + s], b = beta[t * states + s];
      if (a == kLogZero || b == kLogZero) continue;
      double& occ = occupancy[token(s)];
      occ = LogAdd(occ, a + b - y(t, s));
    }
    for (std::size_t k = 0; k < classes; ++k) {
      grad[t * classes + k] =
          occupancy[k] == kLogZero
              ? T(0)
              : static_cast<T>(-scale * std::exp(occupancy[k] - log_p));
    }
  }
  return log_p;
}

}  // namespace

LabelSequence CollapsePath(std::span<const std::int32_t> path) {
  LabelSequence out;
  std::int32_t prev = -1;
  for (std::int32_t id : path) {
    if (id != prev && id != kBlankId) out.push_back(id);
    prev = id;
  }
  return out;
}

std::size_t MinFrames(std::span<const std::int32_t> label) {
  std::size_t frames = label.size();
  for (std::size_t i = 1; i < label.size(); ++i) {
    if (label[i] == label[i - 1]) ++frames;
  }
  return frames;
}

template <typename T>
CtcResult<T> CtcLossAndGrad(const Tensor<T>& log_probs,
                            const std::vector<LabelSequence>& labels,
                            const Lengths& frame_lengths) {
  RequireRank(log_probs, 3, "ctc log_probs");
  const std::size_t batch = log_probs.dim(0);
  const std::size_t max_frames = log_probs.dim(1);
  const std::size_t classes = log_probs.dim(2);
  if (classes < 2) {
    throw std::invalid_argument("ctc: need at least blank plus one token");
  }
  if (labels.size() != batch || frame_lengths.size() != batch) {
    throw std::invalid_argument("ctc: labels/lengths do not match batch of " +
                                std::to_string(batch));
  }
  for (std::size_t b = 0; b < batch; ++b) {
    const std::size_t frames = frame_lengths[b];
    if (frames == 0 || frames > max_frames) {
      throw std::invalid_argument("ctc: " + Utt(b) + " has frame length " +
                                  std::to_string(frames) + " outside [1, " +
                                  std::to_string(max_frames) + "]");
    }
    for (std::int32_t id : labels[b]) {
      if (id <= kBlankId || static_cast<std::size_t>(id) >= classes) {
        throw std::invalid_argument("ctc: " + Utt(b) + " has label id " +
                                    std::to_string(id) + " outside [1, " +
                                    std::to_string(classes - 1) + "]");
      }
    }
    const std::size_t need = MinFrames(labels[b]);
    if (frames < need) {
      throw std::invalid_argument(
          "ctc: " + Utt(b) + " is infeasible: " + std::to_string(frames) +
          " frames for a label needing " + std::to_string(need));
    }
    const T* lp = &log_probs(b, 0, 0);
    for (std::size_t i = 0; i < frames * classes; ++i) {
      if (!std::isfinite(lp[i])) {
        throw std::invalid_argument("ctc: " + Utt(b) +
                                    " has a non-finite log-probability");
      }
    }
  }

  CtcResult<T> result;
  result.grad = Tensor<T>(log_probs.shape());
  result.log_likelihoods.resize(batch);
  const double scale = 1.0 / static_cast<double>(batch);
  double total = 0.0;
  for (std::size_t b = 0; b < batch; ++b) {
    const double log_p =
        ForwardBackward(&log_probs(b, 0, 0), frame_lengths[b], classes,
                        std::span<const std::int32_t>(labels[b]), scale,
                        &result.grad(b, 0, 0));
    result.log_likelihoods[b] = log_p;
    total -= log_p;
  }
  result.loss = total * scale;
  return result;
}

double BruteForceCtc(const Tensor<double>& log_probs,
                     std::span<const std::int32_t> label) {
  RequireRank(log_probs, 2, "brute-force ctc log_probs");
  const std::size_t frames = log_probs.dim(0);
  const std::size_t classes = log_probs.dim(1);
  double paths = 1.0;
  for (std::size_t t = 0; t < frames; ++t) paths *= static_cast<double>(classes);
  if (paths > 1e6) {
    throw std::invalid_argument("brute-force ctc: " + std::to_string(classes) +
                                "^" + std::to_string(frames) +
                                " paths exceeds the 1e6 limit");
  }
  const LabelSequence target(label.begin(), label.end());
  std::vector<std::int32_t> path(frames, 0);
  double total = 0.0;
  while (true) {
    if (CollapsePath(path) == target) {
      double log_path = 0.0;
      for (std::size_t t = 0; t < frames; ++t) log_path += log_probs(t, path[t]);
      total += std::exp(log_path);
    }
    std::size_t t = 0;
    while (t < frames && ++path[t] == static_cast<std::int32_t>(classes)) {
      path[t] = 0;
      ++t;
    }
    if (t == frames) break;
  }
  return total;
}

template <typename T>
std::vector<LabelSequence> GreedyDecode(const Tensor<T>& log_probs,
                                        const Lengths& frame_lengths) {
  RequireRank(log_probs, 3, "greedy decode log_probs");
  const std::size_t batch = log_probs.dim(0);
  const std::size_t classes = log_probs.dim(2);
  if (frame_lengths.size() != batch) {
    throw std::invalid_argument("greedy decode: lengths do not match batch");
  }
  std::vector<LabelSequence> out(batch);
  std::vector<std::int32_t> path;
  for (std::size_t b = 0; b < batch; ++b) {
    if (frame_lengths[b] > log_probs.dim(1)) {
      throw std::invalid_argument("greedy decode: frame length exceeds tensor");
    }
    path.assign(frame_lengths[b], 0);
    for (std::size_t t = 0; t < frame_lengths[b]; ++t) {
      const T* row = &log_probs(b, t, 0);
      std::size_t best = 0;
      for (std::size_t k = 1; k < classes; ++k) {
        if (row[k] > row[best]) best = k;
      }
      path[t] = static_cast<std::int32_t>(best);
    }
    out[b] = CollapsePath(path);
  }
  return out;
}

template CtcResult<float> CtcLossAndGrad(const Tensor<float>&,
                                         const std::vector<LabelSequence>&,
                                         const Lengths&);
template CtcResult<double> CtcLossAndGrad(const Tensor<double>&,
                                          const std::vector<LabelSequence>&,
                                          const Lengths&);
template std::vector<LabelSequence> GreedyDecode(const Tensor<float>&,
                                                 const Lengths&);
template std::vector<LabelSequence> GreedyDecode(const Tensor<double>&,
                                                 const Lengths&);

}  // namespace swasr::ctc
