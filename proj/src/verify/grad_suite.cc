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

#include "swasr/verify/grad_suite.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>

#include "swasr/ctc/ctc.h"
#include "swasr/dsp/sinc.h"
#include "swasr/model/model.h"
#include "swasr/nn/activation.h"
#include "swasr/nn/batch_norm.h"
#include "swasr/nn/conv1d.h"
#include "swasr/nn/dropout.h"
#include "swasr/nn/grad_check.h"
#include "swasr/nn/linear.h"
#include "swasr/nn/lstm.h"
#include "swasr/nn/maxpool1d.h"

namespace swasr::verify {

namespace {

using Rng = std::mt19937_64;
using TensorD = Tensor<double>;

std::size_t Pick(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

TensorD Random(const Shape& shape, Rng& rng, double scale = 1.0) {
  std::normal_distribution<double> dist(0.0, scale);
  TensorD t(shape);
  for (double& v : t.values()) v = dist(rng);
  return t;
}

double Dot(const TensorD& a, const TensorD& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Lengths RandomLengths(std::size_t batch, std::size_t max_len, std::size_t min_len,
                      Rng& rng) {
  Lengths lengths(batch);
  for (auto& l : lengths) l = Pick(rng, min_len, max_len);
  lengths[Pick(rng, 0, batch - 1)] = max_len;
  return lengths;
}

// Accumulates per-instance checks of one operation.
class OpCheck {
 public:
  OpCheck(std::string op, double tolerance) {
    result_.op = std::move(op);
    result_.tolerance = tolerance;
  }

  // Checks d(loss)/dx against `analytic`; all tensors of one instance must
  // pass for the instance to count.
  void Tensor(TensorD& x, const TensorD& analytic,
              const std::function<double()>& loss,
              const std::vector<double>& refine = {}) {
    nn::GradCheckOptions options;
    options.tolerance = result_.tolerance;
    options.refine_steps = refine;
    const nn::GradCheckReport r = nn::GradCheck(x.values(), analytic.values(), loss, options);
    instance_ok_ = instance_ok_ && r.passed;
    result_.refined += r.refined;
    if (!std::isfinite(r.max_rel_error) || r.max_rel_error > result_.max_rel_error) {
      result_.max_rel_error = r.max_rel_error;
    }
  }

  void EndInstance() {
    ++result_.seeds;
    if (instance_ok_) ++result_.passed;
    instance_ok_ = true;
  }

  OpGradResult result() const { return result_; }

 private:
  OpGradResult result_;
  bool instance_ok_ = true;
};

void SincInstance(OpCheck& check, Rng& rng) {
  dsp::SincLayerConfig cfg;
  cfg.num_filters = Pick(rng, 1, 4);
  cfg.kernel_length = 2 * Pick(rng, 2, 16) + 1;
  cfg.sample_rate = 8000.0;
  const std::size_t batch = Pick(rng, 1, 2);
  const std::size_t n = Pick(rng, cfg.kernel_length, 400);
  dsp::SincParams<double> params = dsp::InitSincParams<double>(cfg, rng());
  TensorD x = Random({batch, 1, n}, rng);
  const TensorD r = Random({batch, cfg.num_filters, n - cfg.kernel_length + 1}, rng);
  auto loss = [&] { return Dot(dsp::SincConv(x, params, cfg), r); };
  const auto g = dsp::SincConvBackward(x, params, cfg, r);
  check.Tensor(params.low_hz, g.low_hz, loss);
  check.Tensor(params.band_hz, g.band_hz, loss);
  check.Tensor(x, g.input, loss);
}

void ConvInstance(OpCheck& check, Rng& rng) {
  const std::size_t batch = Pick(rng, 1, 2), cin = Pick(rng, 1, 3),
                    cout = Pick(rng, 1, 3), k = Pick(rng, 1, 5),
                    stride = Pick(rng, 1, 3), len = Pick(rng, k, k + 12);
  TensorD x = Random({batch, cin, len}, rng);
  TensorD w = Random({cout, cin, k}, rng);
  const TensorD r = Random({batch, cout, (len - k) / stride + 1}, rng);
  auto loss = [&] { return Dot(nn::Conv1d(x, w, stride), r); };
  const auto g = nn::Conv1dBackward(x, w, stride, r);
  check.Tensor(x, g.input, loss);
  check.Tensor(w, g.kernel, loss);
}

void PoolInstance(OpCheck& check, Rng& rng) {
  const std::size_t batch = Pick(rng, 1, 2), ch = Pick(rng, 1, 3),
                    window = Pick(rng, 1, 4), len = Pick(rng, window, 14);
  TensorD x = Random({batch, ch, len}, rng);
  const TensorD r = Random({batch, ch, len / window}, rng);
  auto loss = [&] { return Dot(nn::MaxPool1d(x, window).output, r); };
  const auto fwd = nn::MaxPool1d(x, window);
  check.Tensor(x, nn::MaxPool1dBackward(x.shape(), fwd.argmax, r), loss);
}

void ReluInstance(OpCheck& check, Rng& rng) {
  TensorD x = Random({Pick(rng, 1, 3), Pick(rng, 1, 6)}, rng);
  for (double& v : x.values()) {
    if (std::abs(v) < 1e-3) v = 0.5;
  }
  const TensorD r = Random(x.shape(), rng);
  auto loss = [&] { return Dot(nn::Relu(x), r); };
  check.Tensor(x, nn::ReluBackward(x, r), loss);
}

void BatchNormInstance(OpCheck& check, Rng& rng, nn::Layout layout,
                       nn::Mode mode) {
  const std::size_t batch = Pick(rng, 1, 3), ch = Pick(rng, 1, 3), len = Pick(rng, 2, 6);
  const Lengths lengths = RandomLengths(batch, len, 1, rng);
  const Shape shape = layout == nn::Layout::kChannelsFirst ? Shape{batch, ch, len}
                                                            : Shape{batch, len, ch};
  TensorD x = Random(shape, rng, 2.0);
  TensorD gamma = Random({ch}, rng);
  TensorD beta = Random({ch}, rng);
  TensorD mean = Random({ch}, rng);
  TensorD var({ch});
  for (double& v : var.values()) v = 0.5 + std::uniform_real_distribution<double>(0, 1)(rng);
  const TensorD r = Random(shape, rng);
  auto loss = [&] {
    return Dot(nn::BatchNorm(x, lengths, layout, gamma, beta, mean, var, mode,
                             static_cast<nn::BatchNormCache<double>*>(nullptr)),
               r);
  };
  nn::BatchNormCache<double> cache;
  nn::BatchNorm(x, lengths, layout, gamma, beta, mean, var, mode, &cache);
  const auto g = nn::BatchNormBackward(r, lengths, layout, gamma, cache);
  check.Tensor(x, g.input, loss);
  check.Tensor(gamma, g.gamma, loss);
  check.Tensor(beta, g.beta, loss);
}

void DropoutInstance(OpCheck& check, Rng& rng) {
  TensorD x = Random({Pick(rng, 1, 3), Pick(rng, 1, 8)}, rng);
  const double rate = 0.3;
  const std::uint64_t seed = rng();
  const TensorD r = Random(x.shape(), rng);
  auto loss = [&] {
    return Dot(nn::Dropout(x, rate, nn::Mode::kTrain, seed,
                           static_cast<TensorD*>(nullptr)),
               r);
  };
  TensorD mask;
  nn::Dropout(x, rate, nn::Mode::kTrain, seed, &mask);
  check.Tensor(x, nn::DropoutBackward(r, mask), loss);
}

void LstmInstance(OpCheck& check, Rng& rng) {
  const std::size_t batch = Pick(rng, 1, 2), steps = Pick(rng, 1, 4),
                    feat = Pick(rng, 1, 3), h = Pick(rng, 1, 3);
  const Lengths lengths = RandomLengths(batch, steps, 1, rng);
  TensorD x = Random({batch, steps, feat}, rng);
  std::array<TensorD, 2> w_ih, w_hh, bias;
  for (std::size_t d = 0; d < 2; ++d) {
    w_ih[d] = Random({4 * h, feat}, rng, 0.7);
    w_hh[d] = Random({4 * h, h}, rng, 0.7);
    bias[d] = Random({4 * h}, rng, 0.5);
  }
  const nn::LstmWeightsRef<double> fwd{w_ih[0], w_hh[0], bias[0]};
  const nn::LstmWeightsRef<double> bwd{w_ih[1], w_hh[1], bias[1]};
  const TensorD r = Random({batch, steps, 2 * h}, rng);
  auto loss = [&] {
    return Dot(nn::BiLstm(x, lengths, fwd, bwd,
                          static_cast<nn::BiLstmCache<double>*>(nullptr)),
               r);
  };
  nn::BiLstmCache<double> cache;
  nn::BiLstm(x, lengths, fwd, bwd, &cache);
  const auto g = nn::BiLstmBackward(r, lengths, fwd, bwd, cache);
  check.Tensor(x, g.input, loss);
  const std::array<const nn::LstmGrads<double>*, 2> dirs{&g.forward, &g.backward};
  for (std::size_t d = 0; d < 2; ++d) {
    check.Tensor(w_ih[d], dirs[d]->w_ih, loss);
    check.Tensor(w_hh[d], dirs[d]->w_hh, loss);
    check.Tensor(bias[d], dirs[d]->bias, loss);
  }
}

void LinearInstance(OpCheck& check, Rng& rng) {
  const std::size_t batch = Pick(rng, 1, 3), in = Pick(rng, 1, 4), out = Pick(rng, 1, 4);
  TensorD x = Random({batch, Pick(rng, 1, 3), in}, rng);
  TensorD w = Random({out, in}, rng);
  TensorD b = Random({out}, rng);
  const TensorD r = Random({batch, x.dim(1), out}, rng);
  auto loss = [&] { return Dot(nn::Linear(x, w, b), r); };
  const auto g = nn::LinearBackward(x, w, r);
  check.Tensor(x, g.input, loss);
  check.Tensor(w, g.weight, loss);
  check.Tensor(b, g.bias, loss);
}

void LogSoftmaxInstance(OpCheck& check, Rng& rng) {
  TensorD x = Random({Pick(rng, 1, 3), Pick(rng, 1, 4), Pick(rng, 1, 5)}, rng, 2.0);
  const TensorD r = Random(x.shape(), rng);
  auto loss = [&] { return Dot(nn::LogSoftmax(x), r); };
  check.Tensor(x, nn::LogSoftmaxBackward(nn::LogSoftmax(x), r), loss);
}

void CtcInstance(OpCheck& check, Rng& rng) {
  const std::size_t batch = Pick(rng, 1, 3), steps = Pick(rng, 1, 6),
                    classes = Pick(rng, 2, 4);
  const Lengths frames = RandomLengths(batch, steps, 1, rng);
  std::vector<ctc::LabelSequence> labels(batch);
  std::uniform_int_distribution<std::int32_t> tok(1, static_cast<std::int32_t>(classes) - 1);
  for (std::size_t b = 0; b < batch; ++b) {
    do {
      labels[b].assign(Pick(rng, 0, 3), 0);
      for (auto& id : labels[b]) id = tok(rng);
    } while (ctc::MinFrames(labels[b]) > frames[b]);
  }
  TensorD lp = nn::LogSoftmax(Random({batch, steps, classes}, rng, 1.5));
  auto loss = [&] { return ctc::CtcLossAndGrad(lp, labels, frames).loss; };
  check.Tensor(lp, ctc::CtcLossAndGrad(lp, labels, frames).grad, loss);
}

void ModelInstance(OpCheck& check, Rng& rng) {
  model::ModelConfig c = model::PresetConfig("sinc+cnn");
  c.channels = 2;
  c.lstm_hidden = 2;
  c.lstm_layers = 1;
  c.vocab_size = 3;
  const std::uint64_t seed = rng();
  model::Model<double> m(c, seed);
  const Lengths lengths{Pick(rng, 1800, 2400), Pick(rng, 700, 2400)};
  const std::size_t n = std::max(lengths[0], lengths[1]);
  TensorD w({2, 1, n});
  std::normal_distribution<double> dist(0.0, 0.3);
  for (std::size_t b = 0; b < 2; ++b) {
    for (std::size_t i = 0; i < lengths[b]; ++i) w(b, 0, i) = dist(rng);
  }
  std::vector<ctc::LabelSequence> labels(2);
  for (std::size_t b = 0; b < 2; ++b) {
    const std::size_t frames = c.FrameCount(lengths[b]);
    do {
      labels[b].assign(Pick(rng, 1, 3), 0);
      for (auto& id : labels[b]) id = static_cast<std::int32_t>(Pick(rng, 1, 2));
    } while (ctc::MinFrames(labels[b]) > frames);
  }
  auto loss = [&] {
    const auto out = m.Forward(w, lengths, nn::Mode::kTrain, seed);
    return ctc::CtcLossAndGrad(out.log_probs, labels, out.frame_lengths).loss;
  };
  m.ZeroGrad();
  model::ForwardCache<double> cache;
  const auto out = m.Forward(w, lengths, nn::Mode::kTrain, seed, &cache);
  m.Backward(cache, ctc::CtcLossAndGrad(out.log_probs, labels, out.frame_lengths).grad);
  for (auto& p : m.parameters()) {
    const TensorD analytic = p.grad;
    check.Tensor(p.value, analytic, loss, {1e-6, 1e-7});
  }
}

OpGradResult Run(const std::string& op, double tolerance, std::size_t seeds,
                 std::uint64_t base_seed,
                 const std::function<void(OpCheck&, Rng&)>& instance) {
  OpCheck check(op, tolerance);
  for (std::size_t s = 0; s < seeds; ++s) {
    Rng rng(base_seed * 7919 + s * 104729 + std::hash<std::string>{}(op));
    instance(check, rng);
    check.EndInstance();
  }
  return check.result();
}

}  // namespace

std::vector<OpGradResult> RunGradSuite(std::size_t seeds, std::uint64_t base_seed) {
  using nn::Layout;
  using nn::Mode;
  std::vector<OpGradResult> out;
  auto add = [&](const std::string& op, double tol,
                 const std::function<void(OpCheck&, Rng&)>& f) {
    out.push_back(Run(op, tol, seeds, base_seed, f));
  };
  add("sinc-conv", kOpTolerance, SincInstance);
  add("conv1d", kOpTolerance, ConvInstance);
  add("maxpool1d", kOpTolerance, PoolInstance);
  add("relu", kOpTolerance, ReluInstance);
  add("batchnorm-train", kOpTolerance, [](OpCheck& c, Rng& r) {
    BatchNormInstance(c, r, Layout::kChannelsFirst, Mode::kTrain);
    BatchNormInstance(c, r, Layout::kChannelsLast, Mode::kTrain);
  });
  add("batchnorm-eval", kOpTolerance, [](OpCheck& c, Rng& r) {
    BatchNormInstance(c, r, Layout::kChannelsFirst, Mode::kEval);
    BatchNormInstance(c, r, Layout::kChannelsLast, Mode::kEval);
  });
  add("dropout", kOpTolerance, DropoutInstance);
  add("bilstm", kOpTolerance, LstmInstance);
  add("linear", kOpTolerance, LinearInstance);
  add("log-softmax", kOpTolerance, LogSoftmaxInstance);
  add("ctc", kOpTolerance, CtcInstance);
  add("model-end-to-end", kModelTolerance, ModelInstance);
  return out;
}

std::string FormatResult(const OpGradResult& r) {
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "%-18s %s  %zu/%zu instances  max_rel_err=%.3e  tol=%.0e  refined=%zu",
                r.op.c_str(), r.ok() ? "PASS" : "FAIL", r.passed, r.seeds,
                r.max_rel_error, r.tolerance, r.refined);
  return buf;
}

}  // namespace swasr::verify
