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

#include <cmath>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "swasr/ctc/ctc.h"
#include "swasr/nn/activation.h"
#include "test_util.h"

namespace swasr::ctc {
namespace {

using swasr::testing::CheckGrad;
using swasr::testing::RandomTensor;

constexpr std::int32_t kX = 1, kY = 2, kZ = 3;

Tensor<double> RandomLogProbs(std::size_t frames, std::size_t classes,
                              std::mt19937_64& rng) {
  return nn::LogSoftmax(RandomTensor({frames, classes}, rng, 1.5));
}

LabelSequence RandomLabel(std::size_t max_len, std::size_t classes,
                          std::size_t frames, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> len_dist(0, max_len);
  std::uniform_int_distribution<std::int32_t> tok(
      1, static_cast<std::int32_t>(classes) - 1);
  LabelSequence label;
  do {
    label.clear();
    const std::size_t m = len_dist(rng);
    for (std::size_t i = 0; i < m; ++i) label.push_back(tok(rng));
  } while (MinFrames(label) > frames);
  return label;
}

double LogLikelihood(const Tensor<double>& lp2d, const LabelSequence& label) {
  const Tensor<double> lp = lp2d.Reshaped({1, lp2d.dim(0), lp2d.dim(1)});
  return CtcLossAndGrad(lp, {label}, {lp2d.dim(0)}).log_likelihoods[0];
}

TEST(CollapseTest, MergesRepeatsThenDropsBlanks) {
  const std::vector<std::int32_t> a{kX, kBlankId, kY, kY, kBlankId, kZ};
  const std::vector<std::int32_t> b{kBlankId, kX, kY, kBlankId, kZ, kBlankId};
  EXPECT_EQ(CollapsePath(a), (LabelSequence{kX, kY, kZ}));
  EXPECT_EQ(CollapsePath(b), (LabelSequence{kX, kY, kZ}));
  EXPECT_TRUE(CollapsePath(std::vector<std::int32_t>(5, kBlankId)).empty());
  const std::vector<std::int32_t> c{kX, kBlankId, kX};
  EXPECT_EQ(CollapsePath(c), (LabelSequence{kX, kX}));
}

TEST(CollapseTest, IdempotentWithoutAdjacentRepeats) {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<std::int32_t> tok(0, 3);
  int checked = 0;
  for (int trial = 0; trial < 400; ++trial) {
    std::vector<std::int32_t> path(1 + trial % 9);
    for (auto& id : path) id = tok(rng);
    const LabelSequence once = CollapsePath(path);
    if (MinFrames(once) != once.size()) continue;
    EXPECT_EQ(CollapsePath(once), once);
    ++checked;
  }
  EXPECT_GT(checked, 200);
  // A label with an adjacent repeat needs a blank between the copies, so
  // reading it back as a path merges them.
  const std::vector<std::int32_t> x_blank_x{kX, kBlankId, kX};
  EXPECT_EQ(CollapsePath(CollapsePath(x_blank_x)), (LabelSequence{kX}));
}

TEST(MinFramesTest, CountsRepeats) {
  EXPECT_EQ(MinFrames(LabelSequence{}), 0u);
  EXPECT_EQ(MinFrames(LabelSequence{1, 2, 3}), 3u);
  EXPECT_EQ(MinFrames(LabelSequence{1, 1, 2, 2, 2}), 8u);
}

TEST(CtcLossTest, TwoFramesUniform) {
  // Paths over {_, A} with T = 2: AA, A_, _A collapse to "A"; __ does not.
  const double half = std::log(0.5);
  Tensor<double> lp({1, 2, 2}, half);
  const CtcResult<double> r = CtcLossAndGrad(lp, {{1}}, {2});
  EXPECT_NEAR(std::exp(r.log_likelihoods[0]), 0.75, 1e-15);
  EXPECT_NEAR(r.loss, -std::log(0.75), 1e-15);
  EXPECT_NEAR(BruteForceCtc(lp.Reshaped({2, 2}), LabelSequence{1}), 0.75,
              1e-15);
}

TEST(CtcLossTest, EmptyLabelIsAllBlankPath) {
  std::mt19937_64 rng(2);
  const Tensor<double> lp = RandomLogProbs(5, 4, rng);
  double expect = 0.0;
  for (std::size_t t = 0; t < 5; ++t) expect += lp(t, 0);
  EXPECT_NEAR(LogLikelihood(lp, {}), expect, 1e-12);
}

TEST(CtcLossTest, MatchesBruteForceOnRandomInstances) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t frames = 1 + trial % 6;
    const std::size_t classes = 2 + trial % 3;
    const Tensor<double> lp = RandomLogProbs(frames, classes, rng);
    const LabelSequence label = RandomLabel(3, classes, frames, rng);
    const double brute = std::log(BruteForceCtc(lp, label));
    EXPECT_NEAR(LogLikelihood(lp, label), brute, 1e-9)
        << "T=" << frames << " K=" << classes;
  }
}

TEST(CtcLossTest, ProbabilitiesOverAllLabelsSumToOne) {
  std::mt19937_64 rng(4);
  for (std::size_t frames = 1; frames <= 4; ++frames) {
    for (std::size_t classes = 2; classes <= 3; ++classes) {
      const Tensor<double> lp = RandomLogProbs(frames, classes, rng);
      double total = 0.0;
      // Enumerate every label of length 0..frames over ids 1..K-1.
      std::function<void(LabelSequence&)> visit = [&](LabelSequence& label) {
        if (MinFrames(label) <= frames) {
          total += std::exp(LogLikelihood(lp, label));
        }
        if (label.size() == frames) return;
        for (std::int32_t id = 1; id < static_cast<std::int32_t>(classes);
             ++id) {
          label.push_back(id);
          visit(label);
          label.pop_back();
        }
      };
      LabelSequence label;
      visit(label);
      EXPECT_NEAR(total, 1.0, 1e-9);
    }
  }
}

TEST(CtcLossTest, GradientMatchesFiniteDifferences) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t batch = 1 + trial % 3;
    const std::size_t max_frames = 4 + trial % 4;
    const std::size_t classes = 3 + trial % 3;
    Tensor<double> lp =
        nn::LogSoftmax(RandomTensor({batch, max_frames, classes}, rng));
    std::vector<LabelSequence> labels;
    Lengths frames;
    for (std::size_t b = 0; b < batch; ++b) {
      frames.push_back(max_frames - b);
      labels.push_back(RandomLabel(3, classes, frames.back(), rng));
    }
    const CtcResult<double> r = CtcLossAndGrad(lp, labels, frames);
    auto loss = [&] { return CtcLossAndGrad(lp, labels, frames).loss; };
    EXPECT_TRUE(CheckGrad(lp, r.grad, loss).passed) << "trial " << trial;
    for (std::size_t b = 0; b < batch; ++b) {
      for (std::size_t t = frames[b]; t < max_frames; ++t) {
        for (std::size_t k = 0; k < classes; ++k) {
          EXPECT_EQ(r.grad(b, t, k), 0.0);
        }
      }
    }
  }
}

TEST(CtcLossTest, LossIsMeanOverBatchAndNonNegative) {
  std::mt19937_64 rng(6);
  Tensor<double> lp = nn::LogSoftmax(RandomTensor({2, 6, 4}, rng));
  const std::vector<LabelSequence> labels{{1, 2}, {3, 3}};
  const CtcResult<double> r = CtcLossAndGrad(lp, labels, {6, 5});
  EXPECT_NEAR(r.loss, -(r.log_likelihoods[0] + r.log_likelihoods[1]) / 2,
              1e-15);
  EXPECT_GE(r.loss, 0.0);
  EXPECT_TRUE(std::isfinite(r.loss));
}

TEST(CtcLossTest, InfeasibleUtteranceIsNamed) {
  Tensor<double> lp({2, 3, 3}, std::log(1.0 / 3));
  try {
    CtcLossAndGrad(lp, {{1}, {2, 2}}, {3, 2});
    FAIL();
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("utterance 1"), std::string::npos);
  }
}

TEST(CtcLossTest, NonFiniteInputRejected) {
  Tensor<double> lp({1, 2, 2}, std::log(0.5));
  lp(0, 1, 1) = std::nan("");
  EXPECT_THROW(CtcLossAndGrad(lp, {{1}}, {2}), std::invalid_argument);
  EXPECT_THROW(CtcLossAndGrad(Tensor<double>({1, 2, 2}), {{2}}, {2}),
               std::invalid_argument);
}

TEST(CtcLossTest, SinglePrecisionAgreesWithDouble) {
  std::mt19937_64 rng(7);
  const Tensor<double> lp = nn::LogSoftmax(RandomTensor({1, 30, 6}, rng));
  const CtcResult<double> d = CtcLossAndGrad(lp, {{1, 2, 3, 3, 5}}, {30});
  const CtcResult<float> f =
      CtcLossAndGrad(lp.Cast<float>(), {{1, 2, 3, 3, 5}}, {30});
  EXPECT_NEAR(d.loss, f.loss, 1e-4);
}

TEST(BruteForceTest, SmallCases) {
  std::mt19937_64 rng(8);
  const Tensor<double> one = RandomLogProbs(1, 3, rng);
  EXPECT_NEAR(BruteForceCtc(one, LabelSequence{2}), std::exp(one(0, 2)), 1e-15);
  const Tensor<double> two = RandomLogProbs(2, 3, rng);
  EXPECT_EQ(BruteForceCtc(two, LabelSequence{1, 2, 1}), 0.0);
  EXPECT_THROW(BruteForceCtc(Tensor<double>({13, 3}), LabelSequence{1}),
               std::invalid_argument);
}

Tensor<double> OneHotPath(const std::vector<std::int32_t>& path,
                          std::size_t classes) {
  Tensor<double> lp({1, path.size(), classes}, std::log(0.1));
  for (std::size_t t = 0; t < path.size(); ++t) lp(0, t, path[t]) = 0.0;
  return lp;
}

TEST(GreedyDecodeTest, CollapsesArgmaxPath) {
  const Tensor<double> lp =
      OneHotPath({kBlankId, kX, kY, kY, kBlankId, kZ}, 4);
  EXPECT_EQ(GreedyDecode(lp, {6})[0], (LabelSequence{kX, kY, kZ}));
  EXPECT_EQ(GreedyDecode(lp, {3})[0], (LabelSequence{kX, kY}));
  EXPECT_TRUE(GreedyDecode(OneHotPath({0, 0, 0}, 4), {3})[0].empty());
}

TEST(GreedyDecodeTest, TiesGoToLowestIndex) {
  Tensor<float> lp({1, 2, 3}, -1.0f);
  EXPECT_TRUE(GreedyDecode(lp, {2})[0].empty());
  lp(0, 0, 0) = -5.0f;
  EXPECT_EQ(GreedyDecode(lp, {2})[0], (LabelSequence{1}));
}

TEST(GreedyDecodeTest, OutputIsStableUnderRecollapse) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 50; ++trial) {
    const Tensor<double> lp =
        nn::LogSoftmax(RandomTensor({1, 12, 4}, rng, 3.0));
    const LabelSequence out = GreedyDecode(lp, {12})[0];
    if (MinFrames(out) == out.size()) {
      EXPECT_EQ(CollapsePath(out), out);
    }
    for (std::int32_t id : out) EXPECT_NE(id, kBlankId);
  }
}

}  // namespace
}  // namespace swasr::ctc
