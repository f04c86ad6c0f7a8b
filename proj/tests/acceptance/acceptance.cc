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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <limits>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.h"
#include "swasr/ctc/ctc.h"
#include "swasr/data/batching.h"
#include "swasr/data/synth.h"
#include "swasr/dsp/sinc.h"
#include "swasr/model/model.h"
#include "swasr/nn/activation.h"
#include "swasr/train/checkpoint.h"
#include "swasr/train/trainer.h"
#include "swasr/verify/grad_suite.h"
#include "swasr/vocab/vocabulary.h"

namespace swasr {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string Format(const char* fmt, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), fmt, args...);
  return buf;
}

Tensor<double> RandomLogProbs(std::size_t frames, std::size_t classes,
                              std::mt19937_64& rng) {
  std::normal_distribution<double> dist(0.0, 1.5);
  Tensor<double> x({frames, classes});
  for (double& v : x.storage()) v = dist(rng);
  return nn::LogSoftmax(x);
}

double LogLikelihood(const Tensor<double>& lp2d, const ctc::LabelSequence& label) {
  const Tensor<double> lp = lp2d.Reshaped({1, lp2d.dim(0), lp2d.dim(1)});
  return ctc::CtcLossAndGrad(lp, {label}, {lp2d.dim(0)}).log_likelihoods[0];
}

Outcome CtcOracle() {
  std::mt19937_64 rng(101);
  double worst = 0.0;
  const int instances = 300;
  for (int i = 0; i < instances; ++i) {
    std::uniform_int_distribution<std::size_t> tdist(1, 6), kdist(2, 4), ldist(0, 3);
    const std::size_t frames = tdist(rng), classes = kdist(rng);
    const Tensor<double> lp = RandomLogProbs(frames, classes, rng);
    std::uniform_int_distribution<std::int32_t> tok(1, static_cast<std::int32_t>(classes) - 1);
    ctc::LabelSequence label;
    do {
      label.assign(ldist(rng), 0);
      for (auto& id : label) id = tok(rng);
    } while (ctc::MinFrames(label) > frames);
    const double diff =
        std::abs(LogLikelihood(lp, label) - std::log(ctc::BruteForceCtc(lp, label)));
    worst = std::max(worst, std::isfinite(diff) ? diff : 1.0);
  }
  return {worst < 1e-9, Format("%d instances (T<=6, K<=4, |l|<=3), max |dlog p| %.2e, tol 1e-9",
                               instances, worst)};
}

Outcome GradientSuite() {
  const auto results = verify::RunGradSuite(20, 0);
  bool ok = true;
  std::ostringstream detail;
  std::size_t refined = 0;
  for (const auto& r : results) {
    ok = ok && r.ok() && r.seeds >= 20;
    refined += r.refined;
    if (!r.ok()) detail << r.op << " failed; ";
  }
  detail << results.size() << " operations x 20 seeds, tol 1e-4 (model 1e-3), "
         << refined << " kink coordinates re-probed";
  for (const auto& r : results) std::cout << "   " << verify::FormatResult(r) << "\n";
  return {ok, detail.str()};
}

data::Manifest OverfitCorpus() {
  data::SynthOptions s;
  s.seed = 2026;
  s.num_utterances = 30;
  s.sample_rate = 8000;
  return data::SynthesizeCorpus(s);
}

vocab::TokenVocabulary CorpusVocab(const data::Manifest& corpus) {
  std::vector<std::string> texts;
  for (const auto& u : corpus) texts.push_back(u.text);
  return vocab::TokenVocabulary::Build(texts);
}

model::ModelConfig MicroConfig(std::size_t vocab_size) {
  model::ModelConfig c = model::PresetConfig("sinc+cnn");
  c.channels = 8;
  c.lstm_hidden = 32;
  c.lstm_layers = 2;
  c.vocab_size = vocab_size;
  return c;
}

Outcome SyntheticOverfit() {
  const data::Manifest corpus = OverfitCorpus();
  const auto vocab = CorpusVocab(corpus);
  model::Model<float> m(MicroConfig(vocab.size()), 7);
  train::TrainConfig tc;
  tc.lr = 1e-3;
  tc.seed = 7;
  tc.max_epochs = 300;
  train::Trainer<float> trainer(m, corpus, vocab, tc);
  double first = 0.0, last = 0.0, cer = 1.0;
  std::size_t epoch = 0;
  while (epoch < tc.max_epochs) {
    last = trainer.RunEpoch().mean_loss;
    if (++epoch == 1) first = last;
    if (epoch % 10 == 0 || epoch == tc.max_epochs) {
      cer = train::Evaluate(m, corpus, vocab).cer;
      if (cer < 0.05 && last < 0.1 * first) break;
    }
  }
  return {cer < 0.05 && last < 0.1 * first && trainer.skipped() == 0,
          Format("%zu utterances, %zu epochs: CER %.4f (< 0.05), loss %.4f / %.4f = %.4f (< 0.1)",
                 corpus.size(), epoch, cer, last, first, last / first)};
}

Outcome FilterBandpass() {
  const double fs = 8000.0;
  dsp::SincLayerConfig c;
  c.num_filters = 1;
  c.kernel_length = 129;
  c.sample_rate = fs;
  std::mt19937_64 rng(404);
  std::uniform_real_distribution<double> u(0.0, fs / 2);
  int good = 0;
  for (int i = 0; i < 100; ++i) {
    double f1, f2;
    do {
      f1 = u(rng);
      f2 = u(rng);
      if (f1 > f2) std::swap(f1, f2);
    } while (f2 - f1 < 0.05 * fs);
    const dsp::SincParams<double> p{Tensor<double>({1}, f1), Tensor<double>({1}, f2 - f1)};
    const Tensor<double> taps = dsp::MaterializeFilters(p, c);
    const auto e = testing::MeasureBands(taps.values(), f1 / fs, f2 / fs, 0.05);
    good += e.stopband_mean <= 0.15 * e.passband_mean;
  }
  return {good >= 95, Format("L=129, %d/100 filters with stopband mean <= 0.15 x passband mean "
                             "(need >= 95)", good)};
}

// Hand-rolled frame arithmetic for a [K1,3,3,3,3] chain with pool 3.
std::size_t ExpectedFrames(std::size_t n, std::size_t k1) {
  const std::size_t kernels[5] = {k1, 3, 3, 3, 3};
  for (std::size_t k : kernels) {
    if (n < k) return 0;
    n = (n - k + 1) / 3;
  }
  return n;
}

Outcome LengthArithmetic() {
  model::ModelConfig c = model::PresetConfig("paper-sinc-cnn-129");
  c.channels = 4;
  c.lstm_hidden = 4;
  c.lstm_layers = 1;
  c.vocab_size = 5;
  model::Model<float> m(c, 1);
  const Lengths one{16000};
  const std::size_t frames =
      m.Forward(Tensor<float>({1, 1, 16000}), one, nn::Mode::kEval).frame_lengths[0];
  std::mt19937_64 rng(55);
  std::uniform_int_distribution<std::size_t> len(c.MinSamples(), 20000);
  int matches = 0;
  for (int batch = 0; batch < 25; ++batch) {
    Lengths lengths(4);
    for (auto& n : lengths) n = len(rng);
    const std::size_t longest = *std::max_element(lengths.begin(), lengths.end());
    Tensor<float> w({4, 1, longest});
    const auto out = m.Forward(w, lengths, nn::Mode::kEval);
    for (std::size_t b = 0; b < 4; ++b) {
      const std::size_t expect = ExpectedFrames(lengths[b], 129);
      matches += out.frame_lengths[b] == expect &&
                 nn::OutputLength(lengths[b], c.LayerChain()) == expect;
    }
  }
  return {frames == 64 && matches == 100,
          Format("16000 samples -> %zu frames (expect 64); %d/100 random lengths match",
                 frames, matches)};
}

Outcome CtcNormalization() {
  std::mt19937_64 rng(606);
  double worst = 0.0;
  int instances = 0;
  for (std::size_t frames = 1; frames <= 4; ++frames) {
    for (std::size_t classes = 2; classes <= 3; ++classes) {
      for (int rep = 0; rep < 5; ++rep, ++instances) {
        const Tensor<double> lp = RandomLogProbs(frames, classes, rng);
        double total = 0.0;
        std::function<void(ctc::LabelSequence&)> visit = [&](ctc::LabelSequence& label) {
          if (ctc::MinFrames(label) <= frames) total += std::exp(LogLikelihood(lp, label));
          if (label.size() == frames) return;
          for (std::int32_t id = 1; id < static_cast<std::int32_t>(classes); ++id) {
            label.push_back(id);
            visit(label);
            label.pop_back();
          }
        };
        ctc::LabelSequence label;
        visit(label);
        worst = std::max(worst, std::abs(total - 1.0));
      }
    }
  }
  return {worst <= 1e-9, Format("%d instances (T<=4, K<=3), max |sum p - 1| %.2e, tol 1e-9",
                                instances, worst)};
}

Outcome DeterminismAndPersistence() {
  data::SynthOptions s;
  s.seed = 9;
  s.num_utterances = 8;
  const data::Manifest corpus = data::SynthesizeCorpus(s);
  const auto vocab = CorpusVocab(corpus);
  train::TrainConfig tc;
  tc.lr = 1e-3;
  tc.batch_size = 4;
  tc.seed = 3;
  model::Model<float> a(MicroConfig(vocab.size()), 3), b(MicroConfig(vocab.size()), 3);
  train::Trainer<float> ta(a, corpus, vocab, tc), tb(b, corpus, vocab, tc);
  std::vector<double> trace_a, trace_b;
  for (int e = 0; e < 4; ++e) {
    trace_a.push_back(ta.RunEpoch().mean_loss);
    trace_b.push_back(tb.RunEpoch().mean_loss);
  }
  bool same_trace = trace_a == trace_b;
  for (std::size_t i = 0; i < a.parameters().size(); ++i) {
    same_trace = same_trace && a.parameters()[i].value == b.parameters()[i].value;
  }

  const fs::path path = fs::temp_directory_path() / "swasr_acceptance_a7.ckpt";
  train::SaveCheckpoint(path.string(), a, ta.optimizer(), vocab, 4);
  auto loaded = train::LoadCheckpoint<float>(path.string());
  const auto batches = data::MakeBatches(corpus, corpus.size(), 0, 0);
  const auto batch = data::PadBatch<float>(corpus, batches[0], vocab);
  const auto before = a.Forward(batch.waveforms, batch.lengths, nn::Mode::kEval);
  const auto after = loaded.model->Forward(batch.waveforms, batch.lengths, nn::Mode::kEval);
  const bool same_forward = before.log_probs == after.log_probs;
  train::SaveCheckpoint((path.string() + ".2"), *loaded.model, loaded.adam, vocab, 4);
  std::ifstream f1(path, std::ios::binary), f2(path.string() + ".2", std::ios::binary);
  const std::string b1{std::istreambuf_iterator<char>(f1), {}};
  const std::string b2{std::istreambuf_iterator<char>(f2), {}};
  fs::remove(path);
  fs::remove(path.string() + ".2");
  return {same_trace && same_forward && b1 == b2,
          Format("loss trace over 4 epochs %s; reloaded forward %s; re-saved bytes %s",
                 same_trace ? "bitwise equal" : "DIFFERS",
                 same_forward ? "bitwise equal" : "DIFFERS",
                 b1 == b2 ? "identical" : "DIFFER")};
}

Outcome AblationPlumbing() {
  const data::Manifest corpus = OverfitCorpus();
  const auto vocab = CorpusVocab(corpus);
  bool ok = true;
  for (const char* preset : {"cnn1", "sinc1", "sinc2", "paper-sinc-cnn-129", "ablation-k251",
                             "ablation-k65"}) {
    model::ModelConfig c = model::PresetConfig(preset);
    c.vocab_size = vocab.size();
    model::Model<float> m(c, 11);
    train::TrainConfig tc;
    tc.lr = 1e-4;
    tc.seed = 11;
    std::ostringstream warnings;
    train::Trainer<float> trainer(m, corpus, vocab, tc, nullptr, &warnings);
    double loss = std::numeric_limits<double>::quiet_NaN();
    try {
      loss = trainer.RunEpoch().mean_loss;
    } catch (const std::exception& e) {
      std::cout << "   " << preset << ": " << e.what() << "\n";
    }
    const bool good = std::isfinite(loss) && loss > 0.0 && !trainer.usable().empty();
    ok = ok && good;
    std::cout << "   " << Format("%-20s structure %-8s K1 %3zu params %8zu used %2zu/%zu loss %.4f",
                                 preset, model::StructureName(c.paths).c_str(),
                                 c.first_kernel, m.ParamCount(), trainer.usable().size(),
                                 corpus.size(), loss)
              << std::endl;
  }
  return {ok, "one epoch per preset, full-size models, all losses finite and positive"};
}

}  // namespace
}  // namespace swasr

int main() {
  using swasr::Outcome;
  struct Criterion {
    const char* id;
    const char* name;
    Outcome (*run)();
  };
  const Criterion criteria[] = {
      {"A1", "ctc oracle equivalence", swasr::CtcOracle},
      {"A2", "gradient suite", swasr::GradientSuite},
      {"A3", "synthetic overfit", swasr::SyntheticOverfit},
      {"A4", "filter bandpass property", swasr::FilterBandpass},
      {"A5", "length arithmetic", swasr::LengthArithmetic},
      {"A6", "ctc normalization", swasr::CtcNormalization},
      {"A7", "determinism and persistence", swasr::DeterminismAndPersistence},
      {"A8", "ablation plumbing", swasr::AblationPlumbing},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failures += !o.pass;
    std::printf("%s %s  %s: %s [%.1f s]\n", c.id, o.pass ? "PASS" : "FAIL", c.name,
                o.detail.c_str(), seconds);
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(std::size(criteria)) - failures,
              std::size(criteria));
  return failures == 0 ? 0 : 1;
}
