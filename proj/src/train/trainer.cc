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

#include "swasr/train/trainer.h"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include "swasr/data/batching.h"
#include "swasr/train/checkpoint.h"
#include "swasr/train/metrics.h"

namespace swasr::train {

void TrainConfig::Validate() const {
  if (!(lr > 0.0)) throw std::invalid_argument("lr must be positive");
  if (batch_size == 0) throw std::invalid_argument("batch_size must be >= 1");
  if (eval_interval == 0) throw std::invalid_argument("eval_interval must be >= 1");
}

std::string EpochLogHeader() { return "epoch,mean_loss,dev_cer,seconds"; }

std::string EpochLogLine(const EpochStats& s) {
  char buf[128];
  if (s.dev_cer >= 0.0) {
    std::snprintf(buf, sizeof(buf), "%zu,%.9g,%.6f,%.3f", s.epoch, s.mean_loss,
                  s.dev_cer, s.seconds);
  } else {
    std::snprintf(buf, sizeof(buf), "%zu,%.9g,,%.3f", s.epoch, s.mean_loss,
                  s.seconds);
  }
  return buf;
}

template <typename T>
EvalResult Evaluate(model::Model<T>& model, const data::Manifest& manifest,
                    const vocab::TokenVocabulary& vocab,
                    std::size_t batch_size) {
  if (batch_size == 0) throw std::invalid_argument("evaluate: batch_size must be >= 1");
  EvalResult result;
  result.hypotheses.resize(manifest.size());
  const std::size_t min_samples = model.config().MinSamples();
  std::vector<std::size_t> pending;
  auto flush = [&] {
    if (pending.empty()) return;
    const data::Batch<T> batch = data::PadBatch<T>(manifest, pending, vocab);
    const auto out = model.Forward(batch.waveforms, batch.lengths, nn::Mode::kEval);
    auto decoded = ctc::GreedyDecode(out.log_probs, out.frame_lengths);
    for (std::size_t i = 0; i < pending.size(); ++i) {
      result.hypotheses[pending[i]] = std::move(decoded[i]);
    }
    pending.clear();
  };
  for (std::size_t i = 0; i < manifest.size(); ++i) {
    result.references.push_back(vocab.Tokenize(manifest[i].text));
    if (manifest[i].samples.size() < min_samples) continue;
    pending.push_back(i);
    if (pending.size() == batch_size) flush();
  }
  flush();
  result.cer = CharacterErrorRate(result.references, result.hypotheses);
  for (std::size_t i = 0; i < manifest.size(); ++i) {
    result.errors += EditDistance(result.references[i], result.hypotheses[i]);
    result.reference_tokens += result.references[i].size();
  }
  return result;
}

template <typename T>
std::string DecodeSamples(model::Model<T>& model, std::span<const float> samples,
                          const vocab::TokenVocabulary& vocab) {
  Tensor<T> w({1, 1, samples.size()});
  std::copy(samples.begin(), samples.end(), w.data());
  const auto out = model.Forward(w, {samples.size()}, nn::Mode::kEval);
  const auto ids = ctc::GreedyDecode(out.log_probs, out.frame_lengths)[0];
  return vocab.Detokenize(ids);
}

template <typename T>
Trainer<T>::Trainer(model::Model<T>& model, data::Manifest train,
                    const vocab::TokenVocabulary& vocab,
                    const TrainConfig& config, std::ostream* log,
                    std::ostream* warn)
    : model_(model), vocab_(vocab), config_(config), log_(log), warn_(warn) {
  config_.Validate();
  if (vocab.size() != model.config().vocab_size) {
    throw std::invalid_argument(
        "vocabulary has " + std::to_string(vocab.size()) +
        " tokens but the model outputs " +
        std::to_string(model.config().vocab_size));
  }
  adam_.options.lr = config_.lr;
  const std::size_t min_samples = model.config().MinSamples();
  for (std::size_t i = 0; i < train.size(); ++i) {
    data::Utterance& u = train[i];
    std::string reason;
    if (u.samples.size() < min_samples) {
      reason = std::to_string(u.samples.size()) + " samples, need " +
               std::to_string(min_samples);
    } else {
      const std::size_t frames = model.config().FrameCount(u.samples.size());
      const std::size_t needed = ctc::MinFrames(vocab.Tokenize(u.text));
      if (needed > frames) {
        reason = "label needs " + std::to_string(needed) + " frames, audio gives " +
                 std::to_string(frames);
      }
    }
    if (!reason.empty()) {
      ++skipped_;
      if (warn_) {
        *warn_ << "warning: skipping utterance " << i << " ("
               << (u.audio_path.empty() ? "in-memory" : u.audio_path)
               << "): " << reason << '\n';
      }
      continue;
    }
    train_.push_back(std::move(u));
  }
  if (train_.empty()) throw std::invalid_argument("no usable training utterances");
}

template <typename T>
void Trainer<T>::Resume(nn::AdamState<T> adam, std::size_t epochs_done) {
  adam.options.lr = config_.lr;
  adam_ = std::move(adam);
  epochs_done_ = epochs_done;
}

template <typename T>
EpochStats Trainer<T>::RunEpoch() {
  const auto start = std::chrono::steady_clock::now();
  const std::size_t epoch = epochs_done_;
  const auto batches =
      data::MakeBatches(train_, config_.batch_size, epoch, config_.seed);
  std::vector<Parameter<T>*> params;
  for (auto& p : model_.parameters()) params.push_back(&p);

  double loss_sum = 0.0;
  for (std::size_t bi = 0; bi < batches.size(); ++bi) {
    const data::Batch<T> batch = data::PadBatch<T>(train_, batches[bi], vocab_);
    model_.ZeroGrad();
    model::ForwardCache<T> cache;
    const std::uint64_t dropout_seed = (config_.seed * 0x100000001B3ULL) ^
                                       (std::uint64_t{epoch} << 32) ^ bi;
    const auto out = model_.Forward(batch.waveforms, batch.lengths,
                                    nn::Mode::kTrain, dropout_seed, &cache);
    const auto ctc = ctc::CtcLossAndGrad(out.log_probs, batch.labels, out.frame_lengths);
    if (!std::isfinite(ctc.loss)) {
      throw std::runtime_error("non-finite loss in epoch " +
                               std::to_string(epoch + 1) + ", batch " +
                               std::to_string(bi));
    }
    model_.Backward(cache, ctc.grad);
    nn::AdamStep<T>(params, adam_);
    loss_sum += ctc.loss * static_cast<double>(batches[bi].size());
  }
  ++epochs_done_;

  EpochStats stats;
  stats.epoch = epochs_done_;
  stats.mean_loss = loss_sum / static_cast<double>(train_.size());
  if (!dev_.empty() && epochs_done_ % config_.eval_interval == 0) {
    stats.dev_cer = Evaluate(model_, dev_, vocab_, config_.batch_size).cer;
  }
  if (!config_.checkpoint_dir.empty()) {
    namespace fs = std::filesystem;
    fs::create_directories(config_.checkpoint_dir);
    char name[32];
    std::snprintf(name, sizeof(name), "epoch_%04zu.ckpt", epochs_done_);
    const fs::path dir(config_.checkpoint_dir);
    SaveCheckpoint((dir / name).string(), model_, adam_, vocab_, epochs_done_);
    SaveCheckpoint((dir / "last.ckpt").string(), model_, adam_, vocab_, epochs_done_);
  }
  stats.seconds = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - start)
                      .count();
  if (log_) {
    if (!header_written_) *log_ << EpochLogHeader() << '\n';
    header_written_ = true;
    *log_ << EpochLogLine(stats) << std::endl;
  }
  return stats;
}

template <typename T>
std::vector<EpochStats> Trainer<T>::Train() {
  std::vector<EpochStats> history;
  while (epochs_done_ < config_.max_epochs) history.push_back(RunEpoch());
  return history;
}

template EvalResult Evaluate(model::Model<float>&, const data::Manifest&,
                             const vocab::TokenVocabulary&, std::size_t);
template EvalResult Evaluate(model::Model<double>&, const data::Manifest&,
                             const vocab::TokenVocabulary&, std::size_t);
template std::string DecodeSamples(model::Model<float>&, std::span<const float>,
                                   const vocab::TokenVocabulary&);
template std::string DecodeSamples(model::Model<double>&, std::span<const float>,
                                   const vocab::TokenVocabulary&);
template class Trainer<float>;
template class Trainer<double>;

}  // namespace swasr::train
