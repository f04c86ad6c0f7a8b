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

#ifndef SWASR_TRAIN_TRAINER_H_
#define SWASR_TRAIN_TRAINER_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "swasr/ctc/ctc.h"
#include "swasr/data/manifest.h"
#include "swasr/model/model.h"
#include "swasr/nn/adam.h"
#include "swasr/vocab/vocabulary.h"

namespace swasr::train {

struct TrainConfig {
  double lr = 1e-4;
  std::size_t batch_size = 32;
  std::size_t max_epochs = 10;
  std::uint64_t seed = 0;
  std::string checkpoint_dir;  // no checkpoints when empty
  std::size_t eval_interval = 1;

  void Validate() const;
};

struct EpochStats {
  std::size_t epoch = 0;  // 1-based
  double mean_loss = 0.0;
  double dev_cer = -1.0;  // negative when not evaluated
  double seconds = 0.0;
};

// "epoch,mean_loss,dev_cer,seconds"
std::string EpochLogHeader();
std::string EpochLogLine(const EpochStats& stats);

struct EvalResult {
  double cer = 0.0;
  std::size_t errors = 0;
  std::size_t reference_tokens = 0;
  std::vector<ctc::LabelSequence> references;
  std::vector<ctc::LabelSequence> hypotheses;
};

// Greedy-decodes every utterance (samples must be loaded) in eval mode.
// Utterances shorter than the model minimum decode to nothing.
template <typename T>
EvalResult Evaluate(model::Model<T>& model, const data::Manifest& manifest,
                    const vocab::TokenVocabulary& vocab,
                    std::size_t batch_size = 32);

template <typename T>
std::string DecodeSamples(model::Model<T>& model, std::span<const float> samples,
                          const vocab::TokenVocabulary& vocab);

// Adam on the mean CTC loss with the make_batches schedule. Utterances that
// are too short for the model or whose label cannot fit their frames are
// skipped with a warning.
template <typename T>
class Trainer {
 public:
  Trainer(model::Model<T>& model, data::Manifest train,
          const vocab::TokenVocabulary& vocab, const TrainConfig& config,
          std::ostream* log = nullptr, std::ostream* warn = nullptr);

  void SetDevSet(data::Manifest dev) { dev_ = std::move(dev); }
  // Continues from a restored optimizer after `epochs_done` epochs.
  void Resume(nn::AdamState<T> adam, std::size_t epochs_done);

  // Throws std::runtime_error naming the epoch and batch on a non-finite
  // loss.
  EpochStats RunEpoch();
  std::vector<EpochStats> Train();

  std::size_t epochs_done() const { return epochs_done_; }
  const nn::AdamState<T>& optimizer() const { return adam_; }
  const data::Manifest& usable() const { return train_; }
  std::size_t skipped() const { return skipped_; }

 private:
  model::Model<T>& model_;
  data::Manifest train_;
  data::Manifest dev_;
  const vocab::TokenVocabulary& vocab_;
  TrainConfig config_;
  std::ostream* log_;
  std::ostream* warn_;
  nn::AdamState<T> adam_;
  std::size_t epochs_done_ = 0;
  std::size_t skipped_ = 0;
  bool header_written_ = false;
};

}  // namespace swasr::train

#endif  // SWASR_TRAIN_TRAINER_H_
