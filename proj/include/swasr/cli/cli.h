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

#ifndef SWASR_CLI_CLI_H_
#define SWASR_CLI_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "swasr/model/config.h"
#include "swasr/train/trainer.h"

namespace swasr::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

// Subcommands: synth-data, build-vocab, train, eval, decode,
// inspect-filters, grad-check.
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

// Experiment description read by `train --config`.
struct RunConfig {
  model::ModelConfig model;
  train::TrainConfig train;
  std::string train_manifest;
  std::string dev_manifest;  // optional
  std::string vocab;         // optional; built from the training set if empty
  std::string output_dir;
};

// {"model": {...}, "train": {...}, "data": {...}, "output_dir": ...}.
// Unknown keys are rejected at every level; relative paths are resolved
// against `base_dir`. Throws std::invalid_argument.
RunConfig ParseRunConfig(const nlohmann::json& j, const std::string& base_dir);
RunConfig LoadRunConfig(const std::string& path);

}  // namespace swasr::cli

#endif  // SWASR_CLI_CLI_H_
