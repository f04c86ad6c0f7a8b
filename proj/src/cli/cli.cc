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

#include "swasr/cli/cli.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "swasr/data/manifest.h"
#include "swasr/data/synth.h"
#include "swasr/data/wav.h"
#include "swasr/dsp/sinc.h"
#include "swasr/model/model.h"
#include "swasr/train/checkpoint.h"
#include "swasr/verify/grad_suite.h"
#include "swasr/vocab/text.h"
#include "swasr/vocab/vocabulary.h"

namespace swasr::cli {

namespace fs = std::filesystem;

namespace {

void RejectUnknownKeys(const nlohmann::json& j, const std::set<std::string>& keys,
                       const std::string& section) {
  if (!j.is_object()) throw std::invalid_argument(section + " must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (!keys.contains(key)) {
      throw std::invalid_argument("unknown key '" + key + "' in " + section);
    }
  }
}

std::string Resolve(const std::string& path, const std::string& base) {
  if (path.empty()) return path;
  const fs::path p(path);
  return (p.is_relative() ? fs::path(base) / p : p).lexically_normal().string();
}

vocab::TokenVocabulary VocabFrom(const std::vector<std::string>& tokens) {
  return vocab::TokenVocabulary::FromTokens(tokens);
}

// Loads a checkpoint in its stored precision and hands it to `fn`.
template <typename Fn>
void WithCheckpoint(const std::string& path, Fn&& fn) {
  const std::string precision = train::ReadCheckpointMetadata(path).value("precision", "");
  if (precision == "f64") {
    auto ck = train::LoadCheckpoint<double>(path);
    fn(ck);
  } else {
    auto ck = train::LoadCheckpoint<float>(path);
    fn(ck);
  }
}

void RequireSampleRate(const model::ModelConfig& config, std::uint32_t rate,
                       const std::string& what) {
  if (static_cast<double>(rate) != config.sample_rate) {
    throw std::runtime_error(what + " is sampled at " + std::to_string(rate) +
                             " Hz but the model expects " +
                             std::to_string(config.sample_rate) + " Hz");
  }
}

struct Options {
  // synth-data
  std::uint64_t seed = 0;
  std::size_t count = 30;
  std::string out;
  std::string tokens = "A,B,C,塔,台,机";
  std::uint32_t sample_rate = 8000;
  double noise = 0.01;
  // build-vocab / eval
  std::vector<std::string> manifests;
  std::string manifest;
  // train overrides
  std::string config;
  std::string preset;
  std::size_t epochs = 0;
  double lr = 0.0;
  std::size_t batch_size = 0;
  std::string train_manifest;
  std::string dev_manifest;
  std::string vocab;
  std::string output_dir;
  bool seed_set = false;
  // eval / decode / inspect
  std::string checkpoint;
  std::string wav;
  // grad-check
  std::size_t seeds = 20;
};

std::vector<std::string> SplitTokens(const std::string& list) {
  std::vector<std::string> tokens;
  std::stringstream ss(list);
  for (std::string t; std::getline(ss, t, ',');) {
    if (!t.empty()) tokens.push_back(t);
  }
  return tokens;
}

int SynthData(const Options& o, std::ostream& out) {
  data::SynthOptions s;
  s.seed = o.seed;
  s.num_utterances = o.count;
  s.tokens = SplitTokens(o.tokens);
  s.sample_rate = o.sample_rate;
  s.noise_sigma = o.noise;
  const data::SynthOutput result = data::WriteSynthCorpus(s, o.out);
  out << "wrote " << result.manifest.size() << " utterances\n"
      << "manifest " << result.manifest_path << "\n"
      << "vocab " << result.vocab_path << "\n";
  return kExitOk;
}

int BuildVocab(const Options& o, std::ostream& out) {
  std::vector<std::string> texts;
  for (const std::string& m : o.manifests) {
    for (const data::Utterance& u : data::LoadManifest(m)) texts.push_back(u.text);
  }
  const auto v = vocab::TokenVocabulary::Build(texts);
  v.Save(o.out);
  out << "vocab " << v.size() << " tokens -> " << o.out << "\n";
  return kExitOk;
}

int Train(const Options& o, std::ostream& out, std::ostream& err) {
  RunConfig rc;
  if (!o.config.empty()) rc = LoadRunConfig(o.config);
  if (!o.preset.empty()) {
    model::ModelConfig preset = model::PresetConfig(o.preset);
    preset.vocab_size = rc.model.vocab_size;
    preset.sample_rate = rc.model.sample_rate;
    rc.model = preset;
  }
  if (o.epochs) rc.train.max_epochs = o.epochs;
  if (o.lr > 0.0) rc.train.lr = o.lr;
  if (o.batch_size) rc.train.batch_size = o.batch_size;
  if (o.seed_set) rc.train.seed = o.seed;
  if (!o.train_manifest.empty()) rc.train_manifest = o.train_manifest;
  if (!o.dev_manifest.empty()) rc.dev_manifest = o.dev_manifest;
  if (!o.vocab.empty()) rc.vocab = o.vocab;
  if (!o.output_dir.empty()) rc.output_dir = o.output_dir;
  if (rc.train_manifest.empty()) throw std::invalid_argument("no training manifest given");
  if (rc.output_dir.empty()) throw std::invalid_argument("no output directory given");

  data::Manifest train_set = data::LoadManifest(rc.train_manifest);
  data::LoadAudio(train_set);
  if (train_set.empty()) throw std::runtime_error("training manifest is empty");
  for (const auto& u : train_set) {
    RequireSampleRate(rc.model, u.sample_rate, u.audio_path);
  }
  data::Manifest dev_set;
  if (!rc.dev_manifest.empty()) {
    dev_set = data::LoadManifest(rc.dev_manifest);
    data::LoadAudio(dev_set);
  }

  fs::create_directories(rc.output_dir);
  const fs::path dir(rc.output_dir);
  std::vector<std::string> texts;
  for (const auto& u : train_set) texts.push_back(u.text);
  const vocab::TokenVocabulary vocab = rc.vocab.empty()
                                           ? vocab::TokenVocabulary::Build(texts)
                                           : vocab::TokenVocabulary::Load(rc.vocab);
  vocab.Save((dir / "vocab.txt").string());
  if (rc.model.vocab_size != 0 && rc.model.vocab_size != vocab.size()) {
    throw std::invalid_argument("model vocab_size " +
                                std::to_string(rc.model.vocab_size) +
                                " does not match the vocabulary (" +
                                std::to_string(vocab.size()) + " tokens)");
  }
  rc.model.vocab_size = vocab.size();
  rc.train.checkpoint_dir = (dir / "checkpoints").string();

  model::Model<float> model(rc.model, rc.train.seed);
  {
    std::ofstream cfg(dir / "config.json");
    cfg << nlohmann::json{{"model", model::ModelConfigToJson(rc.model)},
                          {"train",
                           {{"lr", rc.train.lr},
                            {"batch_size", rc.train.batch_size},
                            {"max_epochs", rc.train.max_epochs},
                            {"seed", rc.train.seed},
                            {"eval_interval", rc.train.eval_interval}}}}
               .dump(2)
        << '\n';
  }
  out << "model " << rc.model.preset << " structure "
      << model::StructureName(rc.model.paths) << " first_kernel "
      << rc.model.first_kernel << " params " << model.ParamCount() << "\n";

  train::Trainer<float> trainer(model, std::move(train_set), vocab, rc.train,
                                nullptr, &err);
  if (!dev_set.empty()) trainer.SetDevSet(std::move(dev_set));
  std::ofstream csv(dir / "train_log.csv");
  csv << train::EpochLogHeader() << '\n';
  out << train::EpochLogHeader() << '\n';
  while (trainer.epochs_done() < rc.train.max_epochs) {
    const std::string line = train::EpochLogLine(trainer.RunEpoch());
    csv << line << std::endl;
    out << line << std::endl;
  }
  out << "checkpoint " << (dir / "checkpoints" / "last.ckpt").string() << "\n";
  return kExitOk;
}

int Eval(const Options& o, std::ostream& out) {
  data::Manifest manifest = data::LoadManifest(o.manifest);
  data::LoadAudio(manifest);
  WithCheckpoint(o.checkpoint, [&](auto& ck) {
    for (const auto& u : manifest) {
      RequireSampleRate(ck.model->config(), u.sample_rate, u.audio_path);
    }
    const auto result = train::Evaluate(*ck.model, manifest, VocabFrom(ck.vocab_tokens),
                                        o.batch_size ? o.batch_size : 32);
    char buf[64];
    std::snprintf(buf, sizeof(buf), "CER %.4f", result.cer);
    out << buf << "\n";
  });
  return kExitOk;
}

int Decode(const Options& o, std::ostream& out) {
  const data::WavAudio audio = data::ReadWav(o.wav);
  WithCheckpoint(o.checkpoint, [&](auto& ck) {
    RequireSampleRate(ck.model->config(), audio.sample_rate, o.wav);
    out << train::DecodeSamples(*ck.model, audio.samples, VocabFrom(ck.vocab_tokens))
        << "\n";
  });
  return kExitOk;
}

int InspectFilters(const Options& o, std::ostream& out) {
  WithCheckpoint(o.checkpoint, [&](auto& ck) {
    const model::ModelConfig& config = ck.model->config();
    std::ostringstream csv;
    std::size_t written = 0;
    for (std::size_t p = 0; p < config.paths.size(); ++p) {
      if (config.paths[p] != model::PathKind::kSinc) continue;
      dsp::WriteFilterResponseCsv(csv, ck.model->SincParamsOf(p), config.SincConfig(),
                                  written, written == 0);
      written += config.channels;
    }
    if (written == 0) throw std::runtime_error("model has no sinc layer");
    std::ofstream f(o.out);
    if (!f) throw std::runtime_error("cannot write " + o.out);
    f << csv.str();
    out << "wrote " << written << " filters -> " << o.out << "\n";
  });
  return kExitOk;
}

int GradCheck(const Options& o, std::ostream& out) {
  bool ok = true;
  for (const auto& r : verify::RunGradSuite(o.seeds, o.seed)) {
    out << verify::FormatResult(r) << std::endl;
    ok = ok && r.ok();
  }
  out << (ok ? "grad-check PASS" : "grad-check FAIL") << "\n";
  return ok ? kExitOk : kExitFailure;
}

}  // namespace

RunConfig ParseRunConfig(const nlohmann::json& j, const std::string& base_dir) {
  RejectUnknownKeys(j, {"model", "train", "data", "output_dir"}, "config");
  RunConfig rc;
  try {
    rc.model = model::ModelConfigFromJson(j.value("model", nlohmann::json::object()));
    if (!j.contains("model") || !j["model"].contains("vocab_size")) rc.model.vocab_size = 0;
    if (j.contains("train")) {
      const auto& t = j["train"];
      RejectUnknownKeys(t, {"lr", "batch_size", "max_epochs", "seed", "eval_interval"},
                        "train");
      rc.train.lr = t.value("lr", rc.train.lr);
      rc.train.batch_size = t.value("batch_size", rc.train.batch_size);
      rc.train.max_epochs = t.value("max_epochs", rc.train.max_epochs);
      rc.train.seed = t.value("seed", rc.train.seed);
      rc.train.eval_interval = t.value("eval_interval", rc.train.eval_interval);
      rc.train.Validate();
    }
    if (j.contains("data")) {
      const auto& d = j["data"];
      RejectUnknownKeys(d, {"train_manifest", "dev_manifest", "vocab"}, "data");
      rc.train_manifest = Resolve(d.value("train_manifest", ""), base_dir);
      rc.dev_manifest = Resolve(d.value("dev_manifest", ""), base_dir);
      rc.vocab = Resolve(d.value("vocab", ""), base_dir);
    }
    rc.output_dir = Resolve(j.value("output_dir", ""), base_dir);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
  return rc;
}

RunConfig LoadRunConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config " + path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
  return ParseRunConfig(j, fs::path(path).parent_path().string());
}

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"swasr: raw-waveform speech recognition toolkit", "swasr"};
  app.require_subcommand(1);
  Options o;

  auto* synth = app.add_subcommand("synth-data", "Generate a synthetic tone corpus");
  synth->add_option("--seed", o.seed, "Random seed");
  synth->add_option("--n", o.count, "Number of utterances")->check(CLI::PositiveNumber);
  synth->add_option("--out", o.out, "Output directory")->required();
  synth->add_option("--tokens", o.tokens, "Comma-separated single-character tokens");
  synth->add_option("--sample-rate", o.sample_rate, "Sample rate in Hz");
  synth->add_option("--noise", o.noise, "Gaussian noise sigma");

  auto* build = app.add_subcommand("build-vocab", "Build a vocabulary from manifests");
  build->add_option("--manifest", o.manifests, "Manifest file(s)")->required();
  build->add_option("--out", o.out, "Vocabulary file")->required();

  auto* trn = app.add_subcommand("train", "Train a model");
  trn->add_option("--config", o.config, "JSON experiment config");
  trn->add_option("--preset", o.preset, "Model preset");
  trn->add_option("--epochs", o.epochs, "Number of epochs");
  trn->add_option("--lr", o.lr, "Learning rate");
  trn->add_option("--batch-size", o.batch_size, "Batch size");
  trn->add_option("--seed", o.seed, "Random seed");
  trn->add_option("--train-manifest", o.train_manifest, "Training manifest");
  trn->add_option("--dev-manifest", o.dev_manifest, "Development manifest");
  trn->add_option("--vocab", o.vocab, "Vocabulary file");
  trn->add_option("--output-dir", o.output_dir, "Output directory");

  auto* ev = app.add_subcommand("eval", "Print the CER of a checkpoint on a manifest");
  ev->add_option("--checkpoint", o.checkpoint, "Checkpoint file")->required();
  ev->add_option("--manifest", o.manifest, "Manifest file")->required();
  ev->add_option("--batch-size", o.batch_size, "Batch size");

  auto* dec = app.add_subcommand("decode", "Transcribe one WAV file");
  dec->add_option("--checkpoint", o.checkpoint, "Checkpoint file")->required();
  dec->add_option("--wav", o.wav, "16-bit mono PCM WAV file")->required();

  auto* insp = app.add_subcommand("inspect-filters", "Write sinc filter responses as CSV");
  insp->add_option("--checkpoint", o.checkpoint, "Checkpoint file")->required();
  insp->add_option("--out", o.out, "CSV file")->required();

  auto* grad = app.add_subcommand("grad-check", "Run the gradient verification suite");
  grad->add_option("--seeds", o.seeds, "Instances per operation")->check(CLI::PositiveNumber);
  grad->add_option("--seed", o.seed, "Base seed");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    if (!args.empty() && !args[0].starts_with("-") &&
        app.get_subcommand_no_throw(args[0]) == nullptr) {
      throw CLI::ParseError("unknown subcommand '" + args[0] + "'", 2);
    }
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }
  o.seed_set = trn->count("--seed") > 0;

  try {
    if (*synth) return SynthData(o, out);
    if (*build) return BuildVocab(o, out);
    if (*trn) return Train(o, out, err);
    if (*ev) return Eval(o, out);
    if (*dec) return Decode(o, out);
    if (*insp) return InspectFilters(o, out);
    if (*grad) return GradCheck(o, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  err << app.help();
  return kExitUsage;
}

}  // namespace swasr::cli
