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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "swasr/train/checkpoint.h"

namespace swasr::cli {
namespace {

namespace fs = std::filesystem;

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() /
            ("swasr_cli_test_" +
             std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string operator/(const std::string& name) const { return (path_ / name).string(); }

 private:
  fs::path path_;
};

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result Invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = RunCli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string ReadBytes(const std::string& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

void WriteText(const std::string& p, const std::string& text) {
  std::ofstream(p) << text;
}

std::size_t CountLines(const std::string& p) {
  std::ifstream in(p);
  std::size_t n = 0;
  for (std::string line; std::getline(in, line);) ++n;
  return n;
}

std::string SmallConfig(const std::string& structure, int epochs) {
  return R"({"model": {"structure": ")" + structure +
         R"(", "channels": 8, "lstm_hidden": 32, "lstm_layers": 2, "first_kernel": 65},
 "train": {"lr": 0.003, "max_epochs": )" +
         std::to_string(epochs) + R"(, "seed": 0, "eval_interval": 40},
 "data": {"train_manifest": "corpus/manifest.jsonl", "dev_manifest": "corpus/manifest.jsonl"},
 "output_dir": "run"})";
}

TEST(CliTest, MissingSubcommandIsUsageError) {
  const Result r = Invoke({});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_NE(r.err.find("Usage"), std::string::npos);
}

TEST(CliTest, UnknownSubcommandIsUsageError) {
  const Result r = Invoke({"transcribe"});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_NE(r.err.find("unknown subcommand 'transcribe'"), std::string::npos);
}

TEST(CliTest, BadFlagsAreUsageErrors) {
  EXPECT_EQ(Invoke({"train", "--bogus"}).code, kExitUsage);
  EXPECT_EQ(Invoke({"eval", "--manifest", "m.jsonl"}).code, kExitUsage);
  EXPECT_EQ(Invoke({"synth-data", "--out", "x", "--n", "zero"}).code, kExitUsage);
  EXPECT_EQ(Invoke({"grad-check", "--seeds", "0"}).code, kExitUsage);
}

TEST(CliTest, HelpExitsZero) {
  const Result r = Invoke({"--help"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("inspect-filters"), std::string::npos);
}

TEST(CliTest, RuntimeErrorsExitOne) {
  TempDir dir;
  const Result r = Invoke({"eval", "--checkpoint", dir / "missing.ckpt", "--manifest",
                        dir / "missing.jsonl"});
  EXPECT_EQ(r.code, kExitFailure);
  EXPECT_EQ(r.err.rfind("error: ", 0), 0u);
}

TEST(CliTest, ConfigRejectsUnknownKeys) {
  using nlohmann::json;
  EXPECT_THROW(ParseRunConfig(json{{"modle", json::object()}}, "."),
               std::invalid_argument);
  EXPECT_THROW(ParseRunConfig(json{{"model", {{"chanels", 8}}}}, "."),
               std::invalid_argument);
  EXPECT_THROW(ParseRunConfig(json{{"train", {{"learning_rate", 0.1}}}}, "."),
               std::invalid_argument);
  EXPECT_THROW(ParseRunConfig(json{{"data", {{"manifest", "x"}}}}, "."),
               std::invalid_argument);
  EXPECT_THROW(ParseRunConfig(json{{"train", {{"lr", "fast"}}}}, "."),
               std::invalid_argument);
}

TEST(CliTest, ConfigResolvesPathsAgainstItsDirectory) {
  const RunConfig rc = ParseRunConfig(
      nlohmann::json{{"data", {{"train_manifest", "a/train.jsonl"},
                               {"vocab", "/abs/vocab.txt"}}},
                     {"output_dir", "out"},
                     {"train", {{"lr", 0.01}, {"max_epochs", 3}}},
                     {"model", {{"preset", "ablation-k65"}}}},
      "/base/dir");
  EXPECT_EQ(rc.train_manifest, "/base/dir/a/train.jsonl");
  EXPECT_EQ(rc.vocab, "/abs/vocab.txt");
  EXPECT_EQ(rc.output_dir, "/base/dir/out");
  EXPECT_TRUE(rc.dev_manifest.empty());
  EXPECT_DOUBLE_EQ(rc.train.lr, 0.01);
  EXPECT_EQ(rc.train.max_epochs, 3u);
  EXPECT_EQ(rc.model.first_kernel, 65u);
}

TEST(CliTest, SynthDataIsByteDeterministic) {
  TempDir dir;
  ASSERT_EQ(Invoke({"synth-data", "--seed", "7", "--n", "3", "--out", dir / "a"}).code, kExitOk);
  ASSERT_EQ(Invoke({"synth-data", "--seed", "7", "--n", "3", "--out", dir / "b"}).code, kExitOk);
  ASSERT_EQ(Invoke({"synth-data", "--seed", "8", "--n", "3", "--out", dir / "c"}).code, kExitOk);
  for (const char* f : {"manifest.jsonl", "vocab.txt", "wav/utt_0000.wav", "wav/utt_0002.wav"}) {
    EXPECT_EQ(ReadBytes(dir / (std::string("a/") + f)), ReadBytes(dir / (std::string("b/") + f)))
        << f;
  }
  EXPECT_NE(ReadBytes(dir / "a/wav/utt_0000.wav"), ReadBytes(dir / "c/wav/utt_0000.wav"));
  EXPECT_EQ(CountLines(dir / "a/manifest.jsonl"), 3u);
}

TEST(CliTest, BuildVocabMatchesSynthVocab) {
  TempDir dir;
  ASSERT_EQ(Invoke({"synth-data", "--seed", "1", "--n", "40", "--out", dir / "c"}).code, kExitOk);
  ASSERT_EQ(Invoke({"build-vocab", "--manifest", dir / "c/manifest.jsonl", "--out",
                 dir / "v.txt"}).code,
            kExitOk);
  EXPECT_EQ(ReadBytes(dir / "v.txt"), ReadBytes(dir / "c/vocab.txt"));
}

TEST(CliTest, PresetOverrideSelectsKernel) {
  TempDir dir;
  ASSERT_EQ(Invoke({"synth-data", "--seed", "3", "--n", "2", "--tokens", "A,B", "--out",
                 dir / "corpus"}).code,
            kExitOk);
  const Result r = Invoke({"train", "--train-manifest", dir / "corpus/manifest.jsonl",
                        "--output-dir", dir / "run", "--preset", "ablation-k65",
                        "--epochs", "1"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("first_kernel 65"), std::string::npos);
  const auto meta = train::ReadCheckpointMetadata(dir / "run/checkpoints/last.ckpt");
  EXPECT_EQ(meta["model"]["first_kernel"].get<int>(), 65);
  EXPECT_EQ(meta["model"]["structure"].get<std::string>(), "sinc+cnn");
  EXPECT_EQ(meta["epoch"].get<int>(), 1);
}

TEST(CliTest, TrainEvalDecodeInspectOnTinyCorpus) {
  TempDir dir;
  ASSERT_EQ(Invoke({"synth-data", "--seed", "3", "--n", "4", "--tokens", "A,B", "--out",
                 dir / "corpus"}).code,
            kExitOk);
  WriteText(dir / "config.json", SmallConfig("sinc+cnn", 120));
  const Result train = Invoke({"train", "--config", dir / "config.json"});
  ASSERT_EQ(train.code, kExitOk) << train.err;
  EXPECT_EQ(CountLines(dir / "run/train_log.csv"), 121u);
  EXPECT_TRUE(fs::exists(dir / "run/checkpoints/epoch_0120.ckpt"));
  EXPECT_TRUE(fs::exists(dir / "run/config.json"));
  EXPECT_EQ(ReadBytes(dir / "run/vocab.txt"), ReadBytes(dir / "corpus/vocab.txt"));

  const std::string ckpt = dir / "run/checkpoints/last.ckpt";
  const Result eval = Invoke({"eval", "--checkpoint", ckpt, "--manifest",
                           dir / "corpus/manifest.jsonl"});
  ASSERT_EQ(eval.code, kExitOk) << eval.err;
  EXPECT_EQ(eval.out, "CER 0.0000\n");

  std::ifstream manifest(dir / "corpus/manifest.jsonl");
  std::string first;
  std::getline(manifest, first);
  const auto utt = nlohmann::json::parse(first);
  const Result decode = Invoke({"decode", "--checkpoint", ckpt, "--wav",
                             dir / ("corpus/" + utt["audio"].get<std::string>())});
  ASSERT_EQ(decode.code, kExitOk) << decode.err;
  EXPECT_EQ(decode.out, utt["text"].get<std::string>() + "\n");

  const Result inspect = Invoke({"inspect-filters", "--checkpoint", ckpt, "--out",
                              dir / "filters.csv"});
  ASSERT_EQ(inspect.code, kExitOk) << inspect.err;
  EXPECT_EQ(CountLines(dir / "filters.csv"), 9u);
}

TEST(CliTest, InspectFiltersNeedsSincPath) {
  TempDir dir;
  ASSERT_EQ(Invoke({"synth-data", "--seed", "3", "--n", "2", "--tokens", "A,B", "--out",
                 dir / "corpus"}).code,
            kExitOk);
  WriteText(dir / "config.json", SmallConfig("cnn1", 1));
  ASSERT_EQ(Invoke({"train", "--config", dir / "config.json"}).code, kExitOk);
  const Result r = Invoke({"inspect-filters", "--checkpoint", dir / "run/checkpoints/last.ckpt",
                        "--out", dir / "f.csv"});
  EXPECT_EQ(r.code, kExitFailure);
  EXPECT_NE(r.err.find("no sinc layer"), std::string::npos);
}

TEST(CliTest, SampleRateMismatchIsAnError) {
  TempDir dir;
  ASSERT_EQ(Invoke({"synth-data", "--seed", "3", "--n", "2", "--tokens", "A,B",
                 "--sample-rate", "16000", "--out", dir / "corpus"}).code,
            kExitOk);
  WriteText(dir / "config.json", SmallConfig("sinc+cnn", 1));
  const Result r = Invoke({"train", "--config", dir / "config.json"});
  EXPECT_EQ(r.code, kExitFailure);
  EXPECT_NE(r.err.find("16000 Hz"), std::string::npos);
}

}  // namespace
}  // namespace swasr::cli
