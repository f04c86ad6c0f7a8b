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

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <map>
#include <numbers>
#include <set>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "swasr/data/batching.h"
#include "swasr/data/manifest.h"
#include "swasr/data/synth.h"
#include "swasr/data/wav.h"
#include "swasr/vocab/text.h"
#include "swasr/vocab/vocabulary.h"

namespace swasr::data {
namespace {

namespace fs = std::filesystem;

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() /
            ("swasr_data_test_" + std::to_string(counter_++) + "_" +
             ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  fs::path operator/(const std::string& name) const { return path_ / name; }
  const fs::path& path() const { return path_; }

 private:
  static inline int counter_ = 0;
  fs::path path_;
};

std::string ReadBytes(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

// Hand-assembled WAV for decoder tests.
std::string WavBytes(std::uint16_t format, std::uint16_t channels,
                     std::uint16_t bits, std::uint32_t rate,
                     const std::vector<std::int16_t>& data,
                     bool extra_chunk = false) {
  auto u32 = [](std::string& s, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) s.push_back(char(v >> (8 * i)));
  };
  auto u16 = [](std::string& s, std::uint16_t v) {
    s.push_back(char(v));
    s.push_back(char(v >> 8));
  };
  std::string body = "WAVE";
  if (extra_chunk) {
    body += "LIST";
    u32(body, 3);
    body += "abc";
    body.push_back('\0');
  }
  body += "fmt ";
  u32(body, 16);
  u16(body, format);
  u16(body, channels);
  u32(body, rate);
  u32(body, rate * channels * bits / 8);
  u16(body, static_cast<std::uint16_t>(channels * bits / 8));
  u16(body, bits);
  body += "data";
  u32(body, static_cast<std::uint32_t>(data.size() * 2));
  for (std::int16_t v : data) u16(body, static_cast<std::uint16_t>(v));
  std::string out = "RIFF";
  u32(out, static_cast<std::uint32_t>(body.size()));
  return out + body;
}

void WriteBytes(const fs::path& p, const std::string& bytes) {
  std::ofstream out(p, std::ios::binary);
  out << bytes;
}

TEST(WavTest, ScalesSamples) {
  TempDir dir;
  WriteBytes(dir / "a.wav", WavBytes(1, 1, 16, 8000, {16384, -32768, 0, 32767},
                                     /*extra_chunk=*/true));
  const WavAudio a = ReadWav((dir / "a.wav").string());
  EXPECT_EQ(a.sample_rate, 8000u);
  ASSERT_EQ(a.samples.size(), 4u);
  EXPECT_EQ(a.samples[0], 0.5f);
  EXPECT_EQ(a.samples[1], -1.0f);
  EXPECT_EQ(a.samples[2], 0.0f);
  EXPECT_EQ(a.samples[3], 32767.0f / 32768.0f);
  const WavInfo info = ReadWavInfo((dir / "a.wav").string());
  EXPECT_DOUBLE_EQ(info.duration(), 4.0 / 8000.0);
}

TEST(WavTest, RejectsUnsupportedFormats) {
  TempDir dir;
  const std::vector<std::pair<std::string, std::string>> cases{
      {"stereo", WavBytes(1, 2, 16, 8000, {1, 2})},
      {"8bit", WavBytes(1, 1, 8, 8000, {1})},
      {"float", WavBytes(3, 1, 16, 8000, {1})},
      {"junk", "RIFX0000WAVEfmt "}};
  for (const auto& [name, bytes] : cases) {
    WriteBytes(dir / name, bytes);
    EXPECT_THROW(ReadWav((dir / name).string()), std::runtime_error) << name;
  }
  try {
    ReadWav((dir / "stereo").string());
  } catch (const std::runtime_error& e) {
    EXPECT_NE(std::string(e.what()).find("mono"), std::string::npos);
  }
  EXPECT_THROW(ReadWav((dir / "missing.wav").string()), std::runtime_error);
}

TEST(WavTest, QuantizeClampsAndRounds) {
  EXPECT_EQ(QuantizeSample(0.5), 16384);
  EXPECT_EQ(QuantizeSample(1.0), 32767);
  EXPECT_EQ(QuantizeSample(-1.5), -32768);
  EXPECT_EQ(QuantizeSample(1.6 / 32768.0), 2);
}

TEST(WavTest, WriteReadRoundTripIsExactOnQuantizedValues) {
  TempDir dir;
  std::vector<float> samples;
  for (int i = -32768; i < 32768; i += 97) samples.push_back(float(i) / 32768.0f);
  WriteWav((dir / "r.wav").string(), samples, 16000);
  const WavAudio back = ReadWav((dir / "r.wav").string());
  EXPECT_EQ(back.sample_rate, 16000u);
  EXPECT_EQ(back.samples, samples);
}

class ManifestTest : public ::testing::Test {
 protected:
  void SetUp() override {
    fs::create_directories(dir_ / "audio");
    WriteWav((dir_ / "audio" / "one.wav").string(), std::vector<float>(800), 8000);
    WriteWav((dir_ / "audio" / "two.wav").string(), std::vector<float>(1600), 8000);
  }
  std::string Write(const std::vector<std::string>& lines) {
    const fs::path p = dir_ / "m.jsonl";
    std::ofstream out(p);
    for (const auto& l : lines) out << l << '\n';
    return p.string();
  }
  TempDir dir_;
};

TEST_F(ManifestTest, LoadsValidLines) {
  const std::string path = Write({
      R"({"audio": "audio/one.wav", "text": "tower  one"})",
      "",
      R"({"audio": "audio/two.wav", "text": "塔台", "duration": 0.2})",
      R"({"audio": ")" + (dir_ / "audio" / "one.wav").string() +
          R"(", "text": "x", "speaker": "s1"})"});
  const Manifest m = LoadManifest(path);
  ASSERT_EQ(m.size(), 3u);
  EXPECT_EQ(m[0].text, "TOWER ONE");
  EXPECT_DOUBLE_EQ(m[0].duration, 0.1);
  EXPECT_EQ(m[0].sample_rate, 8000u);
  EXPECT_TRUE(fs::exists(m[0].audio_path));
  EXPECT_EQ(m[1].text, "塔台");
  EXPECT_TRUE(m[1].samples.empty());
}

TEST_F(ManifestTest, ErrorsNameTheLine) {
  auto expect_line = [&](const std::vector<std::string>& lines, const std::string& tag) {
    try {
      LoadManifest(Write(lines));
      ADD_FAILURE() << "expected error";
    } catch (const std::runtime_error& e) {
      EXPECT_NE(std::string(e.what()).find(tag), std::string::npos) << e.what();
    }
  };
  const std::string ok = R"({"audio": "audio/one.wav", "text": "A"})";
  expect_line({ok, R"({"audio": "audio/one.wav"})"}, "m.jsonl:2:");
  expect_line({ok, ok, "{not json"}, "m.jsonl:3:");
  expect_line({R"({"audio": "audio/nope.wav", "text": "A"})"}, "not found");
  expect_line({R"({"audio": "audio/one.wav", "text": "A", "duration": 0.12})"},
              "disagrees");
  expect_line({R"({"audio": "audio/one.wav", "text": "   "})"}, "empty transcript");
  EXPECT_NO_THROW(LoadManifest(
      Write({R"({"audio": "audio/one.wav", "text": "A", "duration": 0.109})"})));
}

TEST_F(ManifestTest, WriteLoadRoundTripAndAudio) {
  Manifest m = LoadManifest(Write({R"({"audio": "audio/two.wav", "text": "b"})"}));
  const std::string out = (dir_ / "copy.jsonl").string();
  WriteManifest(out, m);
  EXPECT_NE(ReadBytes(out).find("\"audio/two.wav\""), std::string::npos);
  Manifest back = LoadManifest(out);
  ASSERT_EQ(back.size(), 1u);
  EXPECT_EQ(back[0].text, "B");
  LoadAudio(back);
  EXPECT_EQ(back[0].samples.size(), 1600u);
}

Manifest WithDurations(const std::vector<double>& durations) {
  Manifest m;
  for (double d : durations) {
    Utterance u;
    u.duration = d;
    u.sample_rate = 8000;
    u.text = "A";
    u.samples.assign(static_cast<std::size_t>(d * 8000), 0.1f);
    m.push_back(u);
  }
  return m;
}

TEST(MakeBatchesTest, EpochZeroSortedByDescendingDuration) {
  const Manifest m = WithDurations({0.3, 0.5, 0.3, 0.9, 0.1, 0.5, 0.7});
  const auto batches = MakeBatches(m, 3, 0, 42);
  ASSERT_EQ(batches.size(), 3u);
  EXPECT_EQ(batches[2].size(), 1u);
  std::vector<std::size_t> flat;
  for (const auto& b : batches) flat.insert(flat.end(), b.begin(), b.end());
  EXPECT_EQ(flat, (std::vector<std::size_t>{3, 6, 1, 5, 0, 2, 4}));
  for (std::size_t i = 1; i < flat.size(); ++i) {
    EXPECT_GE(m[flat[i - 1]].duration, m[flat[i]].duration);
  }
}

TEST(MakeBatchesTest, LaterEpochsAreSeededPermutations) {
  const Manifest m = WithDurations(std::vector<double>(40, 0.2));
  const auto a = MakeBatches(m, 32, 1, 7);
  EXPECT_EQ(a, MakeBatches(m, 32, 1, 7));
  EXPECT_NE(a, MakeBatches(m, 32, 2, 7));
  EXPECT_NE(a, MakeBatches(m, 32, 1, 8));
  ASSERT_EQ(a.size(), 2u);
  EXPECT_EQ(a[0].size(), kDefaultBatchSize);
  std::set<std::size_t> all;
  for (const auto& b : a) all.insert(b.begin(), b.end());
  EXPECT_EQ(all.size(), 40u);
}

TEST(MakeBatchesTest, Errors) {
  EXPECT_THROW(MakeBatches({}, 2, 0, 0), std::invalid_argument);
  EXPECT_THROW(MakeBatches(WithDurations({0.1}), 0, 0, 0), std::invalid_argument);
}

TEST(PadBatchTest, PadsWithZerosAndTokenizes) {
  Manifest m = WithDurations({0.1, 0.25});
  m[1].text = "AB A";
  const auto vocab = vocab::TokenVocabulary::Build({"AB"});
  const std::vector<std::size_t> both{0, 1};
  const Batch<float> b = PadBatch<float>(m, both, vocab);
  EXPECT_EQ(b.waveforms.shape(), (Shape{2, 1, 2000}));
  EXPECT_EQ(b.lengths, (Lengths{800, 2000}));
  for (std::size_t i = 0; i < 2000; ++i) {
    EXPECT_EQ(b.waveforms(0, 0, i), i < 800 ? 0.1f : 0.0f);
  }
  EXPECT_EQ(b.labels[1], (ctc::LabelSequence{vocab.Find("A"), vocab.Find("B"),
                                             vocab.space_id(), vocab.Find("A")}));
  EXPECT_EQ(b.label_lengths, (std::vector<std::size_t>{1, 4}));

  const std::vector<std::size_t> one{1};
  const Batch<double> single = PadBatch<double>(m, one, vocab);
  EXPECT_EQ(single.waveforms.dim(2), m[1].samples.size());

  m[0].sample_rate = 16000;
  EXPECT_THROW(PadBatch<float>(m, both, vocab), std::invalid_argument);
}

std::size_t CountTokens(const std::string& text) {
  return vocab::SplitCodePoints(text).size();
}

TEST(SynthTest, LengthsFollowTokenCount) {
  SynthOptions o;
  o.seed = 11;
  o.num_utterances = 50;
  const Manifest m = SynthesizeCorpus(o);
  ASSERT_EQ(m.size(), 50u);
  bool saw_four = false;
  for (const Utterance& u : m) {
    const std::size_t n = CountTokens(u.text);
    EXPECT_GE(n, 2u);
    EXPECT_LE(n, 8u);
    EXPECT_EQ(u.samples.size(), 800 * n);
    EXPECT_DOUBLE_EQ(u.duration, 0.1 * double(n));
    if (n == 4) {
      EXPECT_EQ(u.samples.size(), 3200u);
      saw_four = true;
    }
  }
  EXPECT_TRUE(saw_four);
}

TEST(SynthTest, DeterministicForSeed) {
  SynthOptions o;
  o.seed = 5;
  const Manifest a = SynthesizeCorpus(o);
  const Manifest b = SynthesizeCorpus(o);
  o.seed = 6;
  const Manifest c = SynthesizeCorpus(o);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].text, b[i].text);
    EXPECT_EQ(a[i].samples, b[i].samples);
  }
  EXPECT_NE(a[0].samples, c[0].samples);
}

TEST(SynthTest, NoiselessSegmentsArePureRepeatableTones) {
  SynthOptions o;
  o.seed = 3;
  o.noise_sigma = 0.0;
  const Manifest m = SynthesizeCorpus(o);
  std::map<std::string, std::vector<float>> seen;
  for (const Utterance& u : m) {
    const auto tokens = vocab::SplitCodePoints(u.text);
    for (std::size_t k = 0; k < tokens.size(); ++k) {
      const std::vector<float> seg(u.samples.begin() + 800 * k,
                                   u.samples.begin() + 800 * (k + 1));
      auto [it, inserted] = seen.emplace(tokens[k], seg);
      if (!inserted) {
        EXPECT_EQ(it->second, seg);
      }
      const std::size_t idx =
          std::find(o.tokens.begin(), o.tokens.end(), tokens[k]) - o.tokens.begin();
      const double f = ToneFrequency(idx);
      for (std::size_t n = 0; n < 800; n += 37) {
        const double expected =
            0.5 * std::sin(2.0 * std::numbers::pi * f * double(n) / 8000.0);
        EXPECT_NEAR(seg[n], expected, 1.0 / 32768.0);
      }
    }
  }
  EXPECT_EQ(seen.size(), o.tokens.size());
}

TEST(SynthTest, ToneMappingIsInjectiveAndDominant) {
  SynthOptions o;
  o.seed = 8;
  const Manifest m = SynthesizeCorpus(o);
  std::set<double> freqs;
  for (std::size_t i = 0; i < o.tokens.size(); ++i) freqs.insert(ToneFrequency(i));
  EXPECT_EQ(freqs.size(), o.tokens.size());
  // Oracle: the strongest DFT bin (10 Hz resolution) of every segment sits at
  // its token's tone.
  for (const Utterance& u : m) {
    const auto tokens = vocab::SplitCodePoints(u.text);
    for (std::size_t k = 0; k < tokens.size(); ++k) {
      double best = -1.0, best_f = 0.0;
      for (double f = 100.0; f < 4000.0; f += 10.0) {
        double re = 0.0, im = 0.0;
        for (std::size_t n = 0; n < 800; ++n) {
          const double ph = 2.0 * std::numbers::pi * f * double(n) / 8000.0;
          re += u.samples[800 * k + n] * std::cos(ph);
          im -= u.samples[800 * k + n] * std::sin(ph);
        }
        if (re * re + im * im > best) {
          best = re * re + im * im;
          best_f = f;
        }
      }
      const std::size_t idx =
          std::find(o.tokens.begin(), o.tokens.end(), tokens[k]) - o.tokens.begin();
      EXPECT_DOUBLE_EQ(best_f, ToneFrequency(idx));
    }
    break;
  }
}

TEST(SynthTest, ValidatesOptions) {
  SynthOptions o;
  o.sample_rate = 1000;
  EXPECT_THROW(SynthesizeCorpus(o), std::invalid_argument);
  o = {};
  o.tokens = {"A"};
  EXPECT_THROW(SynthesizeCorpus(o), std::invalid_argument);
  o.tokens = {"A", "a"};
  EXPECT_THROW(SynthesizeCorpus(o), std::invalid_argument);
  o.tokens = {"A", "BC"};
  EXPECT_THROW(SynthesizeCorpus(o), std::invalid_argument);
  o.tokens = {"A", "A"};
  EXPECT_THROW(SynthesizeCorpus(o), std::invalid_argument);
  o = {};
  o.tokens.clear();
  for (int i = 0; i < 47; ++i) o.tokens.push_back(std::string(1, char('!' + i)));
  EXPECT_NO_THROW(o.Validate());
  o.tokens.push_back("z");
  EXPECT_THROW(o.Validate(), std::invalid_argument);
}

TEST(SynthTest, WrittenCorpusRoundTripsAndIsByteDeterministic) {
  TempDir a, b;
  SynthOptions o;
  o.seed = 21;
  o.num_utterances = 6;
  const SynthOutput out = WriteSynthCorpus(o, a.path().string());
  WriteSynthCorpus(o, b.path().string());
  Manifest loaded = LoadManifest(out.manifest_path);
  LoadAudio(loaded);
  ASSERT_EQ(loaded.size(), 6u);
  for (std::size_t i = 0; i < 6; ++i) {
    EXPECT_EQ(loaded[i].text, out.manifest[i].text);
    EXPECT_EQ(loaded[i].samples, out.manifest[i].samples);
    EXPECT_EQ(loaded[i].duration, out.manifest[i].duration);
  }
  const auto v = vocab::TokenVocabulary::Load(out.vocab_path);
  EXPECT_EQ(v.size(), 3 + o.tokens.size());
  for (const auto& entry : fs::recursive_directory_iterator(a.path())) {
    if (!entry.is_regular_file()) continue;
    const fs::path rel = fs::relative(entry.path(), a.path());
    EXPECT_EQ(ReadBytes(entry.path()), ReadBytes(b.path() / rel)) << rel;
  }
}

}  // namespace
}  // namespace swasr::data
