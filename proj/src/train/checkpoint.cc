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

#include "swasr/train/checkpoint.h"

#include <bit>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <map>
#include <stdexcept>

namespace swasr::train {

static_assert(std::endian::native == std::endian::little,
              "checkpoint IO assumes a little-endian host");

namespace {

template <typename T>
constexpr std::uint8_t DType() {
  return std::is_same_v<T, float> ? 0 : 1;
}

std::string DTypeName(std::uint8_t dtype) {
  return dtype == 0 ? "f32" : dtype == 1 ? "f64" : "unknown";
}

template <typename V>
void Put(std::string& out, V v) {
  char buf[sizeof(V)];
  std::memcpy(buf, &v, sizeof(V));
  out.append(buf, sizeof(V));
}

template <typename T>
void PutTensor(std::string& out, const std::string& name, const Tensor<T>& t) {
  Put<std::uint32_t>(out, static_cast<std::uint32_t>(name.size()));
  out += name;
  Put<std::uint8_t>(out, DType<T>());
  Put<std::uint32_t>(out, static_cast<std::uint32_t>(t.rank()));
  for (std::size_t d : t.shape()) Put<std::uint64_t>(out, d);
  out.append(reinterpret_cast<const char*>(t.data()), t.size() * sizeof(T));
}

class Reader {
 public:
  Reader(std::string bytes, std::string path)
      : bytes_(std::move(bytes)), path_(std::move(path)) {}

  const char* Take(std::size_t n, const char* what) {
    if (bytes_.size() - pos_ < n) {
      throw std::runtime_error(path_ + ": truncated checkpoint while reading " +
                               what);
    }
    const char* p = bytes_.data() + pos_;
    pos_ += n;
    return p;
  }

  template <typename V>
  V Get(const char* what) {
    V v;
    std::memcpy(&v, Take(sizeof(V), what), sizeof(V));
    return v;
  }

  bool done() const { return pos_ == bytes_.size(); }
  const std::string& path() const { return path_; }

 private:
  std::string bytes_;
  std::string path_;
  std::size_t pos_ = 0;
};

std::string ReadAll(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open checkpoint " + path);
  return {std::istreambuf_iterator<char>(in), {}};
}

nlohmann::json ReadHeader(Reader& r) {
  const char* magic = r.Take(4, "magic");
  if (std::memcmp(magic, kCheckpointMagic, 4) != 0) {
    throw std::runtime_error(r.path() + ": not a checkpoint (bad magic)");
  }
  const auto len = r.Get<std::uint32_t>("metadata length");
  const char* text = r.Take(len, "metadata");
  nlohmann::json meta;
  try {
    meta = nlohmann::json::parse(std::string(text, len));
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(r.path() + ": corrupt metadata: " + e.what());
  }
  const int version = meta.value("format_version", -1);
  if (version != kCheckpointVersion) {
    throw std::runtime_error(r.path() + ": unsupported checkpoint version " +
                             std::to_string(version));
  }
  return meta;
}

}  // namespace

template <typename T>
void SaveCheckpoint(const std::string& path, const model::Model<T>& model,
                    const nn::AdamState<T>& adam,
                    const vocab::TokenVocabulary& vocab, std::size_t epoch) {
  std::string body;
  std::size_t count = 0;
  for (const auto& p : model.parameters()) {
    PutTensor(body, p.name, p.value);
    ++count;
  }
  for (const auto& b : model.buffers()) {
    PutTensor(body, b.name, b.value);
    ++count;
  }
  for (const auto& [name, m] : adam.first_moment) {
    PutTensor(body, "adam.m." + name, m);
    ++count;
  }
  for (const auto& [name, v] : adam.second_moment) {
    PutTensor(body, "adam.v." + name, v);
    ++count;
  }
  const nlohmann::json meta = {
      {"format_version", kCheckpointVersion},
      {"model", model::ModelConfigToJson(model.config())},
      {"vocab", {{"tokens", vocab.tokens()}, {"digest", vocab.Digest()}}},
      {"epoch", epoch},
      {"precision", DTypeName(DType<T>())},
      {"optimizer",
       {{"lr", adam.options.lr},
        {"beta1", adam.options.beta1},
        {"beta2", adam.options.beta2},
        {"epsilon", adam.options.epsilon},
        {"step_count", adam.step_count}}},
      {"num_tensors", count}};
  const std::string text = meta.dump();
  std::string out(kCheckpointMagic, 4);
  Put<std::uint32_t>(out, static_cast<std::uint32_t>(text.size()));
  out += text;
  out += body;

  const std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write checkpoint " + tmp);
    f.write(out.data(), static_cast<std::streamsize>(out.size()));
    if (!f) throw std::runtime_error("failed writing checkpoint " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

nlohmann::json ReadCheckpointMetadata(const std::string& path) {
  Reader r(ReadAll(path), path);
  return ReadHeader(r);
}

template <typename T>
Checkpoint<T> LoadCheckpoint(const std::string& path) {
  Reader r(ReadAll(path), path);
  Checkpoint<T> ck;
  ck.metadata = ReadHeader(r);
  const nlohmann::json& meta = ck.metadata;
  const auto fail = [&](const std::string& what) {
    return std::runtime_error(path + ": " + what);
  };
  try {
    const std::string precision = meta.at("precision");
    if (precision != DTypeName(DType<T>())) {
      throw fail("dtype mismatch: checkpoint holds " + precision +
                 " tensors, expected " + DTypeName(DType<T>()));
    }
    ck.epoch = meta.at("epoch").get<std::size_t>();
    ck.vocab_tokens =
        meta.at("vocab").at("tokens").get<std::vector<std::string>>();
    const auto vocab = vocab::TokenVocabulary::FromTokens(ck.vocab_tokens);
    if (vocab.Digest() != meta.at("vocab").at("digest").get<std::string>()) {
      throw fail("vocabulary digest mismatch");
    }
    ck.model = std::make_unique<model::Model<T>>(
        model::ModelConfigFromJson(meta.at("model")), 0);
    const auto& opt = meta.at("optimizer");
    ck.adam.options = {opt.at("lr").get<double>(), opt.at("beta1").get<double>(),
                       opt.at("beta2").get<double>(), opt.at("epsilon").get<double>()};
    ck.adam.step_count = opt.at("step_count").get<std::int64_t>();
  } catch (const nlohmann::json::exception& e) {
    throw fail(std::string("bad metadata: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw fail(std::string("bad metadata: ") + e.what());
  }

  std::map<std::string, Tensor<T>*> targets;
  for (auto& p : ck.model->parameters()) targets[p.name] = &p.value;
  for (auto& b : ck.model->buffers()) targets[b.name] = &b.value;
  std::size_t filled = 0;
  const std::size_t count = meta.at("num_tensors").get<std::size_t>();
  for (std::size_t i = 0; i < count; ++i) {
    const auto name_len = r.Get<std::uint32_t>("tensor name length");
    const std::string name(r.Take(name_len, "tensor name"), name_len);
    const auto dtype = r.Get<std::uint8_t>("tensor dtype");
    if (dtype != DType<T>()) {
      throw fail("dtype mismatch for tensor '" + name + "': " + DTypeName(dtype));
    }
    const auto rank = r.Get<std::uint32_t>("tensor rank");
    Shape shape(rank);
    for (auto& d : shape) d = r.Get<std::uint64_t>("tensor dims");
    Tensor<T> t;
    try {
      t = Tensor<T>(shape);
    } catch (const std::invalid_argument& e) {
      throw fail("tensor '" + name + "': " + e.what());
    }
    std::memcpy(t.data(), r.Take(t.size() * sizeof(T), "tensor data"),
                t.size() * sizeof(T));

    if (name.starts_with("adam.m.")) {
      ck.adam.first_moment[name.substr(7)] = std::move(t);
    } else if (name.starts_with("adam.v.")) {
      ck.adam.second_moment[name.substr(7)] = std::move(t);
    } else {
      const auto it = targets.find(name);
      if (it == targets.end()) throw fail("unexpected tensor '" + name + "'");
      if (it->second->shape() != t.shape()) {
        throw fail("tensor '" + name + "' has shape " + ShapeString(t.shape()) +
                   ", model expects " + ShapeString(it->second->shape()));
      }
      *it->second = std::move(t);
      ++filled;
    }
  }
  if (filled != targets.size()) {
    throw fail("checkpoint is missing " + std::to_string(targets.size() - filled) +
               " model tensors");
  }
  if (!r.done()) throw fail("trailing bytes after the tensor table");
  return ck;
}

template void SaveCheckpoint(const std::string&, const model::Model<float>&,
                             const nn::AdamState<float>&,
                             const vocab::TokenVocabulary&, std::size_t);
template void SaveCheckpoint(const std::string&, const model::Model<double>&,
                             const nn::AdamState<double>&,
                             const vocab::TokenVocabulary&, std::size_t);
template Checkpoint<float> LoadCheckpoint(const std::string&);
template Checkpoint<double> LoadCheckpoint(const std::string&);

}  // namespace swasr::train
