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

#ifndef SWASR_VOCAB_VOCABULARY_H_
#define SWASR_VOCAB_VOCABULARY_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace swasr::vocab {

inline constexpr std::string_view kBlankToken = "<blank>";
inline constexpr std::string_view kUnkToken = "<UNK>";
inline constexpr std::string_view kSpaceToken = "<SPACE>";

// Character-level token set. Id 0 is always the CTC blank; <UNK> and
// <SPACE> are always present.
class TokenVocabulary {
 public:
  // {<blank>, <UNK>, <SPACE>} followed by every distinct non-space
  // character of the normalized transcripts in code-point order.
  static TokenVocabulary Build(const std::vector<std::string>& transcripts);

  // Validates and adopts an explicit token list (line order = id).
  static TokenVocabulary FromTokens(std::vector<std::string> tokens);

  static TokenVocabulary Load(const std::string& path);
  void Save(const std::string& path) const;

  std::size_t size() const { return tokens_.size(); }
  const std::vector<std::string>& tokens() const { return tokens_; }
  const std::string& Token(std::int32_t id) const;
  // -1 if absent.
  std::int32_t Find(std::string_view token) const;
  std::int32_t unk_id() const { return unk_id_; }
  std::int32_t space_id() const { return space_id_; }

  // Expects normalized text. Never emits the blank.
  std::vector<std::int32_t> Tokenize(std::string_view text) const;
  // <SPACE> becomes " " and <UNK> becomes U+FFFD. Throws on the blank or an
  // out-of-range id.
  std::string Detokenize(std::span<const std::int32_t> ids) const;

  // Hex SHA-256 over the newline-joined token list.
  std::string Digest() const;

  bool operator==(const TokenVocabulary& other) const {
    return tokens_ == other.tokens_;
  }

 private:
  TokenVocabulary() = default;

  std::vector<std::string> tokens_;
  std::unordered_map<std::string, std::int32_t> index_;
  std::int32_t unk_id_ = -1;
  std::int32_t space_id_ = -1;
};

}  // namespace swasr::vocab

#endif  // SWASR_VOCAB_VOCABULARY_H_
