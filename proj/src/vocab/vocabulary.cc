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

#include "swasr/vocab/vocabulary.h"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>
#include <stdexcept>

#include <openssl/evp.h>
#include <unicode/utf8.h>

#include "swasr/vocab/text.h"

namespace swasr::vocab {

namespace {

constexpr std::string_view kReplacementChar = "\xEF\xBF\xBD";  // U+FFFD

UChar32 FirstCodePoint(const std::string& s) {
  const auto* p = reinterpret_cast<const uint8_t*>(s.data());
  int32_t i = 0;
  UChar32 c;
  U8_NEXT(p, i, static_cast<int32_t>(s.size()), c);
  return c;
}

}  // namespace

TokenVocabulary TokenVocabulary::Build(
    const std::vector<std::string>& transcripts) {
  if (transcripts.empty()) {
    throw std::invalid_argument("build_vocab: no transcripts");
  }
  std::set<std::string> chars;
  for (const std::string& t : transcripts) {
    for (std::string& cp : SplitCodePoints(NormalizeText(t))) {
      if (cp != " ") chars.insert(std::move(cp));
    }
  }
  std::vector<std::string> sorted(chars.begin(), chars.end());
  std::sort(sorted.begin(), sorted.end(),
            [](const std::string& a, const std::string& b) {
              return FirstCodePoint(a) < FirstCodePoint(b);
            });
  std::vector<std::string> tokens{std::string(kBlankToken),
                                  std::string(kUnkToken),
                                  std::string(kSpaceToken)};
  tokens.insert(tokens.end(), sorted.begin(), sorted.end());
  return FromTokens(std::move(tokens));
}

TokenVocabulary TokenVocabulary::FromTokens(std::vector<std::string> tokens) {
  TokenVocabulary v;
  if (tokens.empty() || tokens[0] != kBlankToken) {
    throw std::invalid_argument("vocabulary: id 0 must be " +
                                std::string(kBlankToken));
  }
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i].empty()) {
      throw std::invalid_argument("vocabulary: empty token at id " +
                                  std::to_string(i));
    }
    if (!v.index_.emplace(tokens[i], static_cast<std::int32_t>(i)).second) {
      throw std::invalid_argument("vocabulary: duplicate token '" + tokens[i] +
                                  "' at id " + std::to_string(i));
    }
  }
  v.tokens_ = std::move(tokens);
  v.unk_id_ = v.Find(kUnkToken);
  v.space_id_ = v.Find(kSpaceToken);
  if (v.unk_id_ < 0 || v.space_id_ < 0) {
    throw std::invalid_argument("vocabulary: missing reserved token " +
                                std::string(v.unk_id_ < 0 ? kUnkToken
                                                          : kSpaceToken));
  }
  return v;
}

TokenVocabulary TokenVocabulary::Load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open vocabulary file " + path);
  std::vector<std::string> tokens;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    tokens.push_back(line);
  }
  try {
    return FromTokens(std::move(tokens));
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

void TokenVocabulary::Save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write vocabulary file " + path);
  for (const std::string& t : tokens_) out << t << '\n';
  if (!out) throw std::runtime_error("failed writing " + path);
}

const std::string& TokenVocabulary::Token(std::int32_t id) const {
  if (id < 0 || static_cast<std::size_t>(id) >= tokens_.size()) {
    throw std::out_of_range("token id " + std::to_string(id) +
                            " out of range");
  }
  return tokens_[static_cast<std::size_t>(id)];
}

std::int32_t TokenVocabulary::Find(std::string_view token) const {
  const auto it = index_.find(std::string(token));
  return it == index_.end() ? -1 : it->second;
}

std::vector<std::int32_t> TokenVocabulary::Tokenize(
    std::string_view text) const {
  std::vector<std::int32_t> ids;
  for (const std::string& cp : SplitCodePoints(text)) {
    if (cp == " ") {
      ids.push_back(space_id_);
      continue;
    }
    const std::int32_t id = Find(cp);
    // Reserved names are not characters; "<" alone is looked up like any
    // other character.
    ids.push_back(id > 0 ? id : unk_id_);
  }
  return ids;
}

std::string TokenVocabulary::Detokenize(
    std::span<const std::int32_t> ids) const {
  std::string out;
  for (std::int32_t id : ids) {
    if (id == 0) throw std::invalid_argument("detokenize: blank id present");
    if (id == space_id_) {
      out.push_back(' ');
    } else if (id == unk_id_) {
      out.append(kReplacementChar);
    } else {
      out.append(Token(id));
    }
  }
  return out;
}

std::string TokenVocabulary::Digest() const {
  std::string joined;
  for (const std::string& t : tokens_) {
    joined += t;
    joined.push_back('\n');
  }
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!EVP_Digest(joined.data(), joined.size(), md, &len, EVP_sha256(),
                  nullptr)) {
    throw std::runtime_error("SHA-256 digest failed");
  }
  std::ostringstream hex;
  for (unsigned int i = 0; i < len; ++i) {
    hex << std::hex << std::setw(2) << std::setfill('0')
        << static_cast<int>(md[i]);
  }
  return hex.str();
}

}  // namespace swasr::vocab
