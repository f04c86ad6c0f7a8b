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

#include "swasr/vocab/text.h"

#include <stdexcept>

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/uscript.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

namespace swasr::vocab {

namespace {

// Decodes strictly; negative code points mark ill-formed input.
std::vector<UChar32> DecodeUtf8(std::string_view text) {
  std::vector<UChar32> out;
  const auto* s = reinterpret_cast<const uint8_t*>(text.data());
  const int32_t len = static_cast<int32_t>(text.size());
  int32_t i = 0;
  while (i < len) {
    const int32_t start = i;
    UChar32 c;
    U8_NEXT(s, i, len, c);
    if (c < 0) {
      throw std::invalid_argument("invalid UTF-8 at byte offset " +
                                  std::to_string(start));
    }
    out.push_back(c);
  }
  return out;
}

void AppendUtf8(std::string& out, UChar32 c) {
  uint8_t buf[U8_MAX_LENGTH];
  int32_t n = 0;
  UBool error = false;
  U8_APPEND(buf, n, U8_MAX_LENGTH, c, error);
  if (error) throw std::invalid_argument("unencodable code point");
  out.append(reinterpret_cast<const char*>(buf), static_cast<std::size_t>(n));
}

}  // namespace

std::string NormalizeText(std::string_view text) {
  DecodeUtf8(text);  // validation only

  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* nfc = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status)) {
    throw std::runtime_error(std::string("ICU NFC unavailable: ") +
                             u_errorName(status));
  }
  const icu::UnicodeString composed = nfc->normalize(
      icu::UnicodeString::fromUTF8(icu::StringPiece(text.data(),
                                                    static_cast<int32_t>(text.size()))),
      status);
  if (U_FAILURE(status)) {
    throw std::runtime_error(std::string("NFC normalization failed: ") +
                             u_errorName(status));
  }
  std::string utf8;
  composed.toUTF8String(utf8);

  std::string out;
  bool pending_space = false;
  for (UChar32 c : DecodeUtf8(utf8)) {
    if (u_isUWhiteSpace(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) {
      out.push_back(' ');
      pending_space = false;
    }
    UErrorCode script_status = U_ZERO_ERROR;
    if (u_isalpha(c) && uscript_getScript(c, &script_status) == USCRIPT_LATIN) {
      c = u_toupper(c);
    }
    AppendUtf8(out, c);
  }
  return out;
}

std::vector<std::string> SplitCodePoints(std::string_view text) {
  std::vector<std::string> out;
  for (UChar32 c : DecodeUtf8(text)) {
    std::string cp;
    AppendUtf8(cp, c);
    out.push_back(std::move(cp));
  }
  return out;
}

}  // namespace swasr::vocab
