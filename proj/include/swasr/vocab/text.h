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

#ifndef SWASR_VOCAB_TEXT_H_
#define SWASR_VOCAB_TEXT_H_

#include <string>
#include <string_view>
#include <vector>

namespace swasr::vocab {

// NFC-normalizes, uppercases Latin-script letters, collapses every run of
// Unicode whitespace to one ASCII space and trims both ends. Throws
// std::invalid_argument on ill-formed UTF-8.
std::string NormalizeText(std::string_view text);

// Splits UTF-8 text into one string per code point. Throws
// std::invalid_argument on ill-formed UTF-8.
std::vector<std::string> SplitCodePoints(std::string_view text);

}  // namespace swasr::vocab

#endif  // SWASR_VOCAB_TEXT_H_
