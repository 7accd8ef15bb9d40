// Copyright 2026 The GRUEN Metric Authors.
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

#ifndef GRUEN_TEXT_H_
#define GRUEN_TEXT_H_

#include <string>
#include <string_view>

namespace gruen {

// Minimal UTF-8 helpers. Malformed bytes decode to U+FFFD so that every input
// byte sequence maps to some code point sequence.
std::u32string DecodeUtf8(std::string_view text);
std::string EncodeUtf8(std::u32string_view text);

// Number of code points in a UTF-8 string.
std::size_t Utf8Length(std::string_view text);

bool IsSpace(char32_t c);
bool IsUpper(char32_t c);
bool IsDigit(char32_t c);
bool IsPunctuation(char32_t c);

// Simple case mapping for ASCII, Latin-1, Latin Extended-A, Greek and
// Cyrillic. Anything else is returned unchanged.
char32_t ToLower(char32_t c);
std::u32string ToLower(std::u32string_view text);
std::string ToLowerUtf8(std::string_view text);

// Strips leading and trailing whitespace.
std::string_view Trim(std::string_view text);

}  // namespace gruen

#endif  // GRUEN_TEXT_H_
