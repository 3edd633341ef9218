// Copyright 2026 The ocrpost Authors.
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

#pragma once

// UTF-8 helpers shared by the tokenizer, lexicon and case restoration.
// Case mapping covers ASCII and the Latin-1 supplement letters; every other
// code point is treated as caseless.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace ocrpost::text {

struct CodePoint {
  char32_t value;
  std::size_t offset;  // byte offset in the source string
  std::size_t length;  // encoded length in bytes
};

/// Lenient decoder: a byte that does not start a valid sequence is returned
/// as a single code point in the U+DC80..U+DCFF range (never a letter).
std::vector<CodePoint> decode(std::string_view s);

void append_utf8(std::string& out, char32_t cp);

char32_t to_lower(char32_t cp);
char32_t to_upper(char32_t cp);
bool is_upper(char32_t cp);
bool is_lower(char32_t cp);

bool is_space(char32_t cp);
bool is_digit(char32_t cp);
/// Letters and digits: the characters a token can start or end with.
bool is_word_char(char32_t cp);
/// Hyphens and apostrophes kept when they sit between two word characters.
bool is_joiner(char32_t cp);

std::string lowercase(std::string_view s);
std::string uppercase(std::string_view s);

/// Number of code points.
std::size_t length(std::string_view s);

/// Splits on '\n', dropping one '\r' before each break. A trailing newline
/// does not produce an extra empty line.
std::vector<std::string> split_lines(std::string_view s);

std::string trim(std::string_view s);

}  // namespace ocrpost::text
