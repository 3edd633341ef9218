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

#include "doctest.h"
#include "ocrpost/text.hpp"

using namespace ocrpost;

TEST_CASE("decode reports offsets and escapes invalid bytes") {
  const auto cps = text::decode("a\xC3\xA9z\xFF");
  REQUIRE(cps.size() == 4);
  CHECK(cps[0].value == U'a');
  CHECK(cps[1].value == U'é');
  CHECK(cps[1].offset == 1);
  CHECK(cps[1].length == 2);
  CHECK(cps[2].offset == 3);
  CHECK(cps[3].value == 0xDCFF);
  CHECK_FALSE(text::is_word_char(cps[3].value));
}

TEST_CASE("append_utf8 inverts decode") {
  const std::string s = "Ex-governor \xC3\x89""cole \xE2\x80\x99 \xF0\x9F\x93\x9C";
  std::string out;
  for (const auto& cp : text::decode(s)) text::append_utf8(out, cp.value);
  CHECK(out == s);
}

TEST_CASE("case mapping covers ASCII and Latin-1") {
  CHECK(text::lowercase("Refutal") == "refutal");
  CHECK(text::uppercase("said") == "SAID");
  CHECK(text::lowercase("\xC3\x89""COLE") == "\xC3\xA9""cole");
  CHECK(text::uppercase("\xC3\xA9""cole") == "\xC3\x89""COLE");
  // sharp s and y-diaeresis have no single-character uppercase in Latin-1
  CHECK(text::uppercase("\xC3\x9F") == "\xC3\x9F");
  CHECK(text::lowercase("1719") == "1719");
}

TEST_CASE("character classes") {
  CHECK(text::is_word_char(U'a'));
  CHECK(text::is_word_char(U'7'));
  CHECK(text::is_word_char(U'é'));
  CHECK_FALSE(text::is_word_char(U'-'));
  CHECK_FALSE(text::is_word_char(U','));
  CHECK_FALSE(text::is_word_char(U'\u2014'));
  CHECK(text::is_joiner(U'-'));
  CHECK(text::is_joiner(U'\''));
  CHECK(text::is_joiner(U'’'));
  CHECK(text::is_space(U'\t'));
  CHECK(text::is_space(U' '));
}

TEST_CASE("length counts code points") {
  CHECK(text::length("") == 0);
  CHECK(text::length("abc") == 3);
  CHECK(text::length("\xC3\xA9t\xC3\xA9") == 3);
}

TEST_CASE("split_lines accepts LF and CRLF") {
  using V = std::vector<std::string>;
  CHECK(text::split_lines("a\nb\n") == V{"a", "b"});
  CHECK(text::split_lines("a\r\nb") == V{"a", "b"});
  CHECK(text::split_lines("a\n\nb\n") == V{"a", "", "b"});
  CHECK(text::split_lines("") == V{});
  CHECK(text::split_lines("\n") == V{""});
}

TEST_CASE("trim strips surrounding whitespace") {
  CHECK(text::trim("  said \t") == "said");
  CHECK(text::trim("") == "");
  CHECK(text::trim(" a b ") == "a b");
}
