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

#include <random>
#include <sstream>

#include "doctest.h"
#include "ocrpost/errors.hpp"
#include "ocrpost/ledger.hpp"
#include "support/fixtures.hpp"

using namespace ocrpost;
using namespace ocrpost::testing;
using Pairs = std::vector<std::pair<std::string, std::string>>;

namespace {

Edit edit(std::string from, std::string to) {
  Edit e;
  e.original_surface = std::move(from);
  e.replacement_surface = std::move(to);
  return e;
}

std::vector<LedgerRow> parse(const std::string& s) {
  std::istringstream in(s);
  return read_ledger(in);
}

}  // namespace

TEST_CASE("format_edits joins with the chosen arrow") {
  const std::vector<Edit> edits = {edit("fo", "so"), edit("timeas", "time as")};
  CHECK(format_edits(edits, ArrowStyle::Ascii) == "fo -> so; timeas -> time as");
  CHECK(format_edits(edits, ArrowStyle::Unicode) == "fo \xE2\x86\x92 so; timeas \xE2\x86\x92 time as");
  CHECK(format_edits({}, ArrowStyle::Ascii).empty());
}

TEST_CASE("escaping round trips arbitrary bytes") {
  CHECK(escape_field("a\tb\\c") == "a\\tb\\\\c");
  CHECK(unescape_field("a\\tb\\\\c") == "a\tb\\c");
  CHECK(unescape_field("trailing\\") == "trailing\\");
  std::mt19937 rng(4);
  const std::string alphabet = "ab\t\\t ";
  for (int i = 0; i < 3000; ++i) {
    std::string s(rng() % 12, 'a');
    for (auto& c : s) c = alphabet[rng() % alphabet.size()];
    const std::string e = escape_field(s);
    CHECK(e.find('\t') == std::string::npos);
    CHECK(unescape_field(e) == s);
  }
}

TEST_CASE("write then read preserves text and edits") {
  std::vector<CorrectedLine> lines(3);
  lines[0].text = "so desire ; and on his Refutal, the said";
  lines[0].edits = {edit("fo", "so"), edit("defire", "desire"), edit("faid", "said")};
  lines[1].text = "";
  lines[2].text = "odd\tcell \\ here";
  lines[2].edits = {edit("Timeas", "Time as")};
  for (auto style : {ArrowStyle::Ascii, ArrowStyle::Unicode}) {
    std::ostringstream out;
    const std::vector<std::string> manifest = {"lexicon a.txt", "lm charter.arpa"};
    write_ledger(out, lines, style, manifest);
    CHECK(out.str().rfind("#ocrpost lexicon a.txt\n#ocrpost lm charter.arpa\n", 0) == 0);
    const auto rows = parse(out.str());
    REQUIRE(rows.size() == 3);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      CHECK(rows[i].text == lines[i].text);
      REQUIRE(rows[i].edits.size() == lines[i].edits.size());
      for (std::size_t k = 0; k < rows[i].edits.size(); ++k) {
        CHECK(rows[i].edits[k].first == lines[i].edits[k].original_surface);
        CHECK(rows[i].edits[k].second == lines[i].edits[k].replacement_surface);
      }
    }
  }
}

TEST_CASE("reads the charter reference ledger") {
  std::ifstream in(fixture("charter/reference_ledger.tsv"));
  const auto rows = read_ledger(in);
  REQUIRE(rows.size() == 5);
  CHECK(rows[2].text == "Ex-governor for the time being, on such");
  CHECK(rows[2].edits == Pairs{{"Deputy-Governor", "Ex-governor"}, {"fuch", "such"}});
}

TEST_CASE("mixed arrows, CRLF and a manifest only at the top") {
  const auto rows = parse("#ocrpost x\r\nthe said\tfaid \xE2\x86\x92 said; fhall -> shall\r\n");
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].edits == Pairs{{"faid", "said"}, {"fhall", "shall"}});
  CHECK_THROWS_AS(parse("a\t\n#ocrpost later\n"), LedgerError);
}

TEST_CASE("malformed rows throw") {
  CHECK_THROWS_AS(parse("no tab here\n"), LedgerError);
  CHECK_THROWS_AS(parse("a\tb\tc\n"), LedgerError);
  CHECK_THROWS_AS(parse("a\tfaid said\n"), LedgerError);
  CHECK(parse("").empty());
}
