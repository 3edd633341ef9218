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

// Two-column TSV ledger: corrected text, then the edits applied to the line
// as "orig -> new" joined by "; ". Tabs and backslashes inside the text are
// escaped as \t and \\ so the column split stays unambiguous.

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ocrpost/corrector.hpp"

namespace ocrpost {

enum class ArrowStyle { Ascii, Unicode };

std::string_view arrow(ArrowStyle style);  // " -> " or " → "

std::string escape_field(std::string_view s);
std::string unescape_field(std::string_view s);

std::string format_edits(std::span<const Edit> edits, ArrowStyle style);

/// Lines starting with this prefix at the top of a ledger are manifest
/// comments and are skipped by read_ledger.
inline constexpr std::string_view kManifestPrefix = "#ocrpost ";

void write_ledger(std::ostream& out, std::span<const CorrectedLine> lines, ArrowStyle style,
                  std::span<const std::string> manifest = {});

struct LedgerRow {
  std::string text;
  std::vector<std::pair<std::string, std::string>> edits;  // (original, replacement)
};

/// Accepts both arrow styles. Throws LedgerError on malformed rows.
std::vector<LedgerRow> read_ledger(std::istream& in);

}  // namespace ocrpost
