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

#include "ocrpost/ledger.hpp"

#include <istream>
#include <ostream>

#include "ocrpost/errors.hpp"

namespace ocrpost {

namespace {

constexpr std::string_view kAsciiArrow = " -> ";
constexpr std::string_view kUnicodeArrow = " → ";

}  // namespace

std::string_view arrow(ArrowStyle style) {
  return style == ArrowStyle::Unicode ? kUnicodeArrow : kAsciiArrow;
}

std::string escape_field(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    if (c == '\\') {
      out += "\\\\";
    } else if (c == '\t') {
      out += "\\t";
    } else {
      out.push_back(c);
    }
  }
  return out;
}

std::string unescape_field(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '\\' && i + 1 < s.size() && (s[i + 1] == '\\' || s[i + 1] == 't')) {
      out.push_back(s[i + 1] == 't' ? '\t' : '\\');
      ++i;
    } else {
      out.push_back(s[i]);
    }
  }
  return out;
}

std::string format_edits(std::span<const Edit> edits, ArrowStyle style) {
  std::string out;
  for (const auto& e : edits) {
    if (!out.empty()) out += "; ";
    out += e.original_surface;
    out += arrow(style);
    out += e.replacement_surface;
  }
  return out;
}

void write_ledger(std::ostream& out, std::span<const CorrectedLine> lines, ArrowStyle style,
                  std::span<const std::string> manifest) {
  for (const auto& m : manifest) out << kManifestPrefix << m << '\n';
  for (const auto& line : lines) {
    out << escape_field(line.text) << '\t' << escape_field(format_edits(line.edits, style))
        << '\n';
  }
}

std::vector<LedgerRow> read_ledger(std::istream& in) {
  std::vector<LedgerRow> rows;
  std::string line;
  std::size_t line_no = 0;
  bool in_header = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (in_header && line.rfind(kManifestPrefix, 0) == 0) continue;
    in_header = false;
    const auto tab = line.find('\t');
    if (tab == std::string::npos || line.find('\t', tab + 1) != std::string::npos) {
      throw LedgerError("ledger line " + std::to_string(line_no) + ": expected two columns");
    }
    LedgerRow row;
    row.text = unescape_field(std::string_view(line).substr(0, tab));
    const std::string edits = unescape_field(std::string_view(line).substr(tab + 1));
    std::size_t start = 0;
    while (start < edits.size()) {
      std::size_t end = edits.find("; ", start);
      if (end == std::string::npos) end = edits.size();
      const std::string_view item = std::string_view(edits).substr(start, end - start);
      std::string_view used = kAsciiArrow;
      std::size_t at = item.find(kAsciiArrow);
      if (at == std::string_view::npos) {
        used = kUnicodeArrow;
        at = item.find(kUnicodeArrow);
      }
      if (at == std::string_view::npos) {
        throw LedgerError("ledger line " + std::to_string(line_no) + ": edit without arrow '" +
                          std::string(item) + "'");
      }
      row.edits.emplace_back(std::string(item.substr(0, at)),
                             std::string(item.substr(at + used.size())));
      start = end + 2;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace ocrpost
