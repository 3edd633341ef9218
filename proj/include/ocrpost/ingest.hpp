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

// Acquiring OCR text, rejoining hyphenated line splits, and tokenizing lines
// into case-annotated tokens that can be put back together byte-for-byte.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ocrpost {

/// Inclusive, 1-based page range.
struct PageRange {
  int first = 0;
  int last = 0;

  std::size_t size() const { return static_cast<std::size_t>(last - first + 1); }
  bool valid() const { return first >= 1 && first <= last; }
};

struct RawDocument {
  /// One entry per page; each page is its list of lines (line breaks kept
  /// structurally, CRLF already folded to LF).
  std::vector<std::vector<std::string>> pages;
  std::string source;

  std::size_t line_count() const;
  /// All lines in page order.
  std::vector<std::string> lines() const;
  std::string page_text(std::size_t page) const;
};

struct AcquireOptions {
  std::optional<PageRange> pages;
  /// Shell template with {input}, {page} and optional {output} placeholders.
  /// Without {output} the page text is read from the command's stdout.
  std::string ocr_command;
  unsigned workers = 1;
};

/// True when `path` names a PDF (by extension or "%PDF" magic).
bool is_pdf(const std::filesystem::path& path);

/// Plain text becomes a single page. PDFs are rendered page by page through
/// the external OCR command; pages may run concurrently but are returned in
/// page order.
RawDocument acquire(const std::filesystem::path& source, const AcquireOptions& options);

RawDocument document_from_text(std::string_view text, std::string source = "<memory>");

/// Substitutes the placeholders of an OCR command template (values are
/// shell-quoted except the page number).
std::string expand_ocr_template(std::string_view tmpl, const std::filesystem::path& input, int page,
                                const std::filesystem::path& output);

/// Joins "espe-" / "cially good" into "especially" / "good". Lines of each
/// page are processed independently of other pages. Idempotent.
std::vector<std::string> rejoin_hyphens(std::vector<std::string> lines);
RawDocument rejoin_hyphens(RawDocument doc);

enum class CaseKind : std::uint8_t { Lower, Title, Upper, Mixed };

struct CasePattern {
  CaseKind kind = CaseKind::Lower;
  /// Uppercase flags per code point; only populated for Mixed.
  std::vector<bool> upper;

  friend bool operator==(const CasePattern&, const CasePattern&) = default;
};

CasePattern case_pattern_of(std::string_view surface);

/// Exact inverse of lowercasing for a same-length string.
std::string apply_case(const CasePattern& pattern, std::string_view normalized);

struct Token {
  std::string surface;
  std::string normalized;
  CasePattern case_pattern;
  std::size_t begin = 0;  // byte offsets into the raw line
  std::size_t end = 0;
};

struct Line {
  std::size_t index = 0;
  std::vector<Token> tokens;
  /// interstitial.size() == tokens.size() + 1; interstitial[i] precedes
  /// tokens[i] and the last entry trails the final token.
  std::vector<std::string> interstitial;

  std::size_t size() const { return tokens.size(); }
  std::string detokenize() const;
  /// Rebuilds the line with per-token replacement surfaces.
  std::string render(const std::vector<std::string>& surfaces) const;
};

/// Tokens are maximal runs of letters and digits, with hyphens and
/// apostrophes kept only between word characters.
Line tokenize(std::string_view raw_line, std::size_t index = 0);

/// All-digit tokens (optionally with internal joiners) are never flagged.
bool is_numeric(std::string_view word);

}  // namespace ocrpost
