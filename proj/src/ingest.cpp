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

#include "ocrpost/ingest.hpp"

#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <exception>
#include <fstream>
#include <sstream>
#include <thread>

#include "ocrpost/errors.hpp"
#include "ocrpost/subprocess.hpp"
#include "ocrpost/text.hpp"

namespace ocrpost {

namespace fs = std::filesystem;

std::size_t RawDocument::line_count() const {
  std::size_t n = 0;
  for (const auto& p : pages) n += p.size();
  return n;
}

std::vector<std::string> RawDocument::lines() const {
  std::vector<std::string> out;
  out.reserve(line_count());
  for (const auto& p : pages) out.insert(out.end(), p.begin(), p.end());
  return out;
}

std::string RawDocument::page_text(std::size_t page) const {
  std::string out;
  for (const auto& line : pages.at(page)) {
    out += line;
    out.push_back('\n');
  }
  return out;
}

namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string replace_all(std::string s, std::string_view from, const std::string& to) {
  std::size_t pos = 0;
  while ((pos = s.find(from, pos)) != std::string::npos) {
    s.replace(pos, from.size(), to);
    pos += to.size();
  }
  return s;
}

fs::path page_output_path(int page) {
  static std::atomic<unsigned> counter{0};
  const auto name = "ocrpost-" + std::to_string(::getpid()) + "-" + std::to_string(page) + "-" +
                    std::to_string(counter.fetch_add(1)) + ".txt";
  return fs::temp_directory_path() / name;
}

std::vector<std::string> ocr_page(const fs::path& input, int page, const std::string& tmpl) {
  const bool to_file = tmpl.find("{output}") != std::string::npos;
  const fs::path out_path = to_file ? page_output_path(page) : fs::path();
  const auto cmd = expand_ocr_template(tmpl, input, page, out_path);
  const auto result = run_shell(cmd);
  if (result.exit_code != 0) {
    if (to_file) fs::remove(out_path);
    throw OcrError("OCR command failed on page " + std::to_string(page) + " (exit " +
                       std::to_string(result.exit_code) + "): " + text::trim(result.err),
                   result.err);
  }
  std::string page_text;
  if (to_file) {
    try {
      page_text = read_file(out_path);
    } catch (const IoError&) {
      throw OcrError("OCR command produced no output file for page " + std::to_string(page),
                     result.err);
    }
    fs::remove(out_path);
  } else {
    page_text = result.out;
  }
  return text::split_lines(page_text);
}

}  // namespace

bool is_pdf(const fs::path& path) {
  auto ext = text::lowercase(path.extension().string());
  if (ext == ".pdf") return true;
  std::ifstream in(path, std::ios::binary);
  char magic[4] = {};
  return in.read(magic, 4) && std::string_view(magic, 4) == "%PDF";
}

std::string expand_ocr_template(std::string_view tmpl, const fs::path& input, int page,
                                const fs::path& output) {
  std::string cmd(tmpl);
  cmd = replace_all(std::move(cmd), "{input}", shell_quote(input.string()));
  cmd = replace_all(std::move(cmd), "{page}", std::to_string(page));
  cmd = replace_all(std::move(cmd), "{output}", shell_quote(output.string()));
  return cmd;
}

RawDocument document_from_text(std::string_view text, std::string source) {
  RawDocument doc;
  doc.pages.push_back(text::split_lines(text));
  doc.source = std::move(source);
  return doc;
}

RawDocument acquire(const fs::path& source, const AcquireOptions& options) {
  if (!fs::exists(source)) throw IoError("input not found: " + source.string());
  if (!is_pdf(source)) {
    if (options.pages) throw UsageError("a page range is only valid for PDF input");
    return document_from_text(read_file(source), source.string());
  }

  if (!options.pages) throw UsageError("PDF input requires a page range");
  const PageRange range = *options.pages;
  if (!range.valid()) {
    throw UsageError("invalid page range " + std::to_string(range.first) + ".." +
                     std::to_string(range.last));
  }
  if (options.ocr_command.empty()) throw UsageError("PDF input requires an OCR command template");

  const std::size_t n = range.size();
  std::vector<std::vector<std::string>> pages(n);
  std::vector<std::exception_ptr> failures(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
      try {
        pages[i] = ocr_page(source, range.first + static_cast<int>(i), options.ocr_command);
      } catch (...) {
        failures[i] = std::current_exception();
      }
    }
  };
  const unsigned threads = std::clamp<unsigned>(options.workers, 1, static_cast<unsigned>(n));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }

  RawDocument doc;
  doc.pages = std::move(pages);
  doc.source = options.ocr_command + " @ " + source.string() + " pages " +
               std::to_string(range.first) + "-" + std::to_string(range.last);
  return doc;
}

namespace {

bool ends_with_split_hyphen(std::string_view line, std::size_t& hyphen_pos) {
  std::size_t end = line.size();
  while (end > 0 && (line[end - 1] == ' ' || line[end - 1] == '\t')) --end;
  if (end < 2 || line[end - 1] != '-') return false;
  const auto cps = text::decode(line.substr(0, end - 1));
  if (cps.empty() || !text::is_word_char(cps.back().value)) return false;
  hyphen_pos = end - 1;
  return true;
}

bool starts_with_word(std::string_view line) {
  if (line.empty()) return false;
  const auto cps = text::decode(line.substr(0, std::min<std::size_t>(4, line.size())));
  return !cps.empty() && text::is_word_char(cps.front().value);
}

}  // namespace

std::vector<std::string> rejoin_hyphens(std::vector<std::string> lines) {
  for (std::size_t i = 0; i + 1 < lines.size(); ++i) {
    std::size_t hyphen = 0;
    while (ends_with_split_hyphen(lines[i], hyphen) && starts_with_word(lines[i + 1])) {
      std::string& next = lines[i + 1];
      std::size_t chunk_end = next.find_first_of(" \t");
      if (chunk_end == std::string::npos) chunk_end = next.size();
      std::size_t rest = next.find_first_not_of(" \t", chunk_end);
      if (rest == std::string::npos) rest = next.size();
      lines[i] = lines[i].substr(0, hyphen) + next.substr(0, chunk_end);
      next.erase(0, rest);
    }
  }
  return lines;
}

RawDocument rejoin_hyphens(RawDocument doc) {
  for (auto& page : doc.pages) page = rejoin_hyphens(std::move(page));
  return doc;
}

CasePattern case_pattern_of(std::string_view surface) {
  const auto cps = text::decode(surface);
  std::vector<bool> upper(cps.size(), false);
  std::size_t upper_count = 0;
  bool has_lower = false;
  for (std::size_t i = 0; i < cps.size(); ++i) {
    if (text::is_upper(cps[i].value)) {
      upper[i] = true;
      ++upper_count;
    } else if (text::is_lower(cps[i].value)) {
      has_lower = true;
    }
  }
  CasePattern p;
  if (upper_count == 0) {
    p.kind = CaseKind::Lower;
  } else if (upper_count == 1 && upper[0]) {
    p.kind = CaseKind::Title;
  } else if (!has_lower && upper_count >= 2) {
    p.kind = CaseKind::Upper;
  } else {
    p.kind = CaseKind::Mixed;
    p.upper = std::move(upper);
  }
  return p;
}

std::string apply_case(const CasePattern& pattern, std::string_view normalized) {
  switch (pattern.kind) {
    case CaseKind::Lower:
      return std::string(normalized);
    case CaseKind::Upper:
      return text::uppercase(normalized);
    case CaseKind::Title:
    case CaseKind::Mixed: {
      std::string out;
      out.reserve(normalized.size());
      std::size_t i = 0;
      for (const auto& c : text::decode(normalized)) {
        const bool up = pattern.kind == CaseKind::Title
                            ? i == 0
                            : (i < pattern.upper.size() && pattern.upper[i]);
        if (up && text::to_upper(c.value) != c.value) {
          text::append_utf8(out, text::to_upper(c.value));
        } else {
          out.append(normalized.substr(c.offset, c.length));
        }
        ++i;
      }
      return out;
    }
  }
  return std::string(normalized);
}

std::string Line::detokenize() const {
  std::vector<std::string> surfaces;
  surfaces.reserve(tokens.size());
  for (const auto& t : tokens) surfaces.push_back(t.surface);
  return render(surfaces);
}

std::string Line::render(const std::vector<std::string>& surfaces) const {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    out += interstitial[i];
    out += surfaces.at(i);
  }
  out += interstitial.empty() ? std::string() : interstitial.back();
  return out;
}

Line tokenize(std::string_view raw, std::size_t index) {
  Line line;
  line.index = index;
  const auto cps = text::decode(raw);
  std::size_t gap_start = 0;
  std::size_t i = 0;
  while (i < cps.size()) {
    if (!text::is_word_char(cps[i].value)) {
      ++i;
      continue;
    }
    std::size_t j = i + 1;
    while (j < cps.size()) {
      if (text::is_word_char(cps[j].value)) {
        ++j;
      } else if (text::is_joiner(cps[j].value) && j + 1 < cps.size() &&
                 text::is_word_char(cps[j + 1].value)) {
        j += 2;
      } else {
        break;
      }
    }
    const std::size_t begin = cps[i].offset;
    const std::size_t end = j < cps.size() ? cps[j].offset : raw.size();
    line.interstitial.emplace_back(raw.substr(gap_start, begin - gap_start));
    Token tok;
    tok.surface = std::string(raw.substr(begin, end - begin));
    tok.normalized = text::lowercase(tok.surface);
    tok.case_pattern = case_pattern_of(tok.surface);
    tok.begin = begin;
    tok.end = end;
    line.tokens.push_back(std::move(tok));
    gap_start = end;
    i = j;
  }
  line.interstitial.emplace_back(raw.substr(gap_start));
  return line;
}

bool is_numeric(std::string_view word) {
  bool digit = false;
  for (const auto& c : text::decode(word)) {
    if (text::is_digit(c.value)) {
      digit = true;
    } else if (!text::is_joiner(c.value)) {
      return false;
    }
  }
  return digit;
}

}  // namespace ocrpost
