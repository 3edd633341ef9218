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

#include "ocrpost/evalkit.hpp"

#include <sstream>

#include "ocrpost/errors.hpp"
#include "ocrpost/text.hpp"

namespace ocrpost {

std::size_t edit_distance(std::string_view a, std::string_view b) {
  std::vector<char32_t> ca;
  std::vector<char32_t> cb;
  for (const auto& c : text::decode(a)) ca.push_back(c.value);
  for (const auto& c : text::decode(b)) cb.push_back(c.value);
  return edit_distance<char32_t>(ca, cb);
}

std::vector<AlignStep> align(std::span<const std::string> hyp, std::span<const std::string> ref) {
  const std::size_t n = hyp.size();
  const std::size_t m = ref.size();
  std::vector<std::size_t> d((n + 1) * (m + 1));
  auto at = [&](std::size_t i, std::size_t j) -> std::size_t& { return d[i * (m + 1) + j]; };
  for (std::size_t i = 0; i <= n; ++i) at(i, 0) = i;
  for (std::size_t j = 0; j <= m; ++j) at(0, j) = j;
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      at(i, j) = std::min({at(i - 1, j) + 1, at(i, j - 1) + 1,
                           at(i - 1, j - 1) + (hyp[i - 1] == ref[j - 1] ? 0 : 1)});
    }
  }
  std::vector<AlignStep> steps;
  std::size_t i = n;
  std::size_t j = m;
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0) {
      const bool same = hyp[i - 1] == ref[j - 1];
      if (at(i, j) == at(i - 1, j - 1) + (same ? 0 : 1)) {
        steps.push_back({same ? AlignOp::Match : AlignOp::Substitute, i - 1, j - 1});
        --i;
        --j;
        continue;
      }
    }
    if (i > 0 && at(i, j) == at(i - 1, j) + 1) {
      steps.push_back({AlignOp::Insert, i - 1, std::nullopt});
      --i;
    } else {
      steps.push_back({AlignOp::Delete, std::nullopt, j - 1});
      --j;
    }
  }
  std::reverse(steps.begin(), steps.end());
  return steps;
}

namespace {

std::vector<std::string> words_of(const std::string& line, bool ignore_case) {
  std::istringstream ss(ignore_case ? text::lowercase(line) : line);
  std::vector<std::string> out;
  std::string w;
  while (ss >> w) out.push_back(w);
  return out;
}

double rate(std::size_t errors, std::size_t total) {
  if (total == 0) return errors == 0 ? 0.0 : static_cast<double>(errors);
  return static_cast<double>(errors) / static_cast<double>(total);
}

}  // namespace

EvalReport evaluate(std::span<const std::string> raw, std::span<const std::string> corrected,
                    std::span<const std::string> reference, const EvalOptions& options) {
  if (raw.size() != reference.size() || corrected.size() != reference.size()) {
    throw UsageError("line counts differ: raw " + std::to_string(raw.size()) + ", corrected " +
                     std::to_string(corrected.size()) + ", reference " +
                     std::to_string(reference.size()));
  }
  EvalReport r;
  r.lines = reference.size();
  std::size_t word_errors_before = 0;
  std::size_t word_errors_after = 0;
  std::size_t char_errors_before = 0;
  std::size_t char_errors_after = 0;
  std::size_t edited_lines = 0;

  for (std::size_t l = 0; l < reference.size(); ++l) {
    const auto ref = words_of(reference[l], options.ignore_case);
    const auto before = words_of(raw[l], options.ignore_case);
    const auto after = words_of(corrected[l], options.ignore_case);
    r.reference_words += ref.size();
    word_errors_before += edit_distance<std::string>(before, ref);
    word_errors_after += edit_distance<std::string>(after, ref);

    const std::string ref_line = options.ignore_case ? text::lowercase(reference[l]) : reference[l];
    const std::string raw_line = options.ignore_case ? text::lowercase(raw[l]) : raw[l];
    const std::string hyp_line = options.ignore_case ? text::lowercase(corrected[l]) : corrected[l];
    r.reference_chars += text::length(ref_line);
    char_errors_before += edit_distance(std::string_view(raw_line), ref_line);
    char_errors_after += edit_distance(std::string_view(hyp_line), ref_line);
    if (raw[l] != corrected[l]) ++edited_lines;

    std::vector<bool> fixed_at(ref.size(), false);
    for (const auto& step : align(after, ref)) {
      if (step.op == AlignOp::Match) fixed_at[*step.ref] = true;
    }
    for (const auto& step : align(before, ref)) {
      if (step.op != AlignOp::Substitute) continue;
      ++r.errors_total;
      if (fixed_at[*step.ref]) ++r.errors_fixed;
    }
  }

  r.wer_before = rate(word_errors_before, r.reference_words);
  r.wer_after = rate(word_errors_after, r.reference_words);
  r.cer_before = rate(char_errors_before, r.reference_chars);
  r.cer_after = rate(char_errors_after, r.reference_chars);
  if (r.errors_total > 0) {
    r.correction_rate = static_cast<double>(r.errors_fixed) / static_cast<double>(r.errors_total);
  }
  r.lines_with_edits_fraction =
      r.lines == 0 ? 0.0 : static_cast<double>(edited_lines) / static_cast<double>(r.lines);
  return r;
}

nlohmann::json to_json(const EvalReport& r) {
  nlohmann::json j;
  j["lines"] = r.lines;
  j["reference_words"] = r.reference_words;
  j["reference_chars"] = r.reference_chars;
  j["wer_before"] = r.wer_before;
  j["wer_after"] = r.wer_after;
  j["cer_before"] = r.cer_before;
  j["cer_after"] = r.cer_after;
  j["errors_total"] = r.errors_total;
  j["errors_fixed"] = r.errors_fixed;
  j["correction_rate"] = r.correction_rate ? nlohmann::json(*r.correction_rate) : nlohmann::json();
  j["lines_with_edits_fraction"] = r.lines_with_edits_fraction;
  return j;
}

}  // namespace ocrpost
