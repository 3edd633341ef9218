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

// WER, CER and error-correction rate against a reference transcription.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

namespace ocrpost {

/// Unit-cost Levenshtein distance, O(min(n, m)) memory.
template <typename T>
std::size_t edit_distance(std::span<const T> a, std::span<const T> b) {
  if (a.size() < b.size()) std::swap(a, b);
  std::vector<std::size_t> row(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t up = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
      diag = up;
    }
  }
  return row[b.size()];
}

std::size_t edit_distance(std::string_view a, std::string_view b);

enum class AlignOp { Match, Substitute, Insert, Delete };

struct AlignStep {
  AlignOp op;
  std::optional<std::size_t> hyp;  // index into the hypothesis sequence
  std::optional<std::size_t> ref;  // index into the reference sequence
};

/// Minimal-cost alignment of `hyp` against `ref`. The backtrace prefers a
/// diagonal step (match or substitution) over an insertion/deletion pair.
/// Insert = extra hypothesis token, Delete = missing reference token.
std::vector<AlignStep> align(std::span<const std::string> hyp, std::span<const std::string> ref);

struct EvalReport {
  std::size_t lines = 0;
  std::size_t reference_words = 0;
  std::size_t reference_chars = 0;
  double wer_before = 0.0;
  double wer_after = 0.0;
  double cer_before = 0.0;
  double cer_after = 0.0;
  std::size_t errors_total = 0;
  std::size_t errors_fixed = 0;
  std::optional<double> correction_rate;  // null when errors_total == 0
  double lines_with_edits_fraction = 0.0;
};

struct EvalOptions {
  bool ignore_case = false;
};

/// Line-aligned corpora; words are whitespace-separated. An error is a
/// reference word aligned to a differing raw word by substitution; it is
/// fixed when the corrected text aligns that reference word to an exact
/// match. Throws UsageError when the line counts differ.
EvalReport evaluate(std::span<const std::string> raw, std::span<const std::string> corrected,
                    std::span<const std::string> reference, const EvalOptions& options = {});

nlohmann::json to_json(const EvalReport& report);

}  // namespace ocrpost
