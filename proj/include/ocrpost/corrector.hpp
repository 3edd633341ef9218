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

#include <cstddef>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ocrpost/candidates.hpp"
#include "ocrpost/ingest.hpp"
#include "ocrpost/lexicon.hpp"
#include "ocrpost/ngram.hpp"

namespace ocrpost {

struct Edit {
  std::size_t line_index = 0;
  std::size_t token_index = 0;  // index into the line's raw tokens
  std::string original_surface;
  std::string replacement_surface;
  CandidateKind kind = CandidateKind::Original;
  double ppl_before = 0.0;
  double ppl_after = 0.0;
};

struct CorrectedLine {
  std::size_t line_index = 0;
  std::string text;
  std::vector<Edit> edits;
};

struct CorrectorConfig {
  GenerateOptions generate;
  unsigned workers = 1;
  /// (line_index, token_index) pairs that must keep their original form.
  std::set<std::pair<std::size_t, std::size_t>> suppressed;
};

/// Variant set for the token at `index`: one lowercase word
/// sequence per candidate, the original first. `current` holds the line's
/// current normalized form per token; entries may contain a space after an
/// earlier split.
std::vector<std::vector<std::string>> build_variants(std::span<const std::string> current,
                                                     std::size_t index,
                                                     const CandidateSet& candidates);

/// Index of the lowest-perplexity variant. A later variant only wins when it
/// is lower by more than a relative 1e-12, so ties keep the original.
std::size_t select_best(std::span<const std::vector<std::string>> variants,
                        const NGramModel& model);

/// Casts `replacement` (lowercase, possibly "left right") into the casing
/// of the token it replaces.
std::string restore_case(const CasePattern& pattern, std::string_view replacement);

/// Lowercase word sequence for scoring, splitting entries on spaces.
std::vector<std::string> flatten_words(std::span<const std::string> current);

class Corrector {
 public:
  Corrector(const Lexicon& lexicon, const ConfusionMap& confusions, const NGramModel& model,
            CorrectorConfig config = {});
  ~Corrector();

  /// Greedy left-to-right: each token with alternatives is replaced by the
  /// candidate that strictly lowers the current line's perplexity the most.
  CorrectedLine correct_line(const Line& line) const;

  /// Rejoins hyphen splits, then corrects every line. Line indices run
  /// across pages; output order does not depend on the worker count.
  std::vector<CorrectedLine> correct_document(const RawDocument& doc) const;
  std::vector<CorrectedLine> correct_lines(std::span<const std::string> lines) const;

  const CorrectorConfig& config() const { return config_; }

 private:
  const CandidateSet& candidates_for(const std::string& normalized) const;

  const Lexicon& lexicon_;
  const ConfusionMap& confusions_;
  const NGramModel& model_;
  CorrectorConfig config_;
  struct Cache;
  std::unique_ptr<Cache> cache_;
};

}  // namespace ocrpost
