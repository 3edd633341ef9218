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

// Replacement candidates for one token: systematic character confusions
// (long s read as f), two-word splits, and closest lexicon matches.

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "ocrpost/ingest.hpp"
#include "ocrpost/lexicon.hpp"

namespace ocrpost {

/// Listed in dedupe priority order.
enum class CandidateKind { Original, Confusion, Split, Similarity };

const char* kind_name(CandidateKind kind);
std::optional<CandidateKind> parse_kind(std::string_view name);

/// Maps a confusable character (one code point, lowercase) to the
/// characters it may really be.
class ConfusionMap {
 public:
  static constexpr std::size_t kDefaultMaxSites = 8;

  ConfusionMap() = default;
  /// {f -> s}.
  static ConfusionMap defaults();
  /// Lines of `<char> <char>[,<char>...]`; '#' comments and blanks skipped.
  static ConfusionMap parse(std::string_view text);
  static ConfusionMap load(const std::filesystem::path& path);

  void add(std::string_view from, std::string_view to);
  void set_max_sites(std::size_t n);
  std::size_t max_sites() const { return max_sites_; }
  const std::map<std::string, std::vector<std::string>>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

  /// True if any character of `word` is a confusable source.
  bool has_sites(std::string_view word) const;

 private:
  std::map<std::string, std::vector<std::string>> entries_;
  std::size_t max_sites_ = kDefaultMaxSites;
};

struct Candidate {
  std::string text;
  CandidateKind kind = CandidateKind::Original;
  std::optional<double> score;  // Similarity only

  friend bool operator==(const Candidate&, const Candidate&) = default;
};

struct CandidateSet {
  std::string original;
  /// alternatives[0] is always the original word.
  std::vector<Candidate> alternatives;

  /// r_i: number of replacements, excluding the original.
  std::size_t replacement_count() const {
    return alternatives.empty() ? 0 : alternatives.size() - 1;
  }
};

struct GenerateOptions {
  std::size_t k = 3;
  double cutoff = 0.6;
};

/// Substitutes confusable characters and keeps the lexicon words. With more
/// than max_sites sites, subsets range over the first max_sites sites and
/// the all-sites variant is added. Sorted by text.
std::vector<Candidate> confusion_variants(std::string_view word, const ConfusionMap& map,
                                          const Lexicon& lex);

/// "left right" for every split point whose halves are both lexicon words,
/// in split-point order.
std::vector<Candidate> split_variants(std::string_view word, const Lexicon& lex);

/// Candidate set for a normalized (lowercase) word. A recognized word with
/// no confusable characters gets no alternatives; confusion variants are
/// tried for every word; splits and closest matches only for unrecognized
/// words.
CandidateSet generate(std::string_view normalized, const Lexicon& lex, const ConfusionMap& map,
                      const GenerateOptions& options = {});
CandidateSet generate(const Token& token, const Lexicon& lex, const ConfusionMap& map,
                      const GenerateOptions& options = {});

}  // namespace ocrpost
