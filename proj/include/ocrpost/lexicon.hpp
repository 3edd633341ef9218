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
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "ocrpost/kernels.hpp"

namespace ocrpost {

/// Total size of the matching blocks found by recursive longest-common-
/// substring decomposition (Ratcliff/Obershelp), compared bytewise. Among
/// equally long blocks the one starting earliest in `a`, then in `b`, wins.
std::size_t matching_characters(std::string_view a, std::string_view b);

/// Gestalt similarity 2*M / (|a| + |b|); 1.0 for two empty strings. Not
/// symmetric in general: close_matches passes the lexicon word as `a` and
/// the query as `b`.
double similarity(std::string_view a, std::string_view b);

struct Match {
  std::string word;
  double score = 0.0;

  friend bool operator==(const Match&, const Match&) = default;
};

struct WordlistStats {
  std::string path;
  std::size_t lines = 0;  // non-comment, non-blank lines
  std::size_t words = 0;  // distinct entries contributed by this file
};

/// Recognized-word vocabulary. Immutable after construction and safe for
/// concurrent queries.
class Lexicon {
 public:
  /// One word per line; blank lines and '#' comments skipped; entries are
  /// trimmed and lowercased. Throws IoError on an unreadable file and
  /// UsageError when the union is empty.
  static Lexicon load(std::span<const std::filesystem::path> paths);
  static Lexicon from_words(std::span<const std::string> words);

  /// Case-insensitive exact membership; numeric tokens always count.
  bool contains(std::string_view word) const;

  /// Up to k words with similarity >= cutoff, best first, ties broken by
  /// ascending word. Pruned by length and histogram bounds, which never
  /// change the result.
  std::vector<Match> close_matches(std::string_view word, std::size_t k = 3,
                                   double cutoff = 0.6) const;
  std::vector<Match> close_matches(std::string_view word, std::size_t k, double cutoff,
                                   kernels::OverlapKernel kernel) const;

  std::size_t size() const { return words_.size(); }
  /// Sorted ascending.
  const std::vector<std::string>& words() const { return words_; }
  const std::vector<WordlistStats>& manifest() const { return manifest_; }

 private:
  struct Bucket {
    std::size_t length = 0;               // byte length of every word here
    std::vector<std::uint32_t> ids;       // indices into words_
    std::vector<std::uint8_t> histograms; // ids.size() * kernels::kBins
  };

  void build_index();

  std::vector<std::string> words_;
  std::unordered_set<std::string> set_;
  std::vector<Bucket> buckets_;
  std::vector<WordlistStats> manifest_;
};

}  // namespace ocrpost
