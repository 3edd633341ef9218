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

// Backoff n-gram language models: ARPA read/write, backoff queries,
// perplexity, and a small absolute-discounting trainer.
//
// All log probabilities are base 10. Perplexity is reported as
// 10^(-total/count); any other base yields the same ranking of sentences,
// which is all the corrector relies on.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace ocrpost {

inline constexpr std::string_view kBos = "<s>";
inline constexpr std::string_view kEos = "</s>";
inline constexpr std::string_view kUnk = "<unk>";
inline constexpr double kDefaultUnkFloor = -7.0;

struct PerplexityResult {
  double ppl = 0.0;
  std::size_t token_count = 0;
  double total_log10 = 0.0;
};

class NGramModel {
 public:
  using WordId = std::uint32_t;
  static constexpr WordId kNoWord = 0xFFFFFFFFu;

  struct Entry {
    double log10_prob = 0.0;
    std::optional<double> log10_backoff;
  };

  explicit NGramModel(int order, double unk_floor = kDefaultUnkFloor);

  int order() const { return order_; }
  std::size_t count(int n) const { return tables_.at(static_cast<std::size_t>(n - 1)).size(); }
  std::size_t vocab_size() const { return count(1); }
  bool in_vocab(std::string_view word) const;

  /// log10 P(<unk>) when the model has an <unk> unigram, else the floor.
  double unk_log10() const;

  /// Inserts or replaces an n-gram (1 <= words.size() <= order).
  void set(std::span<const std::string> words, Entry entry);
  const Entry* find(std::span<const std::string> words) const;

  /// Id of `word`, mapping out-of-vocabulary words to <unk> (or kNoWord
  /// when the model has none).
  WordId id(std::string_view word) const;
  const std::string& word(WordId id) const { return vocab_.at(id); }

  /// Backoff query; only the last order-1 context words are used.
  double logprob(std::string_view word, std::span<const std::string> context) const;
  double logprob(WordId word, std::span<const WordId> context) const;

  /// Scores `words` followed by </s>, starting from the <s> context.
  /// token_count = words.size() + 1. Throws std::invalid_argument when
  /// `words` is empty.
  PerplexityResult perplexity(std::span<const std::string> words) const;
  PerplexityResult perplexity_ids(std::span<const WordId> words) const;

  /// Every n-gram of length m >= 2 must have its (m-1)-prefix and
  /// (m-1)-suffix in the model, and no log probability may exceed 0.
  /// Throws ModelParseError.
  void validate() const;

  /// Entries of order n sorted by their word strings.
  std::vector<std::pair<std::vector<std::string>, Entry>> sorted_entries(int n) const;

 private:
  static std::string key_of(std::span<const WordId> ids);
  std::optional<std::string> key_of(std::span<const std::string> words) const;
  WordId intern(const std::string& word);
  const Entry* find_ids(std::span<const WordId> ids) const;

  int order_;
  double unk_floor_;
  std::vector<std::string> vocab_;
  std::unordered_map<std::string, WordId> ids_;
  WordId unk_id_ = kNoWord;
  WordId bos_id_ = kNoWord;
  WordId eos_id_ = kNoWord;
  // tables_[m-1] maps packed word ids of an m-gram to its entry.
  std::vector<std::unordered_map<std::string, Entry>> tables_;
};

/// Parses an ARPA model; the declared counts must match, orders cannot
/// exceed the declared maximum and n-grams may not repeat. Throws
/// ModelParseError (IoError when the file cannot be read).
NGramModel read_arpa(std::istream& in, double unk_floor = kDefaultUnkFloor);
NGramModel load_arpa(const std::filesystem::path& path, double unk_floor = kDefaultUnkFloor);

/// Writes \data\, then each \n-grams: section in ascending order, then
/// \end\. Values are printed with six decimals.
void write_arpa(const NGramModel& model, std::ostream& out);
void write_arpa(const NGramModel& model, const std::filesystem::path& path);

struct TrainOptions {
  int order = 3;
  double discount = 0.75;
};

/// Absolute discounting with normalized backoff weights. Every sentence is
/// wrapped in <s> ... </s>; the discounted unigram mass goes to <unk>.
/// Parameters are rounded to the six-decimal ARPA grid as they are
/// estimated, so write_arpa/load_arpa round-trips exactly.
NGramModel train_small(std::span<const std::vector<std::string>> sentences,
                       const TrainOptions& options);

/// Reads a corpus file, tokenizing each line the same way the corrector
/// does (lowercased word tokens, punctuation dropped).
std::vector<std::vector<std::string>> read_corpus(const std::filesystem::path& path);
std::vector<std::vector<std::string>> corpus_from_lines(std::span<const std::string> lines);

}  // namespace ocrpost
