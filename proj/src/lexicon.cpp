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

#include "ocrpost/lexicon.hpp"

#include <algorithm>
#include <fstream>
#include <map>

#include "ocrpost/errors.hpp"
#include "ocrpost/ingest.hpp"
#include "ocrpost/text.hpp"

namespace ocrpost {

namespace {

constexpr std::size_t kSaturation = 255;

bool has_whitespace(std::string_view w) {
  for (const auto& c : text::decode(w)) {
    if (text::is_space(c.value)) return true;
  }
  return false;
}

// Keeps `best` sorted by (score desc, word asc), capped at k entries.
void offer(std::vector<Match>& best, std::size_t k, const std::string& word, double score) {
  auto before = [](const Match& m, double s, const std::string& w) {
    return m.score > s || (m.score == s && m.word < w);
  };
  auto pos = std::find_if_not(best.begin(), best.end(),
                              [&](const Match& m) { return before(m, score, word); });
  if (static_cast<std::size_t>(pos - best.begin()) >= k) return;
  best.insert(pos, Match{word, score});
  if (best.size() > k) best.pop_back();
}

}  // namespace

Lexicon Lexicon::load(std::span<const std::filesystem::path> paths) {
  std::unordered_set<std::string> all;
  std::vector<WordlistStats> manifest;
  for (const auto& path : paths) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read wordlist " + path.string());
    WordlistStats stats;
    stats.path = path.string();
    std::string line;
    while (std::getline(in, line)) {
      const std::string word = text::trim(line);
      if (word.empty() || word.front() == '#') continue;
      ++stats.lines;
      if (has_whitespace(word)) continue;
      if (all.insert(text::lowercase(word)).second) ++stats.words;
    }
    if (in.bad()) throw IoError("error reading wordlist " + path.string());
    manifest.push_back(std::move(stats));
  }
  if (all.empty()) throw UsageError("lexicon is empty after loading all wordlists");

  Lexicon lex;
  lex.words_.assign(all.begin(), all.end());
  std::sort(lex.words_.begin(), lex.words_.end());
  lex.set_ = std::move(all);
  lex.manifest_ = std::move(manifest);
  lex.build_index();
  return lex;
}

Lexicon Lexicon::from_words(std::span<const std::string> words) {
  Lexicon lex;
  for (const auto& w : words) {
    std::string norm = text::lowercase(text::trim(w));
    if (norm.empty() || has_whitespace(norm)) continue;
    lex.set_.insert(std::move(norm));
  }
  if (lex.set_.empty()) throw UsageError("lexicon is empty");
  lex.words_.assign(lex.set_.begin(), lex.set_.end());
  std::sort(lex.words_.begin(), lex.words_.end());
  lex.manifest_.push_back({"<memory>", words.size(), lex.words_.size()});
  lex.build_index();
  return lex;
}

void Lexicon::build_index() {
  std::map<std::size_t, Bucket> by_length;
  for (std::size_t id = 0; id < words_.size(); ++id) {
    const auto& w = words_[id];
    Bucket& bucket = by_length[w.size()];
    bucket.length = w.size();
    bucket.ids.push_back(static_cast<std::uint32_t>(id));
    kernels::Histogram h{};
    if (w.size() > kSaturation) {
      h.fill(static_cast<std::uint8_t>(kSaturation));  // bound degenerates to the query length
    } else {
      h = kernels::char_histogram(w);
    }
    bucket.histograms.insert(bucket.histograms.end(), h.begin(), h.end());
  }
  buckets_.clear();
  for (auto& [len, bucket] : by_length) buckets_.push_back(std::move(bucket));
}

bool Lexicon::contains(std::string_view word) const {
  if (is_numeric(word)) return true;
  return set_.count(text::lowercase(word)) != 0;
}

std::vector<Match> Lexicon::close_matches(std::string_view word, std::size_t k,
                                          double cutoff) const {
  return close_matches(word, k, cutoff, kernels::overlap_kernel());
}

std::vector<Match> Lexicon::close_matches(std::string_view query, std::size_t k, double cutoff,
                                          kernels::OverlapKernel kernel) const {
  std::vector<Match> best;
  if (k == 0) return best;
  const std::size_t lq = query.size();
  const bool use_histogram = lq <= kSaturation;
  const kernels::Histogram qhist = kernels::char_histogram(query);

  // Visit buckets by decreasing length bound 2*min/(sum); once a bucket's
  // bound drops below the bar, every later bucket's does too.
  auto length_bound = [lq](std::size_t len) {
    return 2.0 * static_cast<double>(std::min(lq, len)) / static_cast<double>(lq + len);
  };
  std::vector<const Bucket*> order;
  order.reserve(buckets_.size());
  for (const auto& b : buckets_) order.push_back(&b);
  std::stable_sort(order.begin(), order.end(), [&](const Bucket* x, const Bucket* y) {
    return length_bound(x->length) > length_bound(y->length);
  });

  auto below_bar = [&](double bound) {
    if (bound < cutoff) return true;
    return best.size() == k && bound < best.back().score;
  };

  std::vector<std::uint16_t> overlap;
  for (const Bucket* bucket : order) {
    if (below_bar(length_bound(bucket->length))) break;
    const std::size_t n = bucket->ids.size();
    const double denom = static_cast<double>(lq + bucket->length);
    if (use_histogram) {
      overlap.resize(n);
      kernel(qhist, bucket->histograms, overlap);
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (use_histogram && below_bar(2.0 * overlap[i] / denom)) continue;
      const std::string& w = words_[bucket->ids[i]];
      const double score = similarity(w, query);
      if (score >= cutoff) offer(best, k, w, score);
    }
  }
  return best;
}

}  // namespace ocrpost
