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

#include "ocrpost/corrector.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <shared_mutex>
#include <thread>
#include <unordered_map>

#include "ocrpost/text.hpp"

namespace ocrpost {

std::vector<std::string> flatten_words(std::span<const std::string> current) {
  std::vector<std::string> words;
  words.reserve(current.size() + 2);
  for (const auto& entry : current) {
    std::size_t start = 0;
    while (start <= entry.size()) {
      std::size_t sp = entry.find(' ', start);
      if (sp == std::string::npos) sp = entry.size();
      if (sp > start) words.emplace_back(entry.substr(start, sp - start));
      start = sp + 1;
    }
  }
  return words;
}

std::vector<std::vector<std::string>> build_variants(std::span<const std::string> current,
                                                     std::size_t index,
                                                     const CandidateSet& candidates) {
  std::vector<std::vector<std::string>> variants;
  variants.reserve(candidates.alternatives.size());
  std::vector<std::string> slots(current.begin(), current.end());
  for (const auto& cand : candidates.alternatives) {
    slots.at(index) = cand.text;
    variants.push_back(flatten_words(slots));
  }
  return variants;
}

namespace {

std::vector<double> score_variants(std::span<const std::vector<std::string>> variants,
                                   const NGramModel& model) {
  std::vector<double> ppl;
  ppl.reserve(variants.size());
  for (const auto& v : variants) ppl.push_back(model.perplexity(v).ppl);
  return ppl;
}

std::size_t argmin_keep_first(std::span<const double> ppl) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < ppl.size(); ++i) {
    if (ppl[i] < ppl[best] * (1.0 - 1e-12)) best = i;
  }
  return best;
}

}  // namespace

std::size_t select_best(std::span<const std::vector<std::string>> variants,
                        const NGramModel& model) {
  if (variants.size() <= 1) return 0;
  const auto ppl = score_variants(variants, model);
  return argmin_keep_first(ppl);
}

std::string restore_case(const CasePattern& pattern, std::string_view replacement) {
  const auto cps = text::decode(replacement);
  std::vector<bool> upper(cps.size(), false);
  switch (pattern.kind) {
    case CaseKind::Lower:
      return std::string(replacement);
    case CaseKind::Upper:
      return text::uppercase(replacement);
    case CaseKind::Title:
      if (!upper.empty()) upper[0] = true;
      break;
    case CaseKind::Mixed: {
      std::size_t letters = 0;
      for (const auto& c : cps) letters += c.value != ' ';
      if (letters == pattern.upper.size()) {
        std::size_t k = 0;
        for (std::size_t i = 0; i < cps.size(); ++i) {
          if (cps[i].value == ' ') continue;
          upper[i] = pattern.upper[k++];
        }
      } else if (!pattern.upper.empty() && pattern.upper[0] && !upper.empty()) {
        upper[0] = true;
      }
      break;
    }
  }
  std::string out;
  out.reserve(replacement.size());
  for (std::size_t i = 0; i < cps.size(); ++i) {
    const char32_t up = text::to_upper(cps[i].value);
    if (upper[i] && up != cps[i].value) {
      text::append_utf8(out, up);
    } else {
      out.append(replacement.substr(cps[i].offset, cps[i].length));
    }
  }
  return out;
}

struct Corrector::Cache {
  std::shared_mutex mutex;
  std::unordered_map<std::string, CandidateSet> sets;
};

Corrector::Corrector(const Lexicon& lexicon, const ConfusionMap& confusions,
                     const NGramModel& model, CorrectorConfig config)
    : lexicon_(lexicon),
      confusions_(confusions),
      model_(model),
      config_(std::move(config)),
      cache_(std::make_unique<Cache>()) {}

Corrector::~Corrector() = default;

const CandidateSet& Corrector::candidates_for(const std::string& normalized) const {
  {
    std::shared_lock lock(cache_->mutex);
    auto it = cache_->sets.find(normalized);
    if (it != cache_->sets.end()) return it->second;
  }
  CandidateSet fresh = generate(normalized, lexicon_, confusions_, config_.generate);
  std::unique_lock lock(cache_->mutex);
  return cache_->sets.try_emplace(normalized, std::move(fresh)).first->second;
}

CorrectedLine Corrector::correct_line(const Line& line) const {
  CorrectedLine out;
  out.line_index = line.index;
  std::vector<std::string> current;
  std::vector<std::string> surfaces;
  current.reserve(line.size());
  surfaces.reserve(line.size());
  for (const auto& t : line.tokens) {
    current.push_back(t.normalized);
    surfaces.push_back(t.surface);
  }

  for (std::size_t i = 0; i < line.size(); ++i) {
    if (config_.suppressed.count({line.index, i})) continue;
    const CandidateSet& cands = candidates_for(line.tokens[i].normalized);
    if (cands.replacement_count() == 0) continue;
    const auto variants = build_variants(current, i, cands);
    const auto ppl = score_variants(variants, model_);
    const std::size_t best = argmin_keep_first(ppl);
    if (best == 0) continue;

    const Candidate& chosen = cands.alternatives[best];
    std::string surface = restore_case(line.tokens[i].case_pattern, chosen.text);
    if (surface == surfaces[i]) continue;
    Edit edit;
    edit.line_index = line.index;
    edit.token_index = i;
    edit.original_surface = line.tokens[i].surface;
    edit.replacement_surface = surface;
    edit.kind = chosen.kind;
    edit.ppl_before = ppl[0];
    edit.ppl_after = ppl[best];
    out.edits.push_back(std::move(edit));
    current[i] = chosen.text;
    surfaces[i] = std::move(surface);
  }
  out.text = out.edits.empty() ? line.detokenize() : line.render(surfaces);
  return out;
}

std::vector<CorrectedLine> Corrector::correct_lines(std::span<const std::string> lines) const {
  std::vector<CorrectedLine> results(lines.size());
  std::vector<std::exception_ptr> failures(lines.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next.fetch_add(1); i < lines.size(); i = next.fetch_add(1)) {
      try {
        results[i] = correct_line(tokenize(lines[i], i));
      } catch (...) {
        failures[i] = std::current_exception();
      }
    }
  };
  const unsigned threads = static_cast<unsigned>(
      std::clamp<std::size_t>(config_.workers, 1, std::max<std::size_t>(lines.size(), 1)));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }
  return results;
}

std::vector<CorrectedLine> Corrector::correct_document(const RawDocument& doc) const {
  const auto lines = rejoin_hyphens(doc).lines();
  return correct_lines(lines);
}

}  // namespace ocrpost
