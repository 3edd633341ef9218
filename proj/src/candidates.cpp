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

#include "ocrpost/candidates.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "ocrpost/errors.hpp"
#include "ocrpost/text.hpp"

namespace ocrpost {

const char* kind_name(CandidateKind kind) {
  switch (kind) {
    case CandidateKind::Original:
      return "original";
    case CandidateKind::Confusion:
      return "confusion";
    case CandidateKind::Split:
      return "split";
    case CandidateKind::Similarity:
      return "similarity";
  }
  return "original";
}

std::optional<CandidateKind> parse_kind(std::string_view name) {
  for (auto k : {CandidateKind::Original, CandidateKind::Confusion, CandidateKind::Split,
                 CandidateKind::Similarity}) {
    if (name == kind_name(k)) return k;
  }
  return std::nullopt;
}

ConfusionMap ConfusionMap::defaults() {
  ConfusionMap map;
  map.add("f", "s");
  return map;
}

void ConfusionMap::add(std::string_view from, std::string_view to) {
  const std::string src = text::lowercase(from);
  const std::string dst = text::lowercase(to);
  if (text::length(src) != 1 || text::length(dst) != 1) {
    throw UsageError("confusion entries must be single characters: '" + std::string(from) +
                     "' -> '" + std::string(to) + "'");
  }
  if (src == dst) throw UsageError("confusion entry maps '" + src + "' to itself");
  auto& targets = entries_[src];
  if (std::find(targets.begin(), targets.end(), dst) == targets.end()) targets.push_back(dst);
}

void ConfusionMap::set_max_sites(std::size_t n) {
  if (n < 1) throw UsageError("max_sites must be at least 1");
  max_sites_ = n;
}

ConfusionMap ConfusionMap::parse(std::string_view body) {
  ConfusionMap map;
  std::size_t line_no = 0;
  for (const auto& raw : text::split_lines(body)) {
    ++line_no;
    const std::string line = text::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    std::istringstream fields(line);
    std::string from;
    std::string targets;
    std::string extra;
    if (!(fields >> from >> targets) || (fields >> extra)) {
      throw UsageError("confusion map line " + std::to_string(line_no) +
                       ": expected '<char> <char>[,<char>...]'");
    }
    std::size_t start = 0;
    while (start <= targets.size()) {
      std::size_t comma = targets.find(',', start);
      if (comma == std::string::npos) comma = targets.size();
      map.add(from, std::string_view(targets).substr(start, comma - start));
      start = comma + 1;
    }
  }
  return map;
}

ConfusionMap ConfusionMap::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read confusion map " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

bool ConfusionMap::has_sites(std::string_view word) const {
  for (const auto& c : text::decode(word)) {
    if (entries_.count(std::string(word.substr(c.offset, c.length)))) return true;
  }
  return false;
}

std::vector<Candidate> confusion_variants(std::string_view word, const ConfusionMap& map,
                                          const Lexicon& lex) {
  const auto cps = text::decode(word);
  std::vector<std::string> pieces;
  pieces.reserve(cps.size());
  for (const auto& c : cps) pieces.emplace_back(word.substr(c.offset, c.length));

  std::vector<std::size_t> sites;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    if (map.entries().count(pieces[i])) sites.push_back(i);
  }
  if (sites.empty()) return {};

  std::set<std::string> found;
  auto consider = [&](const std::vector<std::string>& parts) {
    std::string candidate;
    for (const auto& p : parts) candidate += p;
    if (candidate != word && lex.contains(candidate)) found.insert(std::move(candidate));
  };

  const std::size_t enumerated = std::min(sites.size(), map.max_sites());
  // Mixed-radix counter: choice 0 keeps the character, choice j >= 1 uses
  // the j-th replacement.
  std::vector<std::size_t> choice(enumerated, 0);
  std::vector<std::string> parts = pieces;
  while (true) {
    std::size_t pos = 0;
    while (pos < enumerated) {
      const auto& targets = map.entries().at(pieces[sites[pos]]);
      if (++choice[pos] <= targets.size()) break;
      choice[pos] = 0;
      ++pos;
    }
    if (pos == enumerated) break;
    for (std::size_t s = 0; s < enumerated; ++s) {
      const std::size_t at = sites[s];
      parts[at] = choice[s] == 0 ? pieces[at] : map.entries().at(pieces[at])[choice[s] - 1];
    }
    consider(parts);
  }

  if (sites.size() > enumerated) {
    // All-sites fallback, once per replacement slot.
    std::size_t widest = 0;
    for (std::size_t at : sites) widest = std::max(widest, map.entries().at(pieces[at]).size());
    for (std::size_t j = 0; j < widest; ++j) {
      std::vector<std::string> all = pieces;
      for (std::size_t at : sites) {
        const auto& targets = map.entries().at(pieces[at]);
        all[at] = targets[std::min(j, targets.size() - 1)];
      }
      consider(all);
    }
  }

  std::vector<Candidate> out;
  out.reserve(found.size());
  for (const auto& w : found) out.push_back({w, CandidateKind::Confusion, std::nullopt});
  return out;
}

std::vector<Candidate> split_variants(std::string_view word, const Lexicon& lex) {
  std::vector<Candidate> out;
  const auto cps = text::decode(word);
  for (std::size_t i = 1; i < cps.size(); ++i) {
    const std::size_t at = cps[i].offset;
    const std::string_view left = word.substr(0, at);
    const std::string_view right = word.substr(at);
    if (lex.contains(left) && lex.contains(right)) {
      out.push_back({std::string(left) + " " + std::string(right), CandidateKind::Split,
                     std::nullopt});
    }
  }
  return out;
}

CandidateSet generate(std::string_view normalized, const Lexicon& lex, const ConfusionMap& map,
                      const GenerateOptions& options) {
  CandidateSet set;
  set.original = std::string(normalized);
  set.alternatives.push_back({set.original, CandidateKind::Original, std::nullopt});

  const bool recognized = lex.contains(normalized);
  if (recognized && !map.has_sites(normalized)) return set;

  std::unordered_set<std::string> seen{set.original};
  auto append = [&](std::vector<Candidate> more) {
    for (auto& c : more) {
      if (seen.insert(c.text).second) set.alternatives.push_back(std::move(c));
    }
  };

  append(confusion_variants(normalized, map, lex));
  if (!recognized) {
    append(split_variants(normalized, lex));
    std::vector<Candidate> similar;
    for (auto& m : lex.close_matches(normalized, options.k, options.cutoff)) {
      similar.push_back({std::move(m.word), CandidateKind::Similarity, m.score});
    }
    append(std::move(similar));
  }
  return set;
}

CandidateSet generate(const Token& token, const Lexicon& lex, const ConfusionMap& map,
                      const GenerateOptions& options) {
  return generate(token.normalized, lex, map, options);
}

}  // namespace ocrpost
