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

#include "ocrpost/ngram.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "ocrpost/errors.hpp"
#include "ocrpost/ingest.hpp"
#include "ocrpost/text.hpp"

namespace ocrpost {

NGramModel::NGramModel(int order, double unk_floor) : order_(order), unk_floor_(unk_floor) {
  if (order < 1) throw UsageError("model order must be at least 1");
  tables_.resize(static_cast<std::size_t>(order));
}

std::string NGramModel::key_of(std::span<const WordId> ids) {
  std::string key(ids.size() * sizeof(WordId), '\0');
  std::memcpy(key.data(), ids.data(), key.size());
  return key;
}

std::optional<std::string> NGramModel::key_of(std::span<const std::string> words) const {
  std::vector<WordId> ids;
  ids.reserve(words.size());
  for (const auto& w : words) {
    auto it = ids_.find(w);
    if (it == ids_.end()) return std::nullopt;
    ids.push_back(it->second);
  }
  return key_of(ids);
}

NGramModel::WordId NGramModel::intern(const std::string& word) {
  auto [it, inserted] = ids_.try_emplace(word, static_cast<WordId>(vocab_.size()));
  if (inserted) {
    vocab_.push_back(word);
    if (word == kUnk) unk_id_ = it->second;
    if (word == kBos) bos_id_ = it->second;
    if (word == kEos) eos_id_ = it->second;
  }
  return it->second;
}

bool NGramModel::in_vocab(std::string_view word) const {
  auto it = ids_.find(std::string(word));
  if (it == ids_.end()) return false;
  const WordId id = it->second;
  return tables_[0].count(key_of(std::span<const WordId>(&id, 1))) != 0;
}

double NGramModel::unk_log10() const {
  if (unk_id_ != kNoWord) {
    if (const Entry* e = find_ids(std::span<const WordId>(&unk_id_, 1))) return e->log10_prob;
  }
  return unk_floor_;
}

void NGramModel::set(std::span<const std::string> words, Entry entry) {
  if (words.empty() || words.size() > static_cast<std::size_t>(order_)) {
    throw UsageError("n-gram length outside 1.." + std::to_string(order_));
  }
  std::vector<WordId> ids;
  ids.reserve(words.size());
  for (const auto& w : words) ids.push_back(intern(w));
  tables_[words.size() - 1][key_of(ids)] = entry;
}

const NGramModel::Entry* NGramModel::find(std::span<const std::string> words) const {
  if (words.empty() || words.size() > static_cast<std::size_t>(order_)) return nullptr;
  auto key = key_of(words);
  if (!key) return nullptr;
  const auto& table = tables_[words.size() - 1];
  auto it = table.find(*key);
  return it == table.end() ? nullptr : &it->second;
}

const NGramModel::Entry* NGramModel::find_ids(std::span<const WordId> ids) const {
  const auto& table = tables_[ids.size() - 1];
  auto it = table.find(key_of(ids));
  return it == table.end() ? nullptr : &it->second;
}

NGramModel::WordId NGramModel::id(std::string_view word) const {
  auto it = ids_.find(std::string(word));
  if (it != ids_.end()) return it->second;
  return unk_id_;
}

double NGramModel::logprob(WordId word, std::span<const WordId> context) const {
  const std::size_t keep = std::min(context.size(), static_cast<std::size_t>(order_ - 1));
  context = context.subspan(context.size() - keep);
  std::vector<WordId> seq(context.begin(), context.end());
  seq.push_back(word);

  double acc = 0.0;
  for (std::size_t s = 0; s <= keep; ++s) {
    if (const Entry* e = find_ids(std::span<const WordId>(seq).subspan(s))) {
      return acc + e->log10_prob;
    }
    if (s < keep) {
      const Entry* ctx = find_ids(context.subspan(s));
      if (ctx && ctx->log10_backoff) acc += *ctx->log10_backoff;
    }
  }
  return acc + unk_log10();
}

double NGramModel::logprob(std::string_view word, std::span<const std::string> context) const {
  std::vector<WordId> ctx;
  ctx.reserve(context.size());
  for (const auto& w : context) ctx.push_back(id(w));
  return logprob(id(word), ctx);
}

PerplexityResult NGramModel::perplexity_ids(std::span<const WordId> words) const {
  if (words.empty()) throw std::invalid_argument("perplexity of an empty sequence");
  std::vector<WordId> history;
  history.reserve(words.size() + 2);
  history.push_back(bos_id_ != kNoWord ? bos_id_ : unk_id_);
  PerplexityResult r;
  auto score = [&](WordId w) {
    r.total_log10 += logprob(w, history);
    history.push_back(w);
    ++r.token_count;
  };
  for (WordId w : words) score(w);
  score(eos_id_ != kNoWord ? eos_id_ : unk_id_);
  r.ppl = std::pow(10.0, -r.total_log10 / static_cast<double>(r.token_count));
  return r;
}

PerplexityResult NGramModel::perplexity(std::span<const std::string> words) const {
  std::vector<WordId> ids;
  ids.reserve(words.size());
  for (const auto& w : words) ids.push_back(id(w));
  return perplexity_ids(ids);
}

namespace {

std::string join_words(std::span<const std::string> words) {
  std::string out;
  for (const auto& w : words) {
    if (!out.empty()) out.push_back(' ');
    out += w;
  }
  return out;
}

}  // namespace

std::vector<std::pair<std::vector<std::string>, NGramModel::Entry>> NGramModel::sorted_entries(
    int n) const {
  std::vector<std::pair<std::vector<std::string>, Entry>> out;
  const auto& table = tables_.at(static_cast<std::size_t>(n - 1));
  out.reserve(table.size());
  for (const auto& [key, entry] : table) {
    std::vector<std::string> words(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      WordId id = 0;
      std::memcpy(&id, key.data() + static_cast<std::size_t>(i) * sizeof(WordId), sizeof(WordId));
      words[static_cast<std::size_t>(i)] = vocab_[id];
    }
    out.emplace_back(std::move(words), entry);
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

void NGramModel::validate() const {
  for (int m = 1; m <= order_; ++m) {
    const auto& table = tables_[static_cast<std::size_t>(m - 1)];
    for (const auto& [key, entry] : table) {
      std::vector<WordId> ids(static_cast<std::size_t>(m));
      std::memcpy(ids.data(), key.data(), key.size());
      auto describe = [&] {
        std::vector<std::string> words;
        for (WordId id : ids) words.push_back(vocab_[id]);
        return join_words(words);
      };
      if (entry.log10_prob > 0.0) {
        throw ModelParseError("positive log probability for '" + describe() + "'");
      }
      if (m >= 2) {
        std::span<const WordId> all(ids);
        if (!find_ids(all.first(ids.size() - 1))) {
          throw ModelParseError("n-gram '" + describe() + "' has no prefix entry");
        }
        if (!find_ids(all.subspan(1))) {
          throw ModelParseError("n-gram '" + describe() + "' has no suffix entry");
        }
      }
    }
  }
}

// ---------------------------------------------------------------------------
// ARPA reading and writing

namespace {

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream ss(line);
  std::string f;
  while (ss >> f) out.push_back(f);
  return out;
}

bool parse_double(const std::string& s, double& out) {
  char* end = nullptr;
  out = std::strtod(s.c_str(), &end);
  return end != s.c_str() && *end == '\0';
}

[[noreturn]] void fail(std::size_t line_no, const std::string& what) {
  throw ModelParseError("ARPA line " + std::to_string(line_no) + ": " + what);
}

}  // namespace

NGramModel read_arpa(std::istream& in, double unk_floor) {
  std::string line;
  std::size_t line_no = 0;
  auto next = [&]() -> bool {
    if (!std::getline(in, line)) return false;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
  };

  bool have_data = false;
  while (next()) {
    if (text::trim(line) == "\\data\\") {
      have_data = true;
      break;
    }
  }
  if (!have_data) throw ModelParseError("ARPA file has no \\data\\ header");

  std::map<int, std::size_t> declared;
  while (next()) {
    const std::string t = text::trim(line);
    if (t.empty()) {
      if (declared.empty()) continue;
      break;
    }
    if (t.rfind("ngram ", 0) != 0) fail(line_no, "expected 'ngram N=count' in \\data\\ section");
    const auto eq = t.find('=');
    if (eq == std::string::npos) fail(line_no, "malformed count line");
    int n = 0;
    long long c = -1;
    try {
      n = std::stoi(text::trim(t.substr(6, eq - 6)));
      c = std::stoll(text::trim(t.substr(eq + 1)));
    } catch (const std::exception&) {
      fail(line_no, "malformed count line");
    }
    if (n < 1 || c < 0 || declared.count(n)) fail(line_no, "invalid or repeated ngram count");
    declared[n] = static_cast<std::size_t>(c);
  }
  if (declared.empty()) throw ModelParseError("ARPA \\data\\ section declares no n-gram counts");
  const int max_order = declared.rbegin()->first;
  for (int n = 1; n <= max_order; ++n) {
    if (!declared.count(n)) throw ModelParseError("ARPA counts skip order " + std::to_string(n));
  }

  NGramModel model(max_order, unk_floor);
  std::map<int, std::size_t> seen;
  int section = 0;
  bool ended = false;
  while (next()) {
    const std::string t = text::trim(line);
    if (t.empty()) continue;
    if (t == "\\end\\") {
      ended = true;
      break;
    }
    if (t.front() == '\\') {
      int n = 0;
      if (std::sscanf(t.c_str(), "\\%d-grams:", &n) != 1 || t.back() != ':') {
        fail(line_no, "unknown section header '" + t + "'");
      }
      if (n < 1 || n > max_order) {
        fail(line_no, "section order " + std::to_string(n) + " exceeds declared maximum " +
                          std::to_string(max_order));
      }
      if (seen.count(n)) fail(line_no, "repeated section for order " + std::to_string(n));
      section = n;
      seen[n] = 0;
      continue;
    }
    if (section == 0) fail(line_no, "n-gram entry outside a section");
    const auto fields = split_ws(t);
    const auto n = static_cast<std::size_t>(section);
    if (fields.size() != n + 1 && fields.size() != n + 2) {
      fail(line_no, "expected " + std::to_string(n) + " words for a " + std::to_string(n) +
                        "-gram entry");
    }
    NGramModel::Entry entry;
    if (!parse_double(fields[0], entry.log10_prob)) fail(line_no, "bad probability");
    if (fields.size() == n + 2) {
      if (section == max_order) fail(line_no, "backoff weight on the highest order");
      double bo = 0.0;
      if (!parse_double(fields.back(), bo)) fail(line_no, "bad backoff weight");
      entry.log10_backoff = bo;
    }
    const std::vector<std::string> words(fields.begin() + 1, fields.begin() + 1 + section);
    if (model.find(words)) fail(line_no, "duplicate n-gram '" + join_words(words) + "'");
    model.set(words, entry);
    ++seen[section];
  }
  if (!ended) throw ModelParseError("ARPA file is missing \\end\\");
  for (const auto& [n, c] : declared) {
    const std::size_t got = seen.count(n) ? seen[n] : 0;
    if (got != c) {
      throw ModelParseError("ARPA count mismatch for order " + std::to_string(n) + ": declared " +
                            std::to_string(c) + ", found " + std::to_string(got));
    }
  }
  model.validate();
  return model;
}

NGramModel load_arpa(const std::filesystem::path& path, double unk_floor) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read language model " + path.string());
  return read_arpa(in, unk_floor);
}

namespace {

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  // Avoid "-0.000000".
  if (std::strcmp(buf, "-0.000000") == 0) return "0.000000";
  return buf;
}

}  // namespace

void write_arpa(const NGramModel& model, std::ostream& out) {
  out << "\\data\\\n";
  for (int n = 1; n <= model.order(); ++n) out << "ngram " << n << '=' << model.count(n) << '\n';
  for (int n = 1; n <= model.order(); ++n) {
    out << "\n\\" << n << "-grams:\n";
    for (const auto& [words, entry] : model.sorted_entries(n)) {
      out << fixed6(entry.log10_prob) << '\t' << join_words(words);
      if (entry.log10_backoff && n < model.order()) out << '\t' << fixed6(*entry.log10_backoff);
      out << '\n';
    }
  }
  out << "\n\\end\\\n";
}

void write_arpa(const NGramModel& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  write_arpa(model, out);
  if (!out) throw IoError("error writing " + path.string());
}

// ---------------------------------------------------------------------------
// Training

namespace {

double quantize(double log10_value) { return std::nearbyint(log10_value * 1e6) / 1e6; }

using Gram = std::vector<std::string>;

}  // namespace

NGramModel train_small(std::span<const std::vector<std::string>> sentences,
                       const TrainOptions& options) {
  if (options.order < 1) throw UsageError("model order must be at least 1");
  if (!(options.discount > 0.0 && options.discount < 1.0)) {
    throw UsageError("discount must lie in (0, 1)");
  }
  const auto order = static_cast<std::size_t>(options.order);
  const double d = options.discount;

  // counts[m-1]: m-grams whose last word is a predicted token (never <s>).
  std::vector<std::map<Gram, std::size_t>> counts(order);
  std::size_t used = 0;
  for (const auto& s : sentences) {
    if (s.empty()) continue;
    ++used;
    Gram padded;
    padded.reserve(s.size() + 2);
    padded.emplace_back(kBos);
    padded.insert(padded.end(), s.begin(), s.end());
    padded.emplace_back(kEos);
    for (std::size_t end = 1; end < padded.size(); ++end) {
      for (std::size_t m = 1; m <= order && m <= end + 1; ++m) {
        Gram g(padded.begin() + static_cast<std::ptrdiff_t>(end + 1 - m),
               padded.begin() + static_cast<std::ptrdiff_t>(end + 1));
        ++counts[m - 1][std::move(g)];
      }
    }
  }
  if (used == 0) throw UsageError("training corpus is empty");

  NGramModel model(options.order);
  const std::string unk(kUnk);

  // Unigrams: (c - d) / C for seen words, the rest on <unk>.
  std::size_t total = 0;
  for (const auto& [g, c] : counts[0]) total += c;
  double seen_mass = 0.0;
  for (const auto& [g, c] : counts[0]) {
    const double q = quantize(std::log10((static_cast<double>(c) - d) / static_cast<double>(total)));
    model.set(g, {q, std::nullopt});
    if (g.front() != unk) seen_mass += std::pow(10.0, q);
  }
  const double unk_mass = std::max(1.0 - seen_mass, 1e-12);
  model.set(Gram{unk}, {quantize(std::log10(unk_mass)), std::nullopt});
  model.set(Gram{std::string(kBos)}, {-99.0, std::nullopt});

  for (std::size_t m = 2; m <= order; ++m) {
    // Group m-grams by their (m-1)-word context.
    std::map<Gram, std::vector<std::pair<std::string, std::size_t>>> by_context;
    for (const auto& [g, c] : counts[m - 1]) {
      by_context[Gram(g.begin(), g.end() - 1)].emplace_back(g.back(), c);
    }
    for (const auto& [ctx, successors] : by_context) {
      std::size_t ctx_total = 0;
      for (const auto& [w, c] : successors) ctx_total += c;
      double kept = 0.0;
      double lower = 0.0;
      const Gram shorter(ctx.begin() + 1, ctx.end());
      for (const auto& [w, c] : successors) {
        Gram g = ctx;
        g.push_back(w);
        const double q = quantize(
            std::log10((static_cast<double>(c) - d) / static_cast<double>(ctx_total)));
        kept += std::pow(10.0, q);
        lower += std::pow(10.0, model.logprob(w, shorter));
        model.set(g, {q, std::nullopt});
      }
      const double numerator = 1.0 - kept;
      const double denominator = 1.0 - lower;
      const NGramModel::Entry* ctx_entry = model.find(ctx);
      if (ctx_entry && numerator > 0.0 && denominator > 1e-12) {
        NGramModel::Entry updated = *ctx_entry;
        updated.log10_backoff = quantize(std::log10(numerator / denominator));
        model.set(ctx, updated);
      }
    }
  }
  model.validate();
  return model;
}

std::vector<std::vector<std::string>> corpus_from_lines(std::span<const std::string> lines) {
  std::vector<std::vector<std::string>> out;
  for (const auto& l : lines) {
    const Line tokens = tokenize(l);
    if (tokens.tokens.empty()) continue;
    std::vector<std::string> words;
    words.reserve(tokens.size());
    for (const auto& t : tokens.tokens) words.push_back(t.normalized);
    out.push_back(std::move(words));
  }
  return out;
}

std::vector<std::vector<std::string>> read_corpus(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read corpus " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  const auto lines = text::split_lines(ss.str());
  return corpus_from_lines(lines);
}

}  // namespace ocrpost
