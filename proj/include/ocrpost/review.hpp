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

// Review sessions over a correction ledger: per-edit accept/reject
// decisions persisted as JSON lines, export of the approved text, and the
// HTTP API the review UI talks to.

#include <cstddef>
#include <filesystem>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "ocrpost/candidates.hpp"
#include "ocrpost/ingest.hpp"
#include "ocrpost/ledger.hpp"

namespace ocrpost {

enum class Verdict { Pending, Accepted, Rejected };

const char* verdict_name(Verdict v);
std::optional<Verdict> parse_verdict(std::string_view s);

struct Decision {
  std::size_t line_index = 0;
  std::size_t edit_index = 0;
  Verdict verdict = Verdict::Pending;
  std::string timestamp;  // ISO-8601 UTC; empty until first decided
};

struct ReviewEdit {
  std::size_t token_index = 0;
  std::string original;
  std::string replacement;
  CandidateKind kind = CandidateKind::Similarity;
};

struct ReviewLine {
  Line raw;
  std::string raw_text;
  std::string corrected;
  std::vector<ReviewEdit> edits;
};

/// Recovers a ledger edit's kind from its surfaces: a space means a split,
/// a pure confusion-map substitution means confusion, anything else came
/// from the similarity search.
CandidateKind infer_kind(std::string_view original, std::string_view replacement,
                         const ConfusionMap& map);

class ReviewSession {
 public:
  /// `raw_lines` are hyphen-rejoined here (rejoining is idempotent, so
  /// already-rejoined text is fine). Every ledger row must be reproducible
  /// from its raw line and edits, otherwise LedgerError. Decisions already
  /// recorded in `decisions_path` are replayed; an empty path disables
  /// persistence.
  ReviewSession(std::vector<std::string> raw_lines, std::vector<LedgerRow> rows,
                std::filesystem::path decisions_path, const ConfusionMap& map);

  static ReviewSession open(const std::filesystem::path& ledger, const std::filesystem::path& raw,
                            const std::filesystem::path& decisions_path, const ConfusionMap& map);

  /// Default persistence location: "<ledger>.decisions.jsonl".
  static std::filesystem::path default_decisions_path(const std::filesystem::path& ledger);

  std::size_t line_count() const { return lines_.size(); }
  const ReviewLine& line(std::size_t i) const { return lines_.at(i); }

  /// Persists before returning. Repeating the current verdict is a no-op.
  /// Throws std::out_of_range for an unknown edit.
  Decision decide(std::size_t line_index, std::size_t edit_index, Verdict verdict);
  Decision decision(std::size_t line_index, std::size_t edit_index) const;

  /// Applies accepted and pending edits, reverts rejected ones.
  std::string export_line(std::size_t line_index) const;
  /// All lines, each terminated by '\n'.
  std::string export_text() const;

  nlohmann::json document_json() const;
  nlohmann::json stats_json() const;

 private:
  void persist(const Decision& d) const;
  void replay();
  std::string export_line_locked(std::size_t line_index) const;
  nlohmann::json stats_locked() const;

  std::vector<ReviewLine> lines_;
  std::vector<std::vector<Decision>> decisions_;
  std::filesystem::path decisions_path_;
  std::unique_ptr<std::shared_mutex> mutex_;
};

/// HTTP front end:
///   GET  /api/document
///   POST /api/lines/{i}/edits/{j}/decision   {"verdict": "accepted"|"rejected"|"pending"}
///   GET  /api/export                          text/plain
///   GET  /api/stats
/// CORS headers allow `cors_origin`. When `ui_dir` is set its files are
/// served at /.
class ReviewServer {
 public:
  ReviewServer(ReviewSession& session, std::string cors_origin = "*",
               std::filesystem::path ui_dir = {});
  ~ReviewServer();
  ReviewServer(const ReviewServer&) = delete;
  ReviewServer& operator=(const ReviewServer&) = delete;

  /// Returns the bound port (port 0 picks a free one); throws IoError.
  int bind(const std::string& host, int port);
  /// Blocks until stop() is called.
  void listen();
  void stop();
  void wait_until_ready() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace ocrpost
