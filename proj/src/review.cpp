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

#include "ocrpost/review.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstring>
#include <ctime>
#include <fstream>
#include <mutex>
#include <sstream>

#include "httplib.h"
#include "ocrpost/errors.hpp"
#include "ocrpost/text.hpp"

namespace ocrpost {

namespace fs = std::filesystem;
using nlohmann::json;

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pending:
      return "pending";
    case Verdict::Accepted:
      return "accepted";
    case Verdict::Rejected:
      return "rejected";
  }
  return "pending";
}

std::optional<Verdict> parse_verdict(std::string_view s) {
  for (auto v : {Verdict::Pending, Verdict::Accepted, Verdict::Rejected}) {
    if (s == verdict_name(v)) return v;
  }
  return std::nullopt;
}

CandidateKind infer_kind(std::string_view original, std::string_view replacement,
                         const ConfusionMap& map) {
  if (replacement.find(' ') != std::string_view::npos) return CandidateKind::Split;
  const std::string from = text::lowercase(original);
  const std::string to = text::lowercase(replacement);
  const auto a = text::decode(from);
  const auto b = text::decode(to);
  if (a.size() != b.size() || from == to) return CandidateKind::Similarity;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].value == b[i].value) continue;
    auto it = map.entries().find(from.substr(a[i].offset, a[i].length));
    if (it == map.entries().end()) return CandidateKind::Similarity;
    const std::string target = to.substr(b[i].offset, b[i].length);
    if (std::find(it->second.begin(), it->second.end(), target) == it->second.end()) {
      return CandidateKind::Similarity;
    }
  }
  return CandidateKind::Confusion;
}

namespace {

std::string now_iso8601() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  const auto ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(now.time_since_epoch()).count() % 1000;
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[40];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%S", &tm);
  char out[48];
  std::snprintf(out, sizeof out, "%s.%03dZ", buf, static_cast<int>(ms));
  return out;
}

std::vector<std::string> surfaces_of(const Line& line) {
  std::vector<std::string> s;
  s.reserve(line.size());
  for (const auto& t : line.tokens) s.push_back(t.surface);
  return s;
}

std::string read_text_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

ReviewSession::ReviewSession(std::vector<std::string> raw_lines, std::vector<LedgerRow> rows,
                             fs::path decisions_path, const ConfusionMap& map)
    : decisions_path_(std::move(decisions_path)), mutex_(std::make_unique<std::shared_mutex>()) {
  raw_lines = rejoin_hyphens(std::move(raw_lines));
  if (raw_lines.size() != rows.size()) {
    throw LedgerError("ledger has " + std::to_string(rows.size()) + " rows but the raw text has " +
                      std::to_string(raw_lines.size()) + " lines");
  }
  lines_.reserve(rows.size());
  decisions_.resize(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    ReviewLine rl;
    rl.raw = tokenize(raw_lines[i], i);
    rl.raw_text = raw_lines[i];
    rl.corrected = rows[i].text;
    auto surfaces = surfaces_of(rl.raw);
    std::size_t cursor = 0;
    for (const auto& [orig, repl] : rows[i].edits) {
      std::size_t t = cursor;
      while (t < rl.raw.size() && rl.raw.tokens[t].surface != orig) ++t;
      if (t == rl.raw.size()) {
        throw LedgerError("line " + std::to_string(i) + ": edit '" + orig +
                          "' does not match any remaining raw token");
      }
      rl.edits.push_back({t, orig, repl, infer_kind(orig, repl, map)});
      surfaces[t] = repl;
      cursor = t + 1;
    }
    if (rl.raw.render(surfaces) != rl.corrected) {
      throw LedgerError("line " + std::to_string(i) +
                        ": corrected text cannot be rebuilt from the raw line and its edits");
    }
    for (std::size_t j = 0; j < rl.edits.size(); ++j) {
      decisions_[i].push_back({i, j, Verdict::Pending, {}});
    }
    lines_.push_back(std::move(rl));
  }
  replay();
}

ReviewSession ReviewSession::open(const fs::path& ledger, const fs::path& raw,
                                  const fs::path& decisions_path, const ConfusionMap& map) {
  std::ifstream in(ledger, std::ios::binary);
  if (!in) throw IoError("cannot read ledger " + ledger.string());
  auto rows = read_ledger(in);
  auto raw_lines = text::split_lines(read_text_file(raw));
  return ReviewSession(std::move(raw_lines), std::move(rows), decisions_path, map);
}

fs::path ReviewSession::default_decisions_path(const fs::path& ledger) {
  return fs::path(ledger.string() + ".decisions.jsonl");
}

void ReviewSession::replay() {
  if (decisions_path_.empty() || !fs::exists(decisions_path_)) return;
  std::ifstream in(decisions_path_, std::ios::binary);
  if (!in) throw IoError("cannot read decisions " + decisions_path_.string());
  std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  std::size_t start = 0;
  std::size_t line_no = 0;
  while (start < content.size()) {
    const std::size_t nl = content.find('\n', start);
    if (nl == std::string::npos) break;  // torn final write: never acknowledged
    ++line_no;
    const std::string_view row(content.data() + start, nl - start);
    start = nl + 1;
    if (text::trim(row).empty()) continue;
    json j = json::parse(row, nullptr, false);
    const auto where = decisions_path_.string() + ":" + std::to_string(line_no);
    if (j.is_discarded() || !j.is_object()) throw LedgerError(where + ": malformed decision");
    const auto li = j.value("line", static_cast<std::size_t>(-1));
    const auto ei = j.value("edit", static_cast<std::size_t>(-1));
    const auto verdict = parse_verdict(j.value("verdict", std::string()));
    if (li >= decisions_.size() || ei >= decisions_[li].size() || !verdict) {
      throw LedgerError(where + ": decision does not match the ledger");
    }
    decisions_[li][ei].verdict = *verdict;
    decisions_[li][ei].timestamp = j.value("timestamp", std::string());
  }
}

void ReviewSession::persist(const Decision& d) const {
  if (decisions_path_.empty()) return;
  const json j = {{"line", d.line_index},
                  {"edit", d.edit_index},
                  {"verdict", verdict_name(d.verdict)},
                  {"timestamp", d.timestamp}};
  const std::string row = j.dump() + "\n";
  const int fd = ::open(decisions_path_.c_str(), O_WRONLY | O_CREAT | O_APPEND | O_CLOEXEC, 0644);
  if (fd < 0) {
    throw IoError("cannot open " + decisions_path_.string() + ": " + std::strerror(errno));
  }
  std::size_t written = 0;
  while (written < row.size()) {
    const ssize_t n = ::write(fd, row.data() + written, row.size() - written);
    if (n < 0) {
      if (errno == EINTR) continue;
      ::close(fd);
      throw IoError("cannot write " + decisions_path_.string() + ": " + std::strerror(errno));
    }
    written += static_cast<std::size_t>(n);
  }
  const bool synced = ::fsync(fd) == 0;
  ::close(fd);
  if (!synced) throw IoError("cannot sync " + decisions_path_.string());
}

Decision ReviewSession::decide(std::size_t line_index, std::size_t edit_index, Verdict verdict) {
  std::unique_lock lock(*mutex_);
  Decision& d = decisions_.at(line_index).at(edit_index);
  if (d.verdict == verdict && !d.timestamp.empty()) return d;
  Decision next = d;
  next.verdict = verdict;
  next.timestamp = now_iso8601();
  persist(next);
  d = next;
  return d;
}

Decision ReviewSession::decision(std::size_t line_index, std::size_t edit_index) const {
  std::shared_lock lock(*mutex_);
  return decisions_.at(line_index).at(edit_index);
}

std::string ReviewSession::export_line_locked(std::size_t i) const {
  const ReviewLine& rl = lines_.at(i);
  auto surfaces = surfaces_of(rl.raw);
  for (std::size_t j = 0; j < rl.edits.size(); ++j) {
    if (decisions_[i][j].verdict != Verdict::Rejected) {
      surfaces[rl.edits[j].token_index] = rl.edits[j].replacement;
    }
  }
  return rl.raw.render(surfaces);
}

std::string ReviewSession::export_line(std::size_t i) const {
  std::shared_lock lock(*mutex_);
  return export_line_locked(i);
}

std::string ReviewSession::export_text() const {
  std::shared_lock lock(*mutex_);
  std::string out;
  for (std::size_t i = 0; i < lines_.size(); ++i) {
    out += export_line_locked(i);
    out.push_back('\n');
  }
  return out;
}

json ReviewSession::stats_locked() const {
  std::size_t edits = 0;
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  std::size_t lines_with_edits = 0;
  for (const auto& per_line : decisions_) {
    edits += per_line.size();
    if (!per_line.empty()) ++lines_with_edits;
    for (const auto& d : per_line) {
      accepted += d.verdict == Verdict::Accepted;
      rejected += d.verdict == Verdict::Rejected;
    }
  }
  return {{"lines", lines_.size()},
          {"lines_with_edits", lines_with_edits},
          {"edits", edits},
          {"accepted", accepted},
          {"rejected", rejected},
          {"pending", edits - accepted - rejected},
          {"decided_fraction",
           edits == 0 ? 0.0 : static_cast<double>(accepted + rejected) / static_cast<double>(edits)}};
}

json ReviewSession::stats_json() const {
  std::shared_lock lock(*mutex_);
  return stats_locked();
}

json ReviewSession::document_json() const {
  std::shared_lock lock(*mutex_);
  json lines = json::array();
  for (std::size_t i = 0; i < lines_.size(); ++i) {
    const ReviewLine& rl = lines_[i];
    // Byte offsets of each replacement inside the corrected text.
    std::vector<std::size_t> corrected_start(rl.raw.size(), 0);
    std::vector<std::string> surfaces = surfaces_of(rl.raw);
    for (const auto& e : rl.edits) surfaces[e.token_index] = e.replacement;
    std::size_t pos = 0;
    for (std::size_t t = 0; t < rl.raw.size(); ++t) {
      pos += rl.raw.interstitial[t].size();
      corrected_start[t] = pos;
      pos += surfaces[t].size();
    }
    json edits = json::array();
    for (std::size_t j = 0; j < rl.edits.size(); ++j) {
      const auto& e = rl.edits[j];
      const auto& d = decisions_[i][j];
      const Token& tok = rl.raw.tokens[e.token_index];
      edits.push_back({{"index", j},
                       {"token_index", e.token_index},
                       {"original", e.original},
                       {"replacement", e.replacement},
                       {"kind", kind_name(e.kind)},
                       {"verdict", verdict_name(d.verdict)},
                       {"timestamp", d.timestamp.empty() ? json() : json(d.timestamp)},
                       {"raw_span", {tok.begin, tok.end}},
                       {"corrected_span",
                        {corrected_start[e.token_index],
                         corrected_start[e.token_index] + e.replacement.size()}}});
    }
    lines.push_back({{"index", i},
                     {"raw", rl.raw_text},
                     {"corrected", rl.corrected},
                     {"edits", std::move(edits)}});
  }
  return {{"lines", std::move(lines)}, {"stats", stats_locked()}};
}

// ---------------------------------------------------------------------------
// HTTP

struct ReviewServer::Impl {
  ReviewSession& session;
  std::string origin;
  httplib::Server server;

  Impl(ReviewSession& s, std::string o) : session(s), origin(std::move(o)) {}
};

ReviewServer::ReviewServer(ReviewSession& session, std::string cors_origin, fs::path ui_dir)
    : impl_(std::make_unique<Impl>(session, std::move(cors_origin))) {
  auto& srv = impl_->server;
  const std::string origin = impl_->origin;
  srv.set_default_headers({{"Access-Control-Allow-Origin", origin},
                           {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"},
                           {"Access-Control-Allow-Headers", "Content-Type"}});
  srv.Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) {
    res.status = 204;
  });

  ReviewSession& s = session;
  auto send_json = [](httplib::Response& res, const json& body, int status = 200) {
    res.status = status;
    res.set_content(body.dump(), "application/json");
  };

  srv.Get("/api/document", [&s, send_json](const httplib::Request&, httplib::Response& res) {
    send_json(res, s.document_json());
  });
  srv.Get("/api/stats", [&s, send_json](const httplib::Request&, httplib::Response& res) {
    send_json(res, s.stats_json());
  });
  srv.Get("/api/export", [&s](const httplib::Request&, httplib::Response& res) {
    res.set_content(s.export_text(), "text/plain; charset=utf-8");
  });
  srv.Post(R"(/api/lines/(\d+)/edits/(\d+)/decision)",
           [&s, send_json](const httplib::Request& req, httplib::Response& res) {
             std::size_t li = 0;
             std::size_t ei = 0;
             try {
               li = std::stoul(req.matches[1].str());
               ei = std::stoul(req.matches[2].str());
             } catch (const std::exception&) {
               send_json(res, {{"error", "bad index"}}, 404);
               return;
             }
             const json body = json::parse(req.body, nullptr, false);
             if (body.is_discarded() || !body.is_object() || !body.contains("verdict") ||
                 !body["verdict"].is_string()) {
               send_json(res, {{"error", "body must be {\"verdict\": ...}"}}, 400);
               return;
             }
             const auto verdict = parse_verdict(body["verdict"].get<std::string>());
             if (!verdict) {
               send_json(res, {{"error", "verdict must be accepted, rejected or pending"}}, 400);
               return;
             }
             try {
               const Decision d = s.decide(li, ei, *verdict);
               send_json(res, {{"line", d.line_index},
                               {"edit", d.edit_index},
                               {"verdict", verdict_name(d.verdict)},
                               {"timestamp", d.timestamp}});
             } catch (const std::out_of_range&) {
               send_json(res, {{"error", "unknown edit"}}, 404);
             } catch (const Error& e) {
               send_json(res, {{"error", e.what()}}, 500);
             }
           });

  if (!ui_dir.empty()) srv.set_mount_point("/", ui_dir.string());
}

ReviewServer::~ReviewServer() { stop(); }

int ReviewServer::bind(const std::string& host, int port) {
  auto& srv = impl_->server;
  if (port == 0) {
    const int bound = srv.bind_to_any_port(host);
    if (bound < 0) throw IoError("cannot bind " + host);
    return bound;
  }
  if (!srv.bind_to_port(host, port)) {
    throw IoError("cannot bind " + host + ":" + std::to_string(port) + " (port in use?)");
  }
  return port;
}

void ReviewServer::listen() { impl_->server.listen_after_bind(); }

void ReviewServer::stop() {
  if (impl_ && impl_->server.is_running()) impl_->server.stop();
}

void ReviewServer::wait_until_ready() const { impl_->server.wait_until_ready(); }

}  // namespace ocrpost
