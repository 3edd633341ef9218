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

#include "commands.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "ocrpost/candidates.hpp"
#include "ocrpost/corrector.hpp"
#include "ocrpost/errors.hpp"
#include "ocrpost/evalkit.hpp"
#include "ocrpost/ingest.hpp"
#include "ocrpost/kernels.hpp"
#include "ocrpost/ledger.hpp"
#include "ocrpost/lexicon.hpp"
#include "ocrpost/ngram.hpp"
#include "ocrpost/review.hpp"
#include "ocrpost/text.hpp"

namespace ocrpost::cli {

namespace fs = std::filesystem;

namespace {

struct RunConfig {
  std::string input;
  std::string output;
  int from_page = 0;
  int to_page = 0;
  std::vector<std::string> positional;
  std::vector<std::string> lexicons;
  std::string lm;
  std::string confusion;
  std::size_t k = 3;
  double cutoff = 0.6;
  std::size_t max_sites = ConfusionMap::kDefaultMaxSites;
  std::string arrow = "ascii";
  unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  std::string ocr_command;
  std::string raw_out;
  double unk_floor = kDefaultUnkFloor;
  bool manifest = false;
  bool quiet = false;
};

struct Progress {
  bool quiet = false;
  template <typename... Args>
  void operator()(const Args&... args) const {
    if (quiet) return;
    std::cerr << "[ocrpost] ";
    (std::cerr << ... << args);
    std::cerr << '\n';
  }
};

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file_atomic(const fs::path& path, const std::string& body) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    out << body;
    if (!out) throw IoError("error writing " + path.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw IoError("cannot replace " + path.string() + ": " + ec.message());
}

ConfusionMap confusion_from(const std::string& path, std::size_t max_sites) {
  ConfusionMap map = path.empty() ? ConfusionMap::defaults() : ConfusionMap::load(path);
  map.set_max_sites(max_sites);
  return map;
}

Lexicon lexicon_from(const std::vector<std::string>& paths) {
  std::vector<fs::path> p(paths.begin(), paths.end());
  return Lexicon::load(p);
}

std::string describe_confusions(const ConfusionMap& map) {
  std::string out;
  for (const auto& [from, targets] : map.entries()) {
    if (!out.empty()) out += ' ';
    out += from + "->";
    for (std::size_t i = 0; i < targets.size(); ++i) out += (i ? "," : "") + targets[i];
  }
  return out;
}

int do_run(RunConfig cfg) {
  const Progress progress{cfg.quiet};
  if (!cfg.positional.empty()) {
    if (cfg.positional.size() != 2 && cfg.positional.size() != 4) {
      throw UsageError("positional form is: run INPUT OUT [FIRST LAST]");
    }
    if (!cfg.input.empty() || !cfg.output.empty()) {
      throw UsageError("give INPUT/OUT either positionally or with --input/--out, not both");
    }
    cfg.input = cfg.positional[0];
    cfg.output = cfg.positional[1];
    if (cfg.positional.size() == 4) {
      if (cfg.from_page || cfg.to_page) throw UsageError("page range given twice");
      try {
        cfg.from_page = std::stoi(cfg.positional[2]);
        cfg.to_page = std::stoi(cfg.positional[3]);
      } catch (const std::exception&) {
        throw UsageError("FIRST and LAST must be page numbers");
      }
    }
  }
  if (cfg.input.empty() || cfg.output.empty()) throw UsageError("--input and --out are required");
  if (cfg.lexicons.empty()) throw UsageError("at least one --lexicon is required");
  if (cfg.lm.empty()) throw UsageError("--lm is required");
  if ((cfg.from_page != 0) != (cfg.to_page != 0)) {
    throw UsageError("--from-page and --to-page must be given together");
  }
  if (cfg.arrow != "ascii" && cfg.arrow != "unicode") {
    throw UsageError("--arrow must be ascii or unicode");
  }
  if (cfg.ocr_command.empty()) {
    if (const char* env = std::getenv("OCRPOST_OCR_CMD")) cfg.ocr_command = env;
  }

  const Lexicon lexicon = lexicon_from(cfg.lexicons);
  progress("lexicon: ", lexicon.size(), " words from ", cfg.lexicons.size(), " file(s); kernel ",
           kernels::isa_name(kernels::detected_isa()));
  const NGramModel model = load_arpa(cfg.lm, cfg.unk_floor);
  progress("language model: order ", model.order(), ", ", model.vocab_size(), " unigrams");
  const ConfusionMap confusions = confusion_from(cfg.confusion, cfg.max_sites);

  AcquireOptions acquire_opts;
  if (cfg.from_page) acquire_opts.pages = PageRange{cfg.from_page, cfg.to_page};
  acquire_opts.ocr_command = cfg.ocr_command;
  acquire_opts.workers = cfg.workers;
  const RawDocument doc = rejoin_hyphens(acquire(cfg.input, acquire_opts));
  progress("acquired ", doc.pages.size(), " page(s), ", doc.line_count(), " line(s)");

  CorrectorConfig ccfg;
  ccfg.generate.k = cfg.k;
  ccfg.generate.cutoff = cfg.cutoff;
  ccfg.workers = cfg.workers;
  const Corrector corrector(lexicon, confusions, model, ccfg);
  const auto corrected = corrector.correct_document(doc);

  std::size_t edits = 0;
  std::size_t edited_lines = 0;
  for (const auto& l : corrected) {
    edits += l.edits.size();
    edited_lines += !l.edits.empty();
  }
  progress("corrected ", corrected.size(), " line(s): ", edits, " edit(s) on ", edited_lines,
           " line(s)");

  std::vector<std::string> manifest;
  if (cfg.manifest) {
    manifest.push_back("input=" + cfg.input);
    manifest.push_back("output=" + cfg.output);
    manifest.push_back("pages=" + (cfg.from_page ? std::to_string(cfg.from_page) + "-" +
                                                       std::to_string(cfg.to_page)
                                                 : std::string("all")));
    for (const auto& l : cfg.lexicons) manifest.push_back("lexicon=" + l);
    manifest.push_back("lm=" + cfg.lm);
    manifest.push_back("confusion=" + (cfg.confusion.empty() ? std::string("default") : cfg.confusion) +
                       " (" + describe_confusions(confusions) + ")");
    manifest.push_back("k=" + std::to_string(cfg.k));
    std::ostringstream cut;
    cut << cfg.cutoff;
    manifest.push_back("cutoff=" + cut.str());
    manifest.push_back("max_sites=" + std::to_string(cfg.max_sites));
    manifest.push_back("arrow=" + cfg.arrow);
    manifest.push_back("workers=" + std::to_string(cfg.workers));
    manifest.push_back("ocr_command=" + cfg.ocr_command);
  }

  std::ostringstream tsv;
  write_ledger(tsv, corrected, cfg.arrow == "unicode" ? ArrowStyle::Unicode : ArrowStyle::Ascii,
               manifest);
  write_file_atomic(cfg.output, tsv.str());
  if (!cfg.raw_out.empty()) {
    std::string raw;
    for (const auto& l : doc.lines()) raw += l + "\n";
    write_file_atomic(cfg.raw_out, raw);
  }
  progress("wrote ", cfg.output);
  return kOk;
}

std::vector<std::string> hypothesis_lines(const std::string& path) {
  if (text::lowercase(fs::path(path).extension().string()) == ".tsv") {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path);
    std::vector<std::string> out;
    for (auto& row : read_ledger(in)) out.push_back(std::move(row.text));
    return out;
  }
  return text::split_lines(read_file(path));
}

int do_eval(const std::string& raw, const std::string& hyp, const std::string& ref,
            bool ignore_case, bool as_json) {
  const auto raw_lines = text::split_lines(read_file(raw));
  const auto hyp_lines = hypothesis_lines(hyp);
  const auto ref_lines = text::split_lines(read_file(ref));
  const EvalReport r = evaluate(raw_lines, hyp_lines, ref_lines, {ignore_case});
  if (as_json) {
    std::cout << to_json(r).dump(2) << '\n';
    return kOk;
  }
  std::cout << "lines\t" << r.lines << '\n'
            << "wer_before\t" << r.wer_before << '\n'
            << "wer_after\t" << r.wer_after << '\n'
            << "cer_before\t" << r.cer_before << '\n'
            << "cer_after\t" << r.cer_after << '\n'
            << "errors_total\t" << r.errors_total << '\n'
            << "errors_fixed\t" << r.errors_fixed << '\n'
            << "correction_rate\t"
            << (r.correction_rate ? std::to_string(*r.correction_rate) : std::string("null"))
            << '\n'
            << "lines_with_edits_fraction\t" << r.lines_with_edits_fraction << '\n';
  return kOk;
}

int do_train(const std::string& corpus, int order, double discount, const std::string& out,
             bool quiet) {
  const auto sentences = read_corpus(corpus);
  const NGramModel model = train_small(sentences, {order, discount});
  std::ostringstream arpa;
  write_arpa(model, arpa);
  write_file_atomic(out, arpa.str());
  Progress{quiet}("trained order-", order, " model on ", sentences.size(), " sentence(s): ",
                  model.vocab_size(), " unigrams -> ", out);
  return kOk;
}

int do_candidates(const std::string& word, const std::vector<std::string>& lexicons,
                  const std::string& confusion, std::size_t k, double cutoff,
                  std::size_t max_sites) {
  const Lexicon lexicon = lexicon_from(lexicons);
  const ConfusionMap map = confusion_from(confusion, max_sites);
  const std::string normalized = text::lowercase(word);
  const CandidateSet set = generate(normalized, lexicon, map, {k, cutoff});
  nlohmann::json j;
  j["word"] = normalized;
  j["recognized"] = lexicon.contains(normalized);
  j["replacements"] = set.replacement_count();
  auto& list = j["candidates"] = nlohmann::json::array();
  for (const auto& c : set.alternatives) {
    nlohmann::json item = {{"text", c.text}, {"kind", kind_name(c.kind)}};
    if (c.score) item["score"] = *c.score;
    list.push_back(std::move(item));
  }
  std::cout << j.dump(2) << '\n';
  return kOk;
}

int do_serve(const std::string& ledger, const std::string& raw, const std::string& decisions,
             const std::string& host, int port, const std::string& ui_dir,
             const std::string& confusion, const std::string& origin, bool quiet) {
  const ConfusionMap map = confusion_from(confusion, ConfusionMap::kDefaultMaxSites);
  const fs::path decisions_path =
      decisions.empty() ? ReviewSession::default_decisions_path(ledger) : fs::path(decisions);
  ReviewSession session = ReviewSession::open(ledger, raw, decisions_path, map);
  ReviewServer server(session, origin, ui_dir);
  const int bound = server.bind(host, port);
  Progress{quiet}("reviewing ", session.line_count(), " line(s) at http://", host, ":", bound,
                  "/ (decisions: ", decisions_path.string(), ")");
  server.listen();
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ocrpost: post-OCR correction for historical documents"};
  app.require_subcommand(1);

  RunConfig run;
  auto* run_cmd = app.add_subcommand("run", "Correct OCR text and write the two-column TSV ledger");
  run_cmd->add_option("args", run.positional, "Positional form: INPUT OUT [FIRST LAST]");
  run_cmd->add_option("--input", run.input, "Text file, or PDF rendered through --ocr-cmd");
  run_cmd->add_option("--out", run.output, "Output TSV path");
  run_cmd->add_option("--from-page", run.from_page, "First page (PDF input)");
  run_cmd->add_option("--to-page", run.to_page, "Last page, inclusive (PDF input)");
  run_cmd->add_option("--lexicon", run.lexicons, "Wordlist file (repeatable)");
  run_cmd->add_option("--lm", run.lm, "ARPA language model");
  run_cmd->add_option("--confusion", run.confusion, "Confusion map file (default f->s)");
  run_cmd->add_option("-k,--k", run.k, "Closest matches per unrecognized word")->capture_default_str();
  run_cmd->add_option("--cutoff", run.cutoff, "Similarity cutoff in [0,1]")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  run_cmd->add_option("--max-sites", run.max_sites, "Confusion sites enumerated per word")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  run_cmd->add_option("--arrow", run.arrow, "Edit arrow style: ascii or unicode")->capture_default_str();
  run_cmd->add_option("--workers", run.workers, "Worker threads")->check(CLI::PositiveNumber);
  run_cmd->add_option("--ocr-cmd", run.ocr_command,
                      "OCR command template with {input} {page} [{output}] (env OCRPOST_OCR_CMD)");
  run_cmd->add_option("--raw-out", run.raw_out, "Also write the rejoined raw text here");
  run_cmd->add_option("--unk-floor", run.unk_floor, "log10 probability for OOV words without <unk>")
      ->capture_default_str();
  run_cmd->add_flag("--manifest", run.manifest, "Echo the configuration as header comments");
  run_cmd->add_flag("-q,--quiet", run.quiet, "No progress output");

  std::string eval_raw, eval_hyp, eval_ref;
  bool eval_ignore_case = false;
  bool eval_json = false;
  auto* eval_cmd = app.add_subcommand("eval", "WER/CER and correction rate against a reference");
  eval_cmd->add_option("--raw", eval_raw, "Raw OCR text")->required();
  eval_cmd->add_option("--hyp", eval_hyp, "Corrected text (.tsv ledgers use column 1)")->required();
  eval_cmd->add_option("--ref", eval_ref, "Reference transcription")->required();
  eval_cmd->add_flag("--ignore-case", eval_ignore_case);
  eval_cmd->add_flag("--json", eval_json);

  std::string corpus, train_out;
  int train_order = 3;
  double discount = 0.75;
  bool train_quiet = false;
  auto* train_cmd = app.add_subcommand("train-lm", "Train a small absolute-discounting ARPA model");
  train_cmd->add_option("--corpus", corpus, "One sentence per line")->required();
  train_cmd->add_option("--order", train_order)->check(CLI::PositiveNumber)->capture_default_str();
  train_cmd->add_option("--discount", discount)->capture_default_str();
  train_cmd->add_option("--out", train_out, "Output ARPA path")->required();
  train_cmd->add_flag("-q,--quiet", train_quiet);

  std::string cand_word, cand_confusion;
  std::vector<std::string> cand_lexicons;
  std::size_t cand_k = 3;
  double cand_cutoff = 0.6;
  std::size_t cand_sites = ConfusionMap::kDefaultMaxSites;
  auto* cand_cmd = app.add_subcommand("candidates", "Print a word's candidate set as JSON");
  cand_cmd->add_option("word", cand_word)->required();
  cand_cmd->add_option("--lexicon", cand_lexicons)->required();
  cand_cmd->add_option("--confusion", cand_confusion);
  cand_cmd->add_option("-k,--k", cand_k)->capture_default_str();
  cand_cmd->add_option("--cutoff", cand_cutoff)->check(CLI::Range(0.0, 1.0))->capture_default_str();
  cand_cmd->add_option("--max-sites", cand_sites)->check(CLI::PositiveNumber)->capture_default_str();

  std::string srv_ledger, srv_raw, srv_decisions, srv_ui, srv_confusion;
  std::string srv_host = "127.0.0.1";
  std::string srv_origin = "*";
  int srv_port = 8080;
  bool srv_quiet = false;
  auto* serve_cmd = app.add_subcommand("serve", "Serve a ledger to the review UI");
  serve_cmd->add_option("--ledger", srv_ledger, "TSV written by run")->required();
  serve_cmd->add_option("--raw", srv_raw, "Raw OCR text the ledger was produced from")->required();
  serve_cmd->add_option("--decisions", srv_decisions, "Decision log (default <ledger>.decisions.jsonl)");
  serve_cmd->add_option("--host", srv_host)->capture_default_str();
  serve_cmd->add_option("--port", srv_port)->capture_default_str();
  serve_cmd->add_option("--ui-dir", srv_ui, "Static files of the review UI");
  serve_cmd->add_option("--confusion", srv_confusion, "Confusion map used for edit kinds");
  serve_cmd->add_option("--cors-origin", srv_origin)->capture_default_str();
  serve_cmd->add_flag("-q,--quiet", srv_quiet);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (run_cmd->parsed()) return do_run(run);
    if (eval_cmd->parsed()) {
      return do_eval(eval_raw, eval_hyp, eval_ref, eval_ignore_case, eval_json);
    }
    if (train_cmd->parsed()) return do_train(corpus, train_order, discount, train_out, train_quiet);
    if (cand_cmd->parsed()) {
      return do_candidates(cand_word, cand_lexicons, cand_confusion, cand_k, cand_cutoff,
                           cand_sites);
    }
    if (serve_cmd->parsed()) {
      return do_serve(srv_ledger, srv_raw, srv_decisions, srv_host, srv_port, srv_ui,
                      srv_confusion, srv_origin, srv_quiet);
    }
  } catch (const UsageError& e) {
    std::cerr << "ocrpost: " << e.what() << "\n";
    for (auto* sub : app.get_subcommands()) std::cerr << sub->help();
    return kUsage;
  } catch (const OcrError& e) {
    std::cerr << "ocrpost: " << e.what() << "\n";
    return kOcr;
  } catch (const ModelParseError& e) {
    std::cerr << "ocrpost: " << e.what() << "\n";
    return kModelParse;
  } catch (const Error& e) {
    std::cerr << "ocrpost: " << e.what() << "\n";
    return kIo;
  }
  return kUsage;
}

}  // namespace ocrpost::cli
