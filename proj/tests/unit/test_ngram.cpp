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

#include <cmath>
#include <random>
#include <sstream>

#include "doctest.h"
#include "ocrpost/errors.hpp"
#include "ocrpost/ngram.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace ocrpost;
using namespace ocrpost::testing;
using V = std::vector<std::string>;

namespace {

NGramModel parse(const std::string& arpa) {
  std::istringstream in(arpa);
  return read_arpa(in);
}

std::string arpa_of(const NGramModel& m) {
  std::ostringstream out;
  write_arpa(m, out);
  return out.str();
}

const char* kUniform4 =
    "\\data\\\nngram 1=4\n\n\\1-grams:\n-0.60206\ta\n-0.60206\tb\n-0.60206\tc\n-0.60206\t</s>\n\n\\end\\\n";

V vocab_of(const NGramModel& m) {
  V out;
  for (const auto& [gram, e] : m.sorted_entries(1)) out.push_back(gram[0]);
  return out;
}

// Sum of P(w | h) over every predictable word plus one unseen word.
double conditional_mass(const NGramModel& m, const V& context) {
  double total = 0;
  for (const auto& w : vocab_of(m)) {
    if (w == kBos || w == kUnk) continue;
    total += std::pow(10.0, m.logprob(w, context));
  }
  return total + std::pow(10.0, m.logprob("never-seen-word", context));
}

}  // namespace

TEST_SUITE("load_arpa") {
  TEST_CASE("uniform unigram model") {
    const NGramModel m = parse(kUniform4);
    CHECK(m.order() == 1);
    CHECK(m.vocab_size() == 4);
    CHECK(m.logprob("b", V{}) == doctest::Approx(-0.60206).epsilon(1e-12));
    CHECK(m.logprob("b", V{"a", "c"}) == doctest::Approx(-0.60206).epsilon(1e-12));
    CHECK(m.perplexity(V{"a", "b", "c"}).ppl == doctest::Approx(4.0).epsilon(1e-5));
  }

  TEST_CASE("bigram fixture, hand-computed values") {
    const NGramModel m = load_arpa(fixture("lm/bigram.arpa"));
    CHECK(m.count(1) == 10);
    CHECK(m.count(2) == 15);
    CHECK(m.in_vocab("guardians"));
    CHECK(m.unk_log10() == -2.0);
    CHECK(m.logprob("said", V{"the"}) == doctest::Approx(-0.40).epsilon(1e-12));
    CHECK(m.logprob("shall", V{"the"}) == doctest::Approx(-1.25).epsilon(1e-12));
    CHECK(m.logprob("zzz", V{"so"}) == doctest::Approx(-2.50).epsilon(1e-12));
    CHECK(m.logprob("court", V{"zzz"}) == doctest::Approx(-1.50).epsilon(1e-12));
    const PerplexityResult r = m.perplexity(V{"the", "said", "guardians"});
    CHECK(r.token_count == 4);
    CHECK(r.total_log10 == doctest::Approx(-2.55).epsilon(1e-12));
    CHECK(r.ppl == doctest::Approx(4.340102636447438).epsilon(1e-12));
  }

  TEST_CASE("trigram fixture, hand-computed values") {
    const NGramModel m = load_arpa(fixture("lm/trigram.arpa"));
    CHECK(m.count(3) == 4);
    CHECK(m.logprob("b", V{"<s>", "a"}) == doctest::Approx(-0.1).epsilon(1e-12));
    CHECK(m.logprob("b", V{"c", "a"}) == doctest::Approx(-0.50).epsilon(1e-12));
    CHECK(m.logprob("a", V{"a", "c"}) == doctest::Approx(-1.05).epsilon(1e-12));
    // context longer than order - 1 is truncated
    CHECK(m.logprob("c", V{"c", "c", "a", "b"}) == m.logprob("c", V{"a", "b"}));
  }

  TEST_CASE("exhaustive agreement with the recursive oracle") {
    for (const char* name : {"lm/bigram.arpa", "lm/trigram.arpa"}) {
      const std::string text = read_file(fixture(name));
      const NGramModel m = parse(text);
      const ArpaOracle oracle(text, kDefaultUnkFloor);
      V words = vocab_of(m);
      words.push_back("oov");
      std::vector<V> contexts{{}};
      for (const auto& a : words) {
        contexts.push_back({a});
        for (const auto& b : words) contexts.push_back({a, b});
      }
      for (const auto& ctx : contexts) {
        for (const auto& w : words) {
          CHECK(m.logprob(w, ctx) == doctest::Approx(oracle.logprob(w, ctx)).epsilon(1e-12));
        }
      }
    }
  }

  TEST_CASE("unk floor applies when the model has no <unk>") {
    std::istringstream in(kUniform4);
    const NGramModel m = read_arpa(in, -5.5);
    CHECK(m.unk_log10() == -5.5);
    CHECK(m.logprob("zzz", V{}) == -5.5);
  }

  TEST_CASE("malformed files") {
    const std::string head = "\\data\\\nngram 1=2\nngram 2=1\n\n\\1-grams:\n-0.3\ta\t-0.1\n-0.3\tb\n\n";
    CHECK_NOTHROW(parse(head + "\\2-grams:\n-0.2\ta b\n\n\\end\\\n"));
    // count mismatch
    CHECK_THROWS_AS(parse("\\data\\\nngram 1=2\nngram 2=5\n\n\\1-grams:\n-0.3\ta\n-0.3\tb\n\n"
                          "\\2-grams:\n-0.2\ta b\n-0.2\tb a\n-0.2\ta a\n-0.2\tb b\n\n\\end\\\n"),
                    ModelParseError);
    // missing header
    CHECK_THROWS_AS(parse("\\1-grams:\n-0.3\ta\n\\end\\\n"), ModelParseError);
    // section above the declared order
    CHECK_THROWS_AS(parse(head + "\\2-grams:\n-0.2\ta b\n\n\\3-grams:\n-0.1\ta b a\n\n\\end\\\n"),
                    ModelParseError);
    // duplicate n-gram
    CHECK_THROWS_AS(parse("\\data\\\nngram 1=2\n\n\\1-grams:\n-0.3\ta\n-0.3\ta\n\n\\end\\\n"),
                    ModelParseError);
    // missing end marker
    CHECK_THROWS_AS(parse(head + "\\2-grams:\n-0.2\ta b\n"), ModelParseError);
    // backoff on the highest order
    CHECK_THROWS_AS(parse(head + "\\2-grams:\n-0.2\ta b\t-0.1\n\n\\end\\\n"), ModelParseError);
    // bigram whose suffix is not a unigram
    CHECK_THROWS_AS(parse(head + "\\2-grams:\n-0.2\ta c\n\n\\end\\\n"), ModelParseError);
    // positive log probability
    CHECK_THROWS_AS(parse("\\data\\\nngram 1=1\n\n\\1-grams:\n0.5\ta\n\n\\end\\\n"), ModelParseError);
    // word count does not match the section order
    CHECK_THROWS_AS(parse(head + "\\2-grams:\n-0.2\ta\n\n\\end\\\n"), ModelParseError);
    CHECK_THROWS_AS(load_arpa("/nonexistent/model.arpa"), IoError);
  }
}

TEST_SUITE("perplexity") {
  TEST_CASE("empty sequence is rejected") {
    const NGramModel m = parse(kUniform4);
    CHECK_THROWS_AS(m.perplexity(V{}), std::invalid_argument);
  }

  TEST_CASE("fixed per-token probability gives a length-independent value") {
    NGramModel m(1);
    for (const char* w : {"x", "y", "</s>"}) m.set(V{w}, {-1.0, std::nullopt});
    V sentence;
    for (int n = 1; n <= 40; ++n) {
      sentence.push_back(n % 2 ? "x" : "y");
      CHECK(m.perplexity(sentence).ppl == doctest::Approx(10.0).epsilon(1e-12));
    }
  }

  TEST_CASE("ordering by perplexity equals ordering by mean negative log probability") {
    const NGramModel m = load_arpa(fixture("lm/bigram.arpa"));
    const V vocab = {"the", "said", "guardians", "shall", "so", "desire", "court", "oov"};
    std::mt19937 rng(4);
    for (int trial = 0; trial < 500; ++trial) {
      V a(1 + rng() % 6), b(1 + rng() % 6);
      for (auto& w : a) w = vocab[rng() % vocab.size()];
      for (auto& w : b) w = vocab[rng() % vocab.size()];
      const auto ra = m.perplexity(a);
      const auto rb = m.perplexity(b);
      const double mean_a = -ra.total_log10 / static_cast<double>(ra.token_count) * std::log(10.0) / std::log(2.0);
      const double mean_b = -rb.total_log10 / static_cast<double>(rb.token_count) * std::log(10.0) / std::log(2.0);
      if (std::abs(mean_a - mean_b) > 1e-9) CHECK((ra.ppl < rb.ppl) == (mean_a < mean_b));
      CHECK(ra.ppl == doctest::Approx(std::pow(10.0, -ra.total_log10 / static_cast<double>(ra.token_count))));
    }
  }

  TEST_CASE("agrees with the oracle sentence score") {
    const std::string text = read_file(fixture("lm/trigram.arpa"));
    const NGramModel m = parse(text);
    const ArpaOracle oracle(text, kDefaultUnkFloor);
    const V vocab = {"a", "b", "c", "d"};
    std::mt19937 rng(6);
    for (int trial = 0; trial < 300; ++trial) {
      V s(1 + rng() % 7);
      for (auto& w : s) w = vocab[rng() % vocab.size()];
      CHECK(m.perplexity(s).total_log10 == doctest::Approx(oracle.sentence_log10(s)).epsilon(1e-12));
    }
  }
}

TEST_SUITE("train_small") {
  TEST_CASE("two-token unigram corpus") {
    const std::vector<V> corpus = {{"a", "b"}};
    const NGramModel m = train_small(corpus, {1, 0.5});
    // counts a=1, b=1, </s>=1 over 3 tokens; each keeps (1 - 0.5) / 3
    CHECK(m.logprob("a", V{}) == doctest::Approx(std::log10(1.0 / 6)).epsilon(1e-5));
    CHECK(m.logprob("</s>", V{}) == doctest::Approx(std::log10(1.0 / 6)).epsilon(1e-5));
    CHECK(m.unk_log10() == doctest::Approx(std::log10(0.5)).epsilon(1e-5));
    CHECK(m.logprob("<s>", V{}) == -99.0);
  }

  TEST_CASE("repeated line, bigram") {
    const std::vector<V> corpus(10, V{"x", "y"});
    const NGramModel m = train_small(corpus, {2, 0.75});
    const double px = (10 - 0.75) / 30.0;
    const double seen = (10 - 0.75) / 10.0;
    const double alpha = (1 - seen) / (1 - px);
    CHECK(m.logprob("y", V{"x"}) == doctest::Approx(std::log10(seen)).epsilon(1e-5));
    CHECK(m.logprob("x", V{"<s>"}) == doctest::Approx(std::log10(seen)).epsilon(1e-5));
    CHECK(m.logprob("x", V{"y"}) == doctest::Approx(std::log10(alpha * px)).epsilon(1e-5));
    CHECK(m.unk_log10() == doctest::Approx(std::log10(1 - 3 * px)).epsilon(1e-5));
  }

  TEST_CASE("distributions sum to one") {
    const auto corpus = read_corpus(fixture("charter/corpus.txt"));
    for (int order : {1, 2, 3}) {
      const NGramModel m = train_small(corpus, {order, 0.75});
      CHECK(conditional_mass(m, V{}) == doctest::Approx(1.0).epsilon(1e-6));
      if (order == 1) continue;
      for (const auto& [gram, e] : m.sorted_entries(order - 1)) {
        if (gram.back() == kEos) continue;
        CHECK(conditional_mass(m, gram) == doctest::Approx(1.0).epsilon(1e-5));
      }
    }
  }

  TEST_CASE("ARPA round trip is exact") {
    const auto corpus = read_corpus(fixture("charter/corpus.txt"));
    const NGramModel m = train_small(corpus, {3, 0.75});
    m.validate();
    const std::string text = arpa_of(m);
    const NGramModel back = parse(text);
    CHECK(arpa_of(back) == text);
    for (int n = 1; n <= 3; ++n) {
      const auto a = m.sorted_entries(n);
      const auto b = back.sorted_entries(n);
      REQUIRE(a.size() == b.size());
      for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].first == b[i].first);
        CHECK(a[i].second.log10_prob == b[i].second.log10_prob);
        CHECK(a[i].second.log10_backoff == b[i].second.log10_backoff);
      }
    }
    const ArpaOracle oracle(text, kDefaultUnkFloor);
    std::mt19937 rng(9);
    const V vocab = vocab_of(m);
    for (int q = 0; q < 100; ++q) {
      V s(1 + rng() % 9);
      for (auto& w : s) w = vocab[rng() % vocab.size()];
      CHECK(back.perplexity(s).total_log10 == doctest::Approx(m.perplexity(s).total_log10).epsilon(1e-12));
      CHECK(m.perplexity(s).total_log10 == doctest::Approx(oracle.sentence_log10(s)).epsilon(1e-9));
    }
  }

  TEST_CASE("ARPA layout") {
    const NGramModel m = train_small(std::vector<V>{{"a", "b"}, {"b"}}, {2, 0.5});
    const std::string text = arpa_of(m);
    CHECK(text.rfind("\\data\\\nngram 1=", 0) == 0);
    CHECK(text.find("\\1-grams:") < text.find("\\2-grams:"));
    CHECK(text.find("\\end\\") != std::string::npos);
    CHECK(text.find("-0.") != std::string::npos);
    std::istringstream lines(text);
    for (std::string line; std::getline(lines, line);) {
      if (line.empty() || line[0] == '\\' || line.rfind("ngram", 0) == 0) continue;
      const auto tab = line.find('\t');
      REQUIRE(tab != std::string::npos);
      const auto dot = line.find('.');
      CHECK(tab - dot - 1 == 6);
    }
  }

  TEST_CASE("argument and corpus errors") {
    CHECK_THROWS_AS(train_small(std::vector<V>{}, {2, 0.5}), UsageError);
    CHECK_THROWS_AS(train_small(std::vector<V>{{"a"}}, {0, 0.5}), UsageError);
    CHECK_THROWS_AS(train_small(std::vector<V>{{"a"}}, {2, 1.0}), UsageError);
    CHECK_THROWS_AS(read_corpus("/nonexistent/corpus.txt"), IoError);
    CHECK(corpus_from_lines(V{"The Said,  court", "", " ; "}) == std::vector<V>{{"the", "said", "court"}});
  }
}
