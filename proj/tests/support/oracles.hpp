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

// Slow, direct implementations used as test oracles. None of this shares
// code with the library.

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ocrpost::testing {

// Gestalt matching by exhaustive longest-block search. Ties go to the
// block starting earliest in `a`, then earliest in `b`.
inline std::size_t gestalt_matches(std::string_view a, std::string_view b) {
  std::size_t best = 0, bi = 0, bj = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      std::size_t k = 0;
      while (i + k < a.size() && j + k < b.size() && a[i + k] == b[j + k]) ++k;
      if (k > best) {
        best = k;
        bi = i;
        bj = j;
      }
    }
  }
  if (best == 0) return 0;
  return best + gestalt_matches(a.substr(0, bi), b.substr(0, bj)) +
         gestalt_matches(a.substr(bi + best), b.substr(bj + best));
}

inline double gestalt_ratio(std::string_view a, std::string_view b) {
  if (a.empty() && b.empty()) return 1.0;
  return 2.0 * static_cast<double>(gestalt_matches(a, b)) /
         static_cast<double>(a.size() + b.size());
}

// Full-table Levenshtein distance.
template <typename Seq>
std::size_t levenshtein(const Seq& a, const Seq& b) {
  std::vector<std::vector<std::size_t>> d(a.size() + 1, std::vector<std::size_t>(b.size() + 1));
  for (std::size_t i = 0; i <= a.size(); ++i) d[i][0] = i;
  for (std::size_t j = 0; j <= b.size(); ++j) d[0][j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t sub = d[i - 1][j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      d[i][j] = std::min({sub, d[i - 1][j] + 1, d[i][j - 1] + 1});
    }
  }
  return d[a.size()][b.size()];
}

// Backoff model read straight from ARPA text, queried by textbook recursion:
//   P(w | h) = P*(h w)                       if h w is listed
//            = BO(h) + P(w | h minus first)  otherwise
// with P(w | empty) falling back to <unk> or `unk_floor` for unlisted w.
class ArpaOracle {
 public:
  ArpaOracle(const std::string& arpa, double unk_floor) : unk_floor_(unk_floor) {
    std::istringstream in(arpa);
    std::string line;
    int section = 0;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      if (line.rfind("\\", 0) == 0) {
        if (line.find("-grams:") != std::string::npos) section = std::stoi(line.substr(1));
        else section = 0;
        continue;
      }
      if (section == 0) continue;
      std::istringstream fields(line);
      double prob = 0;
      fields >> prob;
      std::vector<std::string> gram(static_cast<std::size_t>(section));
      for (auto& w : gram) fields >> w;
      std::optional<double> bo;
      double b = 0;
      if (fields >> b) bo = b;
      table_[gram] = {prob, bo};
      order_ = std::max(order_, section);
    }
  }

  int order() const { return order_; }

  double logprob(const std::string& w, std::vector<std::string> h) const {
    while (static_cast<int>(h.size()) > order_ - 1) h.erase(h.begin());
    return query(w, h);
  }

  // Whole-sentence score with <s> as context only and </s> scored.
  double sentence_log10(const std::vector<std::string>& words) const {
    std::vector<std::string> seq{"<s>"};
    seq.insert(seq.end(), words.begin(), words.end());
    seq.push_back("</s>");
    double total = 0;
    for (std::size_t i = 1; i < seq.size(); ++i) {
      std::vector<std::string> h(seq.begin(), seq.begin() + static_cast<long>(i));
      total += logprob(seq[i], h);
    }
    return total;
  }

 private:
  double query(const std::string& w, const std::vector<std::string>& h) const {
    std::vector<std::string> gram = h;
    gram.push_back(w);
    for (auto& x : gram) {
      if (!table_.count({x})) x = "<unk>";
    }
    if (auto it = table_.find(gram); it != table_.end()) return it->second.first;
    if (h.empty()) return unk_floor_;
    std::vector<std::string> hist(gram.begin(), gram.end() - 1);
    double bo = 0;
    if (auto it = table_.find(hist); it != table_.end() && it->second.second) {
      bo = *it->second.second;
    }
    return bo + query(w, std::vector<std::string>(h.begin() + 1, h.end()));
  }

  std::map<std::vector<std::string>, std::pair<double, std::optional<double>>> table_;
  int order_ = 0;
  double unk_floor_;
};

}  // namespace ocrpost::testing
