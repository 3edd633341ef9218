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

#include <algorithm>
#include <vector>

#include "ocrpost/lexicon.hpp"

namespace ocrpost {

namespace {

struct Block {
  std::size_t a = 0;
  std::size_t b = 0;
  std::size_t size = 0;
};

// Longest common substring of a[alo:ahi] and b[blo:bhi]. Scans a, then b, in
// ascending order and only replaces the best on a strictly longer run, so the
// earliest block wins ties.
Block longest_match(std::string_view a, std::size_t alo, std::size_t ahi, std::string_view b,
                    std::size_t blo, std::size_t bhi, std::vector<std::size_t>& prev,
                    std::vector<std::size_t>& cur) {
  Block best{alo, blo, 0};
  std::fill(prev.begin() + static_cast<std::ptrdiff_t>(blo),
            prev.begin() + static_cast<std::ptrdiff_t>(bhi) + 1, 0);
  for (std::size_t i = alo; i < ahi; ++i) {
    cur[blo] = 0;
    for (std::size_t j = blo; j < bhi; ++j) {
      const std::size_t k = a[i] == b[j] ? prev[j] + 1 : 0;
      cur[j + 1] = k;
      if (k > best.size) best = {i + 1 - k, j + 1 - k, k};
    }
    std::swap(prev, cur);
  }
  return best;
}

}  // namespace

std::size_t matching_characters(std::string_view a, std::string_view b) {
  if (a.empty() || b.empty()) return 0;
  std::vector<std::size_t> prev(b.size() + 1, 0);
  std::vector<std::size_t> cur(b.size() + 1, 0);
  struct Range {
    std::size_t alo, ahi, blo, bhi;
  };
  std::vector<Range> todo{{0, a.size(), 0, b.size()}};
  std::size_t total = 0;
  while (!todo.empty()) {
    const Range r = todo.back();
    todo.pop_back();
    const Block m = longest_match(a, r.alo, r.ahi, b, r.blo, r.bhi, prev, cur);
    if (m.size == 0) continue;
    total += m.size;
    if (r.alo < m.a && r.blo < m.b) todo.push_back({r.alo, m.a, r.blo, m.b});
    if (m.a + m.size < r.ahi && m.b + m.size < r.bhi) {
      todo.push_back({m.a + m.size, r.ahi, m.b + m.size, r.bhi});
    }
  }
  return total;
}

double similarity(std::string_view a, std::string_view b) {
  const std::size_t total = a.size() + b.size();
  if (total == 0) return 1.0;
  return 2.0 * static_cast<double>(matching_characters(a, b)) / static_cast<double>(total);
}

}  // namespace ocrpost
