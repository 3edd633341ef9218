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

// Generated period-register prose with long-s noise, for the desk-scale
// correction benchmark.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace ocrpost::testing {

/// `count` lines of about seven words, wrapped from a stream of generated
/// sentences. Different seeds give disjoint samples of the same domain.
std::vector<std::string> synthetic_lines(std::uint64_t seed, std::size_t count);

/// Every word the grammar can emit, lowercased.
std::vector<std::string> synthetic_vocabulary();

/// Real words that an s→f misread of a vocabulary word can produce.
std::vector<std::string> long_s_distractors();

struct NoisyText {
  std::vector<std::string> lines;
  std::size_t substitutions = 0;
  std::size_t hyphen_splits = 0;
};

/// Each lowercase "s" becomes "f" with probability `p_long_s`; with
/// probability `p_split` a line's last word is broken with a hyphen and its
/// tail moved to the start of the next line.
NoisyText add_long_s_noise(const std::vector<std::string>& clean, std::uint64_t seed,
                           double p_long_s = 0.5, double p_split = 0.05);

}  // namespace ocrpost::testing
