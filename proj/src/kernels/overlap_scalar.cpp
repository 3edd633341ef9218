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

#include "ocrpost/kernels.hpp"

namespace ocrpost::kernels {

std::size_t histogram_bin(unsigned char byte) {
  if (byte >= 'a' && byte <= 'z') return byte - 'a';
  if (byte >= 'A' && byte <= 'Z') return byte - 'A';
  if (byte >= '0' && byte <= '9') return 26;
  if (byte == '-' || byte == '\'') return 27;
  if (byte < 0x80) return 28;
  return 29 + byte % 3;
}

Histogram char_histogram(std::string_view word) {
  Histogram h{};
  for (char c : word) {
    auto& slot = h[histogram_bin(static_cast<unsigned char>(c))];
    if (slot != 255) ++slot;
  }
  return h;
}

void overlap_bounds_scalar(std::span<const std::uint8_t, kBins> query,
                           std::span<const std::uint8_t> hists, std::span<std::uint16_t> out) {
  for (std::size_t i = 0; i < out.size(); ++i) {
    const std::uint8_t* h = hists.data() + i * kBins;
    unsigned sum = 0;
    for (std::size_t b = 0; b < kBins; ++b) sum += std::min(query[b], h[b]);
    out[i] = static_cast<std::uint16_t>(sum);
  }
}

}  // namespace ocrpost::kernels
