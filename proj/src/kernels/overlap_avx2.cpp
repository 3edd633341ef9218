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

// Compiled with -mavx2; only reached after a runtime CPU check.

#include <immintrin.h>

#include "ocrpost/kernels.hpp"

namespace ocrpost::kernels {

namespace {

inline __m256i lane_sums(__m256i q, const std::uint8_t* h) {
  const __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(h));
  // Four 64-bit partial sums of eight bytes each, every one <= 2040.
  return _mm256_sad_epu8(_mm256_min_epu8(q, v), _mm256_setzero_si256());
}

}  // namespace

void overlap_bounds_avx2(std::span<const std::uint8_t, kBins> query,
                         std::span<const std::uint8_t> hists, std::span<std::uint16_t> out) {
  const __m256i q = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(query.data()));
  const std::size_t n = out.size();
  const std::uint8_t* h = hists.data();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    // Pack four words into 16-bit fields of each 64-bit lane; a full word
    // total is at most 32 * 255 = 8160, so no field ever carries.
    const __m256i s0 = lane_sums(q, h + (i + 0) * kBins);
    const __m256i s1 = _mm256_slli_epi64(lane_sums(q, h + (i + 1) * kBins), 16);
    const __m256i s2 = _mm256_slli_epi64(lane_sums(q, h + (i + 2) * kBins), 32);
    const __m256i s3 = _mm256_slli_epi64(lane_sums(q, h + (i + 3) * kBins), 48);
    const __m256i packed = _mm256_or_si256(_mm256_or_si256(s0, s1), _mm256_or_si256(s2, s3));
    __m128i s = _mm_add_epi64(_mm256_castsi256_si128(packed), _mm256_extracti128_si256(packed, 1));
    s = _mm_add_epi64(s, _mm_unpackhi_epi64(s, s));
    const auto v = static_cast<std::uint64_t>(_mm_cvtsi128_si64(s));
    out[i + 0] = static_cast<std::uint16_t>(v);
    out[i + 1] = static_cast<std::uint16_t>(v >> 16);
    out[i + 2] = static_cast<std::uint16_t>(v >> 32);
    out[i + 3] = static_cast<std::uint16_t>(v >> 48);
  }
  if (i < n) {
    overlap_bounds_scalar(query, hists.subspan(i * kBins), out.subspan(i));
  }
}

}  // namespace ocrpost::kernels
