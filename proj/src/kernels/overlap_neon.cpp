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

#include <arm_neon.h>

#include "ocrpost/kernels.hpp"

namespace ocrpost::kernels {

void overlap_bounds_neon(std::span<const std::uint8_t, kBins> query,
                         std::span<const std::uint8_t> hists, std::span<std::uint16_t> out) {
  const uint8x16_t q0 = vld1q_u8(query.data());
  const uint8x16_t q1 = vld1q_u8(query.data() + 16);
  const std::uint8_t* h = hists.data();
  for (std::size_t i = 0; i < out.size(); ++i) {
    const uint8x16_t m0 = vminq_u8(q0, vld1q_u8(h + i * kBins));
    const uint8x16_t m1 = vminq_u8(q1, vld1q_u8(h + i * kBins + 16));
    out[i] = static_cast<std::uint16_t>(vaddlvq_u8(m0) + vaddlvq_u8(m1));
  }
}

}  // namespace ocrpost::kernels
