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

// Data-parallel kernels behind the lexicon's fuzzy search.
//
// Each word is summarized by a 32-bin byte histogram. For a query histogram
// q and a word histogram h, sum_b min(q[b], h[b]) bounds the number of
// characters any alignment of the two strings can match, so it bounds the
// gestalt match count M from above. Merging characters into shared bins only
// loosens the bound (min(a1+a2, b1+b2) >= min(a1,b1) + min(a2,b2)).
//
// The scalar kernel is the reference; the SIMD variants must produce
// identical output and are selected at runtime.

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace ocrpost::kernels {

inline constexpr std::size_t kBins = 32;
using Histogram = std::array<std::uint8_t, kBins>;

std::size_t histogram_bin(unsigned char byte);

/// Byte histogram with counts saturating at 255. Callers must not use a
/// saturated histogram as a query.
Histogram char_histogram(std::string_view word);

/// Computes out[i] = sum_b min(query[b], hists[i * kBins + b]).
/// hists.size() must be out.size() * kBins.
using OverlapKernel = void (*)(std::span<const std::uint8_t, kBins> query,
                               std::span<const std::uint8_t> hists, std::span<std::uint16_t> out);

void overlap_bounds_scalar(std::span<const std::uint8_t, kBins> query,
                           std::span<const std::uint8_t> hists, std::span<std::uint16_t> out);
#if defined(__x86_64__) || defined(_M_X64)
void overlap_bounds_avx2(std::span<const std::uint8_t, kBins> query,
                         std::span<const std::uint8_t> hists, std::span<std::uint16_t> out);
#endif
#if defined(__aarch64__)
void overlap_bounds_neon(std::span<const std::uint8_t, kBins> query,
                         std::span<const std::uint8_t> hists, std::span<std::uint16_t> out);
#endif

enum class Isa { Scalar, Avx2, Neon };

const char* isa_name(Isa isa);
bool isa_supported(Isa isa);
/// Best ISA on this CPU, unless OCRPOST_KERNEL=scalar|avx2|neon overrides it.
Isa detected_isa();
/// Kernel for `isa`; falls back to scalar when unsupported.
OverlapKernel overlap_kernel(Isa isa);
OverlapKernel overlap_kernel();

}  // namespace ocrpost::kernels
