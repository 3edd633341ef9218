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

#include <cstdlib>
#include <string_view>

#include "ocrpost/kernels.hpp"

namespace ocrpost::kernels {

const char* isa_name(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return "scalar";
    case Isa::Avx2:
      return "avx2";
    case Isa::Neon:
      return "neon";
  }
  return "scalar";
}

bool isa_supported(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return true;
    case Isa::Avx2:
#if defined(OCRPOST_HAVE_AVX2_TU)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Isa::Neon:
#if defined(OCRPOST_HAVE_NEON_TU)
      return true;
#else
      return false;
#endif
  }
  return false;
}

Isa detected_isa() {
  static const Isa isa = [] {
    if (const char* env = std::getenv("OCRPOST_KERNEL")) {
      const std::string_view want(env);
      for (Isa candidate : {Isa::Scalar, Isa::Avx2, Isa::Neon}) {
        if (want == isa_name(candidate) && isa_supported(candidate)) return candidate;
      }
    }
    if (isa_supported(Isa::Avx2)) return Isa::Avx2;
    if (isa_supported(Isa::Neon)) return Isa::Neon;
    return Isa::Scalar;
  }();
  return isa;
}

OverlapKernel overlap_kernel(Isa isa) {
  if (!isa_supported(isa)) return &overlap_bounds_scalar;
  switch (isa) {
#if defined(OCRPOST_HAVE_AVX2_TU)
    case Isa::Avx2:
      return &overlap_bounds_avx2;
#endif
#if defined(OCRPOST_HAVE_NEON_TU)
    case Isa::Neon:
      return &overlap_bounds_neon;
#endif
    default:
      return &overlap_bounds_scalar;
  }
}

OverlapKernel overlap_kernel() { return overlap_kernel(detected_isa()); }

}  // namespace ocrpost::kernels
