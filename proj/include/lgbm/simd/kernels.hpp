// Copyright 2026 The LGBM Authors
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

#include <cstddef>
#include <span>
#include <string_view>

namespace lgbm::simd {

enum class Backend { kScalar, kAvx2 };

/// Table of the data-parallel inner loops used by the simulator and the
/// clustering step. Every backend provides the same entries.
struct KernelTable {
  Backend backend;
  /// sum_i a[i] * b[i]
  double (*dot)(const double* a, const double* b, std::size_t n);
  /// out[r] = <rows[r*stride .. r*stride+n), x> for r in [0, nrows)
  void (*matvec)(const double* rows, std::size_t nrows, std::size_t stride,
                 const double* x, std::size_t n, double* out);
  /// y[i] = a * y[i] + b * x[i]   (no fused multiply-add; bit-exact across backends)
  void (*axpby)(double a, double* y, double b, const double* x, std::size_t n);
  /// max_i |a[i] - b[i]|, 0 for n == 0
  double (*max_abs_diff)(const double* a, const double* b, std::size_t n);
};

const KernelTable& scalar_kernels();

/// nullptr when the binary was built without AVX2 support.
const KernelTable* avx2_kernels();

/// True when the running CPU reports AVX2 and FMA.
bool cpu_has_avx2();

/// Kernels selected at first use: AVX2 when available, unless the
/// environment variable LGBM_SIMD is set to "scalar".
const KernelTable& active();

/// Overrides the active table (tests and the --simd CLI flag). Returns false
/// and leaves the selection unchanged if the backend is not usable here.
bool set_backend(Backend backend);

std::string_view backend_name(Backend backend);

// Convenience wrappers over active().
inline double dot(std::span<const double> a, std::span<const double> b) {
  return active().dot(a.data(), b.data(), a.size());
}

inline double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  return active().max_abs_diff(a.data(), b.data(), a.size());
}

}  // namespace lgbm::simd
