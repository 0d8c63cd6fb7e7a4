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

#include "lgbm/simd/kernels.hpp"

#if defined(LGBM_HAVE_AVX2)

#include <immintrin.h>

#include <cmath>

namespace lgbm::simd {
namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
  }
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

void matvec_avx2(const double* rows, std::size_t nrows, std::size_t stride, const double* x,
                 std::size_t n, double* out) {
  for (std::size_t r = 0; r < nrows; ++r) out[r] = dot_avx2(rows + r * stride, x, n);
}

void axpby_avx2(double a, double* y, double b, const double* x, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  const __m256d vb = _mm256_set1_pd(b);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d ay = _mm256_mul_pd(va, _mm256_loadu_pd(y + i));
    const __m256d bx = _mm256_mul_pd(vb, _mm256_loadu_pd(x + i));
    _mm256_storeu_pd(y + i, _mm256_add_pd(ay, bx));
  }
  for (; i < n; ++i) {
    const double ay = a * y[i];
    const double bx = b * x[i];
    y[i] = ay + bx;
  }
}

double max_abs_diff_avx2(const double* a, const double* b, std::size_t n) {
  const __m256d sign = _mm256_set1_pd(-0.0);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    // max_pd returns its second operand when the first is NaN, matching the
    // scalar loop which skips NaN differences.
    acc = _mm256_max_pd(_mm256_andnot_pd(sign, d), acc);
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double m = 0.0;
  for (double v : lanes) {
    if (v > m) m = v;
  }
  for (; i < n; ++i) {
    const double v = std::fabs(a[i] - b[i]);
    if (v > m) m = v;
  }
  return m;
}

}  // namespace

const KernelTable* avx2_kernels() {
  static const KernelTable table{Backend::kAvx2, dot_avx2, matvec_avx2, axpby_avx2,
                                 max_abs_diff_avx2};
  return &table;
}

}  // namespace lgbm::simd

#else

namespace lgbm::simd {
const KernelTable* avx2_kernels() { return nullptr; }
}  // namespace lgbm::simd

#endif
