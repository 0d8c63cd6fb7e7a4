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

#include <cmath>

namespace lgbm::simd {
namespace {

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

void matvec_scalar(const double* rows, std::size_t nrows, std::size_t stride,
                   const double* x, std::size_t n, double* out) {
  for (std::size_t r = 0; r < nrows; ++r) out[r] = dot_scalar(rows + r * stride, x, n);
}

void axpby_scalar(double a, double* y, double b, const double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double ay = a * y[i];
    const double bx = b * x[i];
    y[i] = ay + bx;
  }
}

double max_abs_diff_scalar(const double* a, const double* b, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double v = std::fabs(a[i] - b[i]);
    if (v > m) m = v;
  }
  return m;
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{Backend::kScalar, dot_scalar, matvec_scalar, axpby_scalar,
                                 max_abs_diff_scalar};
  return table;
}

}  // namespace lgbm::simd
