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

#include <cmath>
#include <random>
#include <vector>

#include <doctest.h>

#include "lgbm/cod_cluster.hpp"
#include "lgbm/simd/kernels.hpp"

using namespace lgbm;

namespace {

std::vector<double> random_vec(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<double> v(n);
  for (auto& x : v) x = g(rng);
  return v;
}

// Restores whatever backend was active before the test body.
struct BackendGuard {
  simd::Backend saved = simd::active().backend;
  ~BackendGuard() { simd::set_backend(saved); }
};

}  // namespace

TEST_CASE("scalar kernels: hand values") {
  const auto& k = simd::scalar_kernels();
  const double a[] = {1, 2, 3};
  const double b[] = {4, -5, 6};
  CHECK(k.dot(a, b, 3) == 12.0);
  CHECK(k.dot(a, b, 0) == 0.0);
  CHECK(k.max_abs_diff(a, b, 3) == 7.0);
  CHECK(k.max_abs_diff(a, b, 0) == 0.0);
  double y[] = {1, 1, 1};
  k.axpby(2.0, y, 0.5, a, 3);
  CHECK(y[0] == 2.5);
  CHECK(y[2] == 3.5);
  double out[2];
  const double rows[] = {1, 0, 9, 0, 1, 9};  // stride 3, only 2 columns used
  const double x[] = {7, 8};
  k.matvec(rows, 2, 3, x, 2, out);
  CHECK(out[0] == 7.0);
  CHECK(out[1] == 8.0);
}

TEST_CASE("avx2 kernels agree with the scalar reference") {
  const simd::KernelTable* fast = simd::avx2_kernels();
  if (fast == nullptr || !simd::cpu_has_avx2()) {
    MESSAGE("AVX2 not available; equivalence skipped");
    return;
  }
  const auto& ref = simd::scalar_kernels();
  std::mt19937_64 rng(2024);
  for (std::size_t n = 0; n <= 67; ++n) {
    const auto a = random_vec(n, rng);
    const auto b = random_vec(n, rng);
    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) scale += std::fabs(a[i] * b[i]);
    CHECK(std::fabs(fast->dot(a.data(), b.data(), n) - ref.dot(a.data(), b.data(), n)) <=
          1e-14 * (scale + 1.0));

    // exact: no reassociation in either kernel
    CHECK(fast->max_abs_diff(a.data(), b.data(), n) == ref.max_abs_diff(a.data(), b.data(), n));
    auto y1 = a, y2 = a;
    fast->axpby(0.7, y1.data(), -1.3, b.data(), n);
    ref.axpby(0.7, y2.data(), -1.3, b.data(), n);
    CHECK(y1 == y2);

    const std::size_t nrows = 5, stride = n + 3;
    const auto rows = random_vec(nrows * stride, rng);
    std::vector<double> o1(nrows), o2(nrows);
    fast->matvec(rows.data(), nrows, stride, a.data(), n, o1.data());
    ref.matvec(rows.data(), nrows, stride, a.data(), n, o2.data());
    for (std::size_t r = 0; r < nrows; ++r) {
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) s += std::fabs(rows[r * stride + i] * a[i]);
      CHECK(std::fabs(o1[r] - o2[r]) <= 1e-14 * (s + 1.0));
    }
  }
}

TEST_CASE("max_abs_diff skips NaN the same way in both backends") {
  const double a[] = {0.0, NAN, 1.0, 0.0, 0.0};
  const double b[] = {0.5, 0.0, 0.0, 0.0, 0.25};
  CHECK(simd::scalar_kernels().max_abs_diff(a, b, 5) == 1.0);
  if (const auto* fast = simd::avx2_kernels(); fast && simd::cpu_has_avx2()) {
    CHECK(fast->max_abs_diff(a, b, 5) == 1.0);
  }
}

TEST_CASE("COD distances are identical under both backends") {
  BackendGuard guard;
  std::mt19937_64 rng(5);
  const int d = 19;
  Matrix S(d, d);
  std::normal_distribution<double> g;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j <= i; ++j) S(i, j) = S(j, i) = g(rng);
  }
  REQUIRE(simd::set_backend(simd::Backend::kScalar));
  CHECK(simd::active().backend == simd::Backend::kScalar);
  const Matrix ref = cod_distance_matrix(S);
  if (simd::set_backend(simd::Backend::kAvx2)) {
    CHECK(cod_distance_matrix(S) == ref);
  }
}

TEST_CASE("backend names") {
  CHECK(simd::backend_name(simd::Backend::kScalar) == "scalar");
  CHECK(simd::backend_name(simd::Backend::kAvx2) == "avx2");
}
