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

#include <doctest.h>

#include "lgbm/precision_est.hpp"
#include "lgbm/simplex.hpp"
#include "oracles/lp_vertex.hpp"

using namespace lgbm;

TEST_CASE("textbook maximization") {
  // max 3x + 5y  s.t.  x <= 4, 2y <= 12, 3x + 2y <= 18
  Matrix A(3, 2);
  A << 1, 0, 0, 2, 3, 2;
  const Vector b = Eigen::Vector3d(4, 12, 18);
  const Vector c = Eigen::Vector2d(-3, -5);
  const auto r = solve_lp(A, b, c);
  REQUIRE(r.status == LpStatus::kOptimal);
  CHECK(r.objective == doctest::Approx(-36.0));
  CHECK(r.x(0) == doctest::Approx(2.0));
  CHECK(r.x(1) == doctest::Approx(6.0));
}

TEST_CASE("negative right-hand sides go through phase one") {
  // min x + y  s.t.  x + y >= 2, x <= 3
  Matrix A(2, 2);
  A << -1, -1, 1, 0;
  const auto r = solve_lp(A, Eigen::Vector2d(-2, 3), Eigen::Vector2d(1, 1));
  REQUIRE(r.status == LpStatus::kOptimal);
  CHECK(r.objective == doctest::Approx(2.0));
  CHECK((A * r.x - Eigen::Vector2d(-2, 3)).maxCoeff() <= 1e-12);
}

TEST_CASE("infeasible and unbounded problems") {
  Matrix A(1, 1);
  A << 1;
  CHECK(solve_lp(A, Vector::Constant(1, -1.0), Vector::Ones(1)).status == LpStatus::kInfeasible);

  Matrix B(1, 2);
  B << 1, -1;
  CHECK(solve_lp(B, Vector::Ones(1), Eigen::Vector2d(-1, 0)).status == LpStatus::kUnbounded);
}

TEST_CASE("Bland's rule terminates on Beale's cycling example") {
  Matrix A(3, 4);
  A << 0.25, -60, -1.0 / 25, 9,
       0.5, -90, -1.0 / 50, 3,
       0, 0, 1, 0;
  const Vector b = Eigen::Vector3d(0, 0, 1);
  Vector c(4);
  c << -0.75, 150, -1.0 / 50, 6;
  const auto r = solve_lp(A, b, c);
  REQUIRE(r.status == LpStatus::kOptimal);
  CHECK(r.objective == doctest::Approx(-0.05));
}

TEST_CASE("shape and option errors") {
  CHECK_THROWS_AS(solve_lp(Matrix::Ones(2, 2), Vector::Ones(3), Vector::Ones(2)),
                  InvalidParameter);
  SimplexOptions tight;
  tight.max_iterations = 1;
  Matrix A(3, 2);
  A << 1, 0, 0, 2, 3, 2;
  const auto r = solve_lp(A, Eigen::Vector3d(4, 12, 18), Eigen::Vector2d(-3, -5), tight);
  CHECK(r.status == LpStatus::kIterationLimit);
}

TEST_CASE("CLIME columns match exhaustive vertex enumeration") {
  std::mt19937_64 rng(31337);
  for (int trial = 0; trial < 40; ++trial) {
    const int K = 2 + trial % 4;
    const Matrix Q = oracle::random_spd(K, rng);
    for (double lambda : {0.05, 0.1, 0.5}) {
      const int k = static_cast<int>(rng() % K);
      ColumnDiagnostics diag;
      const Vector beta = clime_column(Q, k, lambda, &diag);
      const auto ref = oracle::clime_by_vertices(Q, k, lambda);
      REQUIRE(ref.vertices > 0);
      CHECK(std::fabs(beta.lpNorm<1>() - ref.objective) <= 1e-6);
      CHECK(diag.residual <= lambda + 1e-8);
      CHECK(diag.status == LpStatus::kOptimal);
    }
  }
}
