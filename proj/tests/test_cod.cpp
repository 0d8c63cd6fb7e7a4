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

#include <algorithm>
#include <cmath>
#include <random>

#include <doctest.h>

#include "lgbm/bench.hpp"
#include "lgbm/cod_cluster.hpp"
#include "lgbm/model_gen.hpp"

using namespace lgbm;

namespace {

Matrix random_symmetric(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Matrix S(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j <= i; ++j) S(i, j) = S(j, i) = g(rng);
  }
  return S;
}

BlockModel g3_model(std::uint64_t seed, int d, int K) {
  Rng rng(seed);
  const auto g = scenario_graph("G3");
  const auto graph = gen_erdos_renyi_graph(K, g.prob, g.c, g.c1, rng);
  return build_block_model(graph, build_assignment(d, K), 0.25, 0.5, rng);
}

}  // namespace

TEST_CASE("row distance") {
  Matrix S(3, 3);
  S << 0, 1, 2, 1, 0, 4, 2, 4, 0;
  CHECK(cod_distance(S, 0, 1) == 2.0);
  CHECK(cod_distance(S, 1, 0) == 2.0);

  Matrix same = Matrix::Ones(4, 4);
  CHECK(cod_distance(same, 1, 3) == 0.0);

  CHECK_THROWS_AS(cod_distance(Matrix::Zero(2, 2), 0, 1), InvalidParameter);
  CHECK_THROWS_AS(cod_distance(S, 1, 1), InvalidParameter);

  std::mt19937_64 rng(1);
  const Matrix R = random_symmetric(9, rng);
  const Matrix D = cod_distance_matrix(R);
  CHECK(D == D.transpose());
  CHECK(D.diagonal().isZero());
  for (int j = 0; j < 9; ++j) {
    for (int jp = j + 1; jp < 9; ++jp) CHECK(D(j, jp) == cod_distance(R, j, jp));
  }
}

TEST_CASE("threshold endpoints") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix S = random_symmetric(10, rng);
    const Matrix D = cod_distance_matrix(S);
    CHECK(cod_cluster(S, D.maxCoeff()).num_groups() == 1);
    CHECK(cod_cluster(S, 0.0).num_groups() == 10);
  }
  CHECK_THROWS_AS(cod_cluster(Matrix::Zero(4, 4), -1.0), InvalidParameter);
  CHECK(cod_cluster(Matrix::Zero(1, 1), 0.0).num_groups() == 1);
  CHECK(cod_cluster(Matrix::Identity(2, 2), 0.0).num_groups() == 1);
}

TEST_CASE("output is a partition for any matrix and threshold") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 3.0);
  for (int trial = 0; trial < 200; ++trial) {
    const int d = 3 + static_cast<int>(rng() % 15);
    const Matrix S = random_symmetric(d, rng);
    const Partition p = cod_cluster(S, u(rng));  // validates disjoint cover itself
    int covered = 0;
    for (const auto& g : p.groups()) covered += static_cast<int>(g.size());
    CHECK(covered == d);
    CHECK(cod_cluster(S, 0.7) == cod_cluster(S, 0.7));
  }
}

TEST_CASE("peeling follows the anchors") {
  // codes 0,1 identical, 2,3 identical, 4 far from everyone
  Matrix S(5, 5);
  S << 1.0, 1.0, 0.0, 0.0, 5.0,
       1.0, 1.0, 0.0, 0.0, 5.0,
       0.0, 0.0, 2.0, 2.0, -5.0,
       0.0, 0.0, 2.0, 2.0, -5.0,
       5.0, 5.0, -5.0, -5.0, 9.0;
  const Partition p = cod_cluster(S, 0.5);
  CHECK(p.num_groups() == 3);
  CHECK(p.group(0) == std::vector<int>{0, 1});  // lexicographically first tied pair
  CHECK(p.group(1) == std::vector<int>{2, 3});
  CHECK(p.group(2) == std::vector<int>{4});
}

TEST_CASE("noiseless block matrices are recovered exactly") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto m = g3_model(seed, 20, 5);
    const double gap = cluster_gap(m.Sigma, m.assignment);
    REQUIRE(gap > 0.0);
    CHECK(same_grouping(cod_cluster(m.Sigma, gap / 2.0), m.assignment));
    CHECK(same_grouping(cod_cluster(m.Sigma, gap / 7.0), m.assignment));
  }
}

TEST_CASE("alpha tuning rules") {
  std::mt19937_64 rng(4);
  const Matrix S = random_symmetric(8, rng);

  const auto single = tune_alpha(S, 8, 50, {0.7});
  CHECK(single.c == 0.7);
  CHECK(single.trace.size() == 1);
  CHECK(single.trace[0].stability == 1.0);

  // thresholds all beyond the largest distance give one group each time
  const double top = cod_distance_matrix(S).maxCoeff();
  const double scale = std::sqrt(std::log(8.0) / 50.0);
  const std::vector<double> high{top / scale + 1, top / scale + 2, top / scale + 3};
  const auto flat = tune_alpha(S, 8, 50, high);
  CHECK(flat.c == high[0]);
  for (const auto& t : flat.trace) CHECK(t.stability == 1.0);

  CHECK_THROWS_AS(tune_alpha(S, 8, 50, {}), InvalidParameter);
  CHECK_THROWS_AS(tune_alpha(S, 8, 50, {0.5, 0.2}), InvalidParameter);

  const auto full = tune_alpha(S, 8, 50, default_grid());
  CHECK(full.trace.size() == 20);
  for (const auto& t : full.trace) CHECK(t.stability <= 1.0);
  double best = 0.0;
  for (const auto& t : full.trace) best = std::max(best, t.stability);
  for (const auto& t : full.trace) {
    if (t.c < full.c) CHECK(t.stability < best);
  }
  CHECK(full.partition == cod_cluster(S, full.alpha));
}

TEST_CASE("tuning recovers a well-separated model") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto m = g3_model(100 + seed, 20, 5);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 1e-3);
    Matrix S = m.Sigma;
    for (int i = 0; i < 20; ++i) {
      for (int j = 0; j <= i; ++j) S(i, j) = S(j, i) = S(i, j) + g(rng);
    }
    const auto t = tune_alpha(S, 20, 50, default_grid());
    CHECK(same_grouping(t.partition, m.assignment));
  }
}
