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

#include "lgbm/metrics.hpp"
#include "oracles/brute.hpp"

using namespace lgbm;

TEST_CASE("rand index: hand cases") {
  const Partition a({0, 0, 1, 1}, 2);
  CHECK(rand_index(a, a) == 1.0);
  CHECK(rand_index(Partition({0, 1}, 2), Partition({0, 0}, 1)) == 0.0);
  // pairs: (12) same/same, (13) diff/diff, (14) diff/same, (23) diff/diff,
  // (24) diff/same, (34) same/diff  ->  3/6
  CHECK(rand_index(a, Partition({0, 0, 1, 0}, 2)) == doctest::Approx(0.5));
  CHECK(rand_index(Partition({0}, 1), Partition({0}, 1)) == 1.0);
  CHECK_THROWS_AS(rand_index(a, Partition({0, 0, 1}, 2)), InvalidParameter);
}

TEST_CASE("rand index equals pair enumeration on random partitions") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    const int d = 1 + static_cast<int>(rng() % 12);
    auto draw = [&] {
      const int k = 1 + static_cast<int>(rng() % d);
      std::vector<int> lab(d);
      for (int i = 0; i < d; ++i) lab[i] = i < k ? i : static_cast<int>(rng() % k);
      std::shuffle(lab.begin(), lab.end(), rng);
      return Partition(lab, k);
    };
    const Partition a = draw(), b = draw();
    const double ri = rand_index(a, b);
    CHECK(ri == oracle::rand_index(a.labels(), b.labels()));
    CHECK(ri == rand_index(b, a));
  }
}

TEST_CASE("relative error") {
  Matrix O = Matrix::Identity(2, 2);
  Matrix E = O;
  CHECK(relative_error(O, O, NormKind::kMax) == 0.0);
  E(0, 1) = E(1, 0) = 0.1;
  CHECK(relative_error(E, O, NormKind::kMax) == doctest::Approx(0.1));
  CHECK(relative_error(E, O, NormKind::kFrobenius) == doctest::Approx(0.1));
  CHECK_THROWS_AS(relative_error(E, Matrix::Zero(2, 2), NormKind::kMax), InvalidParameter);
  CHECK_THROWS_AS(relative_error(E, Matrix::Identity(3, 3), NormKind::kMax), InvalidParameter);
}

TEST_CASE("f-score conventions") {
  BoolMatrix truth = BoolMatrix::Zero(4, 4);
  truth(0, 1) = truth(1, 0) = true;
  truth(2, 3) = truth(3, 2) = true;
  truth(0, 3) = truth(3, 0) = true;

  const auto perfect = f_score(truth, truth);
  CHECK(perfect.precision == 1.0);
  CHECK(perfect.recall == 1.0);
  CHECK(perfect.f_score == 1.0);

  const auto none = f_score(BoolMatrix::Zero(4, 4), truth);
  CHECK(none.precision == 0.0);
  CHECK(none.recall == 0.0);
  CHECK(none.f_score == 0.0);

  // TP = 2, FP = 1, FN = 1
  BoolMatrix est = truth;
  est(0, 3) = est(3, 0) = false;
  est(1, 2) = est(2, 1) = true;
  const auto s = f_score(est, truth);
  CHECK(s.true_positives == 2);
  CHECK(s.precision == doctest::Approx(2.0 / 3.0));
  CHECK(s.recall == doctest::Approx(2.0 / 3.0));
  CHECK(s.f_score == doctest::Approx(2.0 / 3.0));

  // diagonal never counts
  BoolMatrix diag = truth;
  diag.diagonal().setConstant(true);
  CHECK(f_score(diag, truth).f_score == 1.0);

  BoolMatrix asym = truth;
  asym(0, 2) = true;
  CHECK_THROWS_AS(f_score(asym, truth), InvalidParameter);
}

TEST_CASE("f-score is invariant under transposing both supports") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 50; ++t) {
    BoolMatrix a = BoolMatrix::Zero(6, 6), b = BoolMatrix::Zero(6, 6);
    for (int i = 0; i < 6; ++i) {
      for (int j = i + 1; j < 6; ++j) {
        a(i, j) = a(j, i) = rng() % 2;
        b(i, j) = b(j, i) = rng() % 2;
      }
    }
    const BoolMatrix at = a.transpose(), bt = b.transpose();
    CHECK(f_score(a, b).f_score == f_score(at, bt).f_score);
  }
}
