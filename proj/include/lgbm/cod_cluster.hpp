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

#include <optional>
#include <vector>

#include "lgbm/common.hpp"
#include "lgbm/partition.hpp"
#include "lgbm/pmi.hpp"

namespace lgbm {

/// max over c != j, j' of |S(j, c) - S(j', c)|. Requires d >= 3 and j != j'.
double cod_distance(const Matrix& S, int j, int jp);

/// All pairwise COD distances, zero diagonal. For d < 3 the maximum runs over
/// an empty set and every distance is 0.
Matrix cod_distance_matrix(const Matrix& S);

/// Greedy peeling on a precomputed distance matrix.
///
/// While codes remain: a lone code forms its own group; otherwise take the
/// closest remaining pair (lexicographically smallest on ties). If that
/// distance exceeds alpha the first anchor leaves as a singleton, else every
/// remaining code within alpha of either anchor forms the next group.
Partition cod_peel(const Matrix& distances, double alpha);

/// cod_peel(cod_distance_matrix(S), alpha). Throws InvalidParameter for alpha < 0.
Partition cod_cluster(const Matrix& S, double alpha);

inline Partition cod_cluster(const SppmiMatrix& S, double alpha) {
  return cod_cluster(S.values, alpha);
}

/// Default tuning grid {0.1, 0.2, ..., 2.0}.
std::vector<double> default_grid();

struct AlphaTrace {
  double c = 0.0;
  double alpha = 0.0;
  Partition partition;
  double stability = 1.0;
};

struct AlphaTuning {
  double c = 0.0;
  double alpha = 0.0;
  Partition partition;
  std::vector<AlphaTrace> trace;
};

/// Evaluates alpha = c * sqrt(ln d / p) for every c in `grid` (ascending).
/// Stability of point i is the Rand index between the partitions at i and
/// i+1; the last point pairs with its predecessor and a single point scores 1.
/// Returns the most stable point, ties going to the smaller c.
AlphaTuning tune_alpha(const Matrix& S, int d, int p, const std::vector<double>& grid);

inline AlphaTuning tune_alpha(const SppmiMatrix& S, int d, int p,
                              const std::vector<double>& grid) {
  return tune_alpha(S.values, d, p, grid);
}

}  // namespace lgbm
