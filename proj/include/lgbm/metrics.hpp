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

#include "lgbm/common.hpp"
#include "lgbm/partition.hpp"

namespace lgbm {

struct MetricReport {
  double rand_index = 0.0;
  double rel_err_max = 0.0;
  double rel_err_frobenius = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f_score = 0.0;
};

enum class NormKind { kMax, kFrobenius };

/// Fraction of the d(d-1)/2 code pairs on which the two partitions agree
/// (same cluster in both, or different in both). 1 for d < 2.
double rand_index(const Partition& truth, const Partition& estimate);

/// ||M_hat - M|| / ||M||. Throws InvalidParameter on shape mismatch or a
/// zero reference.
double relative_error(const Matrix& estimate, const Matrix& reference, NormKind norm);

struct SupportScore {
  double precision = 0.0;
  double recall = 0.0;
  double f_score = 0.0;
  int true_positives = 0;
  int false_positives = 0;
  int false_negatives = 0;
};

/// Counts TP/FP/FN on the strict upper triangle. Precision (recall) is 0 when
/// nothing is predicted (nothing is true); F is 0 when P + R = 0.
/// Throws InvalidParameter for shape mismatch or asymmetric input.
SupportScore f_score(const BoolMatrix& estimate, const BoolMatrix& truth);

}  // namespace lgbm
