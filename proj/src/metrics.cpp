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

#include "lgbm/metrics.hpp"

#include <map>
#include <utility>

namespace lgbm {
namespace {

double pairs(double n) { return n * (n - 1.0) / 2.0; }

}  // namespace

double rand_index(const Partition& truth, const Partition& estimate) {
  const int d = truth.num_codes();
  if (estimate.num_codes() != d) {
    throw InvalidParameter("rand_index: partitions cover different numbers of codes");
  }
  if (d < 2) return 1.0;
  // Contingency-table form: same-same pairs n11, and the pair totals of
  // each partition give the other agreement counts without an O(d^2) loop.
  std::map<std::pair<int, int>, long long> joint;
  for (int i = 0; i < d; ++i) ++joint[{truth.label(i), estimate.label(i)}];
  double same_both = 0.0;
  for (const auto& [key, n] : joint) same_both += pairs(static_cast<double>(n));
  double same_truth = 0.0;
  for (int k = 0; k < truth.num_groups(); ++k) same_truth += pairs(truth.group_size(k));
  double same_est = 0.0;
  for (int k = 0; k < estimate.num_groups(); ++k) same_est += pairs(estimate.group_size(k));
  const double all = pairs(d);
  const double diff_both = all - same_truth - same_est + same_both;
  return (same_both + diff_both) / all;
}

double relative_error(const Matrix& estimate, const Matrix& reference, NormKind norm) {
  if (estimate.rows() != reference.rows() || estimate.cols() != reference.cols()) {
    throw InvalidParameter("relative_error: shape mismatch");
  }
  const Matrix diff = estimate - reference;
  double num = 0.0;
  double den = 0.0;
  if (norm == NormKind::kMax) {
    num = diff.cwiseAbs().maxCoeff();
    den = reference.cwiseAbs().maxCoeff();
  } else {
    num = diff.norm();
    den = reference.norm();
  }
  if (!(den > 0.0)) throw InvalidParameter("relative_error: reference has zero norm");
  return num / den;
}

SupportScore f_score(const BoolMatrix& estimate, const BoolMatrix& truth) {
  if (estimate.rows() != truth.rows() || estimate.cols() != truth.cols() ||
      estimate.rows() != estimate.cols()) {
    throw InvalidParameter("f_score: supports must be square and the same shape");
  }
  if (estimate != estimate.transpose() || truth != truth.transpose()) {
    throw InvalidParameter("f_score: supports must be symmetric");
  }
  SupportScore s;
  const auto n = estimate.rows();
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const bool e = estimate(i, j);
      const bool t = truth(i, j);
      s.true_positives += e && t;
      s.false_positives += e && !t;
      s.false_negatives += !e && t;
    }
  }
  const int tp = s.true_positives;
  if (tp + s.false_positives > 0) s.precision = static_cast<double>(tp) / (tp + s.false_positives);
  if (tp + s.false_negatives > 0) s.recall = static_cast<double>(tp) / (tp + s.false_negatives);
  if (s.precision + s.recall > 0.0) {
    s.f_score = 2.0 * s.precision * s.recall / (s.precision + s.recall);
  }
  return s;
}

}  // namespace lgbm
