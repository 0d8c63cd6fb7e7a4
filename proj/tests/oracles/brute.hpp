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

// Deliberately naive reference implementations. They share no code with the
// library so a bug in one does not hide in the other.

#include <cmath>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

// O(T^2) pair loop over every sequence.
inline Eigen::MatrixXd cooc_counts(const std::vector<std::vector<int>>& seqs, int d, int q) {
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(d, d);
  for (const auto& s : seqs) {
    const long n = static_cast<long>(s.size());
    for (long t = 0; t < n; ++t) {
      for (long u = 0; u < n; ++u) {
        const long gap = t > u ? t - u : u - t;
        if (gap > 0 && gap <= q) c(s[t], s[u]) += 1.0;
      }
    }
  }
  return c;
}

inline double rand_index(const std::vector<int>& a, const std::vector<int>& b) {
  const int d = static_cast<int>(a.size());
  if (d < 2) return 1.0;
  long agree = 0, pairs = 0;
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      agree += (a[i] == a[j]) == (b[i] == b[j]);
      ++pairs;
    }
  }
  return static_cast<double>(agree) / static_cast<double>(pairs);
}

// Plain exp / sum, no max shift.
inline Eigen::VectorXd softmax(const Eigen::MatrixXd& V, const Eigen::VectorXd& c) {
  Eigen::VectorXd e(V.rows());
  for (Eigen::Index i = 0; i < V.rows(); ++i) {
    double s = 0.0;
    for (Eigen::Index j = 0; j < V.cols(); ++j) s += V(i, j) * c(j);
    e(i) = std::exp(s);
  }
  double z = 0.0;
  for (Eigen::Index i = 0; i < e.size(); ++i) z += e(i);
  return e / z;
}

}  // namespace oracle
