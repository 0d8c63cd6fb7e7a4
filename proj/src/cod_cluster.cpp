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

#include "lgbm/cod_cluster.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lgbm/metrics.hpp"
#include "lgbm/simd/kernels.hpp"

namespace lgbm {
namespace {

double row_distance(const simd::KernelTable& kern, const Matrix& S, int j, int jp) {
  const int d = static_cast<int>(S.rows());
  const int lo = std::min(j, jp);
  const int hi = std::max(j, jp);
  // S is symmetric, so columns stand in for rows and stay contiguous.
  const double* a = S.col(j).data();
  const double* b = S.col(jp).data();
  double m = kern.max_abs_diff(a, b, static_cast<std::size_t>(lo));
  m = std::max(m, kern.max_abs_diff(a + lo + 1, b + lo + 1, static_cast<std::size_t>(hi - lo - 1)));
  m = std::max(m, kern.max_abs_diff(a + hi + 1, b + hi + 1, static_cast<std::size_t>(d - hi - 1)));
  return m;
}

void check_square(const Matrix& S) {
  if (S.rows() != S.cols()) throw InvalidParameter("cod: matrix must be square");
}

}  // namespace

double cod_distance(const Matrix& S, int j, int jp) {
  check_square(S);
  const int d = static_cast<int>(S.rows());
  if (d < 3) throw InvalidParameter("cod_distance: need d >= 3");
  if (j < 0 || jp < 0 || j >= d || jp >= d || j == jp) {
    throw InvalidParameter("cod_distance: need distinct codes in range");
  }
  return row_distance(simd::active(), S, j, jp);
}

Matrix cod_distance_matrix(const Matrix& S) {
  check_square(S);
  const int d = static_cast<int>(S.rows());
  Matrix D = Matrix::Zero(d, d);
  if (d < 3) return D;
  const auto& kern = simd::active();
  for (int j = 0; j < d; ++j) {
    for (int jp = j + 1; jp < d; ++jp) {
      D(j, jp) = D(jp, j) = row_distance(kern, S, j, jp);
    }
  }
  return D;
}

Partition cod_peel(const Matrix& distances, double alpha) {
  if (!(alpha >= 0.0)) throw InvalidParameter("cod: alpha must be >= 0");
  check_square(distances);
  const int d = static_cast<int>(distances.rows());
  std::vector<int> remaining(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) remaining[static_cast<std::size_t>(i)] = i;
  std::vector<std::vector<int>> groups;

  while (!remaining.empty()) {
    if (remaining.size() == 1) {
      groups.push_back(remaining);
      break;
    }
    int best_j = -1;
    int best_jp = -1;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < remaining.size(); ++a) {
      for (std::size_t b = a + 1; b < remaining.size(); ++b) {
        const double v = distances(remaining[a], remaining[b]);
        if (v < best || best_j < 0) {
          best = v;
          best_j = remaining[a];
          best_jp = remaining[b];
        }
      }
    }
    std::vector<int> group;
    if (best > alpha) {
      group.push_back(best_j);
    } else {
      for (int c : remaining) {
        const double near = std::min(c == best_j ? 0.0 : distances(best_j, c),
                                     c == best_jp ? 0.0 : distances(best_jp, c));
        if (near <= alpha) group.push_back(c);
      }
    }
    std::vector<int> rest;
    rest.reserve(remaining.size() - group.size());
    std::set_difference(remaining.begin(), remaining.end(), group.begin(), group.end(),
                        std::back_inserter(rest));
    remaining.swap(rest);
    groups.push_back(std::move(group));
  }
  return Partition::from_groups(groups, d);
}

Partition cod_cluster(const Matrix& S, double alpha) {
  if (!(alpha >= 0.0)) throw InvalidParameter("cod_cluster: alpha must be >= 0");
  return cod_peel(cod_distance_matrix(S), alpha);
}

std::vector<double> default_grid() {
  std::vector<double> g;
  for (int i = 1; i <= 20; ++i) g.push_back(i / 10.0);
  return g;
}

AlphaTuning tune_alpha(const Matrix& S, int d, int p, const std::vector<double>& grid) {
  if (grid.empty()) throw InvalidParameter("tune_alpha: empty grid");
  if (!std::is_sorted(grid.begin(), grid.end())) {
    throw InvalidParameter("tune_alpha: grid must be sorted ascending");
  }
  if (d < 1 || p < 1) throw InvalidParameter("tune_alpha: d and p must be >= 1");
  const double scale = std::sqrt(std::log(static_cast<double>(d)) / p);
  const Matrix D = cod_distance_matrix(S);

  AlphaTuning out;
  for (double c : grid) {
    AlphaTrace t;
    t.c = c;
    t.alpha = c * scale;
    t.partition = cod_peel(D, t.alpha);
    out.trace.push_back(std::move(t));
  }
  const std::size_t n = out.trace.size();
  for (std::size_t i = 0; i < n && n > 1; ++i) {
    const std::size_t other = (i + 1 < n) ? i + 1 : i - 1;
    out.trace[i].stability = rand_index(out.trace[i].partition, out.trace[other].partition);
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < n; ++i) {
    if (out.trace[i].stability > out.trace[best].stability) best = i;
  }
  out.c = out.trace[best].c;
  out.alpha = out.trace[best].alpha;
  out.partition = out.trace[best].partition;
  return out;
}

}  // namespace lgbm
