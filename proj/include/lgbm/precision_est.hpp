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

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "lgbm/common.hpp"
#include "lgbm/partition.hpp"
#include "lgbm/pmi.hpp"
#include "lgbm/simplex.hpp"

namespace lgbm {

inline constexpr double kDefaultEpsFloor = 1e-8;

/// Cluster-level covariance estimate (K x K, symmetric).
struct QHat {
  Matrix values;
  int dim() const { return static_cast<int>(values.rows()); }
};

/// Averages S over cluster blocks: all w in G_k, w' in G_k' for k != k';
/// the off-diagonal pairs of G_k for k == k' when |G_k| > 1; S(w, w) for a
/// singleton G_k = {w}.
QHat refine_q(const Matrix& S, const Partition& partition);

/// Baseline without averaging: Q(k, k') = S(r_k, r_k') where r_k is the
/// smallest code id of group k.
QHat representative_q(const Matrix& S, const Partition& partition);

struct ColumnDiagnostics {
  int column = 0;
  LpStatus status = LpStatus::kOptimal;
  int iterations = 0;
  double objective = 0.0;  // ||beta||_1
  double residual = 0.0;   // ||Q beta - e_k||_inf
};

/// argmin ||beta||_1 s.t. ||Q beta - e_k||_inf <= lambda, solved as an LP in
/// (beta+, beta-). Throws InvalidParameter for lambda <= 0 and
/// NumericalFailure (naming the column) if the solver fails or the returned
/// point violates the constraint by more than 1e-8.
Vector clime_column(const Matrix& Q, int k, double lambda, ColumnDiagnostics* diag = nullptr);

/// Keeps, for every (i, j), whichever of M(i, j), M(j, i) has the smaller
/// magnitude (M(i, j) on ties, i < j).
Matrix symmetrize_min_magnitude(const Matrix& M);

struct ClimeResult {
  Matrix o_hat;        // symmetrized
  Matrix columns;      // raw LP solutions, column k solves for e_k
  std::vector<ColumnDiagnostics> diagnostics;
};

/// Solves every column (in parallel when threads > 1) and symmetrizes.
ClimeResult clime(const Matrix& Q, double lambda, int threads = 1);

/// |o_hat(i, j)| > tau.
BoolMatrix support(const Matrix& o_hat, double tau);

/// gamma_i = max(0, S(i, i) - Q(g(i), g(i))) for codes in clusters of size
/// > 1, 0 for singletons.
Vector estimate_gamma(const Matrix& S, const QHat& q_hat, const Partition& partition);

/// Inverse of A O^{-1} A^T + D with D = diag(max(gamma_i, eps_floor)) by
/// Woodbury:  D^{-1} - D^{-1} A (O + A^T D^{-1} A)^{-1} A^T D^{-1}.
/// Throws NumericalFailure when the inner K x K system is singular.
Matrix estimate_omega(const Matrix& o_hat, const Vector& gamma_hat, const Partition& partition,
                      double eps_floor = kDefaultEpsFloor);

struct LambdaTrace {
  double c = 0.0;
  double lambda = 0.0;
  std::optional<double> change;  // max-norm change from the previous point
  Matrix o_hat;
};

struct LambdaTuning {
  double c = 0.0;
  double lambda = 0.0;
  ClimeResult clime;
  std::vector<LambdaTrace> trace;
};

/// lambda = c * sqrt(ln d / p) over the ascending grid. Picks the point with
/// the smallest max-norm change from its predecessor (the first point cannot
/// win unless it is alone), ties going to the smaller c.
LambdaTuning tune_lambda(const Matrix& Q, int d, int p, const std::vector<double>& grid,
                         int threads = 1);

struct EstimationResult {
  Partition partition;
  QHat q_hat;
  Matrix o_hat;
  BoolMatrix support;
  Vector gamma_hat;
  Matrix omega_hat;
  double lambda = 0.0;
  double tau = 0.0;
  std::vector<ColumnDiagnostics> diagnostics;
  std::vector<LambdaTrace> lambda_trace;
};

struct EstimationOptions {
  /// Fixed lambda; when unset it is tuned over `lambda_grid` with p.
  std::optional<double> lambda;
  std::vector<double> lambda_grid;
  int p = 0;
  double eps_floor = kDefaultEpsFloor;
  /// Support threshold; defaults to lambda.
  std::optional<double> tau;
  int threads = 1;
};

/// The whole estimation step for a fixed partition.
EstimationResult estimate_precision(const Matrix& S, const Partition& partition,
                                    const EstimationOptions& options);

/// Writes q_hat.csv, o_hat.csv, support.csv, gamma.csv, omega.csv and
/// meta.json into `dir` (created if missing). `extra_meta` is a JSON object
/// merged into meta.json.
void write_estimation(const EstimationResult& result, const std::filesystem::path& dir,
                      const std::string& extra_meta = "{}");

}  // namespace lgbm
