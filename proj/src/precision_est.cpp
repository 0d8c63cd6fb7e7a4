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

#include "lgbm/precision_est.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>

#include <json.hpp>

#include "lgbm/parallel.hpp"

namespace lgbm {
namespace {

void check_partition(const Matrix& S, const Partition& partition) {
  if (S.rows() != S.cols() || S.rows() != partition.num_codes()) {
    throw InvalidParameter("partition does not match the matrix dimension");
  }
}

constexpr double kFeasibilityTol = 1e-8;

}  // namespace

QHat refine_q(const Matrix& S, const Partition& partition) {
  check_partition(S, partition);
  const int K = partition.num_groups();
  QHat q{Matrix::Zero(K, K)};
  for (int k = 0; k < K; ++k) {
    const auto& gk = partition.group(k);
    for (int kp = k; kp < K; ++kp) {
      const auto& gkp = partition.group(kp);
      double sum = 0.0;
      double n = 0.0;
      if (k != kp) {
        for (int w : gk) {
          for (int wp : gkp) sum += S(w, wp);
        }
        n = static_cast<double>(gk.size() * gkp.size());
      } else if (gk.size() > 1) {
        for (int w : gk) {
          for (int wp : gk) {
            if (w != wp) sum += S(w, wp);
          }
        }
        n = static_cast<double>(gk.size() * (gk.size() - 1));
      } else {
        sum = S(gk.front(), gk.front());
        n = 1.0;
      }
      q.values(k, kp) = q.values(kp, k) = sum / n;
    }
  }
  return q;
}

QHat representative_q(const Matrix& S, const Partition& partition) {
  check_partition(S, partition);
  const int K = partition.num_groups();
  QHat q{Matrix(K, K)};
  for (int k = 0; k < K; ++k) {
    for (int kp = 0; kp < K; ++kp) {
      q.values(k, kp) = S(partition.group(k).front(), partition.group(kp).front());
    }
  }
  return q;
}

Vector clime_column(const Matrix& Q, int k, double lambda, ColumnDiagnostics* diag) {
  const int K = static_cast<int>(Q.rows());
  if (Q.cols() != K) throw InvalidParameter("clime: Q must be square");
  if (k < 0 || k >= K) throw InvalidParameter("clime: column index out of range");
  if (!(lambda > 0.0)) throw InvalidParameter("clime: lambda must be > 0");

  // Rows:  Q (b+ - b-) <= e_k + lambda   and   -Q (b+ - b-) <= lambda - e_k
  Matrix A(2 * K, 2 * K);
  A.topLeftCorner(K, K) = Q;
  A.topRightCorner(K, K) = -Q;
  A.bottomLeftCorner(K, K) = -Q;
  A.bottomRightCorner(K, K) = Q;
  Vector b = Vector::Constant(2 * K, lambda);
  b(k) += 1.0;
  b(K + k) -= 1.0;
  const Vector cost = Vector::Ones(2 * K);

  const LpResult lp = solve_lp(A, b, cost);
  if (lp.status != LpStatus::kOptimal) {
    throw NumericalFailure("clime: column " + std::to_string(k) + " LP ended " +
                           to_string(lp.status));
  }
  const Vector beta = lp.x.head(K) - lp.x.tail(K);
  Vector r = Q * beta;
  r(k) -= 1.0;
  const double residual = r.cwiseAbs().maxCoeff();
  if (residual > lambda + kFeasibilityTol) {
    throw NumericalFailure("clime: column " + std::to_string(k) + " residual " +
                           std::to_string(residual) + " exceeds lambda");
  }
  if (diag != nullptr) {
    diag->column = k;
    diag->status = lp.status;
    diag->iterations = lp.iterations;
    diag->objective = beta.lpNorm<1>();
    diag->residual = residual;
  }
  return beta;
}

Matrix symmetrize_min_magnitude(const Matrix& M) {
  if (M.rows() != M.cols()) throw InvalidParameter("symmetrize: matrix must be square");
  Matrix out = M;
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < M.cols(); ++j) {
      const double v = std::fabs(M(i, j)) <= std::fabs(M(j, i)) ? M(i, j) : M(j, i);
      out(i, j) = out(j, i) = v;
    }
  }
  return out;
}

ClimeResult clime(const Matrix& Q, double lambda, int threads) {
  const int K = static_cast<int>(Q.rows());
  if (Q.cols() != K) throw InvalidParameter("clime: Q must be square");
  ClimeResult out;
  out.columns.resize(K, K);
  out.diagnostics.resize(static_cast<std::size_t>(K));
  parallel_for(static_cast<std::size_t>(K), threads, [&](std::size_t k) {
    const int col = static_cast<int>(k);
    out.columns.col(col) = clime_column(Q, col, lambda, &out.diagnostics[k]);
  });
  out.o_hat = symmetrize_min_magnitude(out.columns);
  return out;
}

BoolMatrix support(const Matrix& o_hat, double tau) {
  if (!(tau >= 0.0)) throw InvalidParameter("support: tau must be >= 0");
  return (o_hat.array().abs() > tau).matrix();
}

Vector estimate_gamma(const Matrix& S, const QHat& q_hat, const Partition& partition) {
  check_partition(S, partition);
  if (q_hat.dim() != partition.num_groups()) throw InvalidParameter("estimate_gamma: K mismatch");
  const int d = partition.num_codes();
  Vector gamma = Vector::Zero(d);
  for (int i = 0; i < d; ++i) {
    const int k = partition.label(i);
    if (partition.group_size(k) > 1) gamma(i) = std::max(0.0, S(i, i) - q_hat.values(k, k));
  }
  return gamma;
}

Matrix estimate_omega(const Matrix& o_hat, const Vector& gamma_hat, const Partition& partition,
                      double eps_floor) {
  const int K = partition.num_groups();
  const int d = partition.num_codes();
  if (o_hat.rows() != K || o_hat.cols() != K || gamma_hat.size() != d) {
    throw InvalidParameter("estimate_omega: shape mismatch");
  }
  if (!(eps_floor > 0.0)) throw InvalidParameter("estimate_omega: eps_floor must be > 0");

  const Vector dinv = gamma_hat.cwiseMax(eps_floor).cwiseInverse();
  // W = D^{-1} A  (d x K);  inner = O + A^T D^{-1} A
  Matrix W = Matrix::Zero(d, K);
  Matrix inner = o_hat;
  for (int i = 0; i < d; ++i) {
    const int k = partition.label(i);
    W(i, k) = dinv(i);
    inner(k, k) += dinv(i);
  }
  Eigen::PartialPivLU<Matrix> lu(inner);
  const double rcond = lu.rcond();
  if (!(rcond > 1e-15)) {
    throw NumericalFailure("estimate_omega: inner K x K system is singular (rcond " +
                           std::to_string(rcond) + ")");
  }
  Matrix omega = -W * lu.solve(W.transpose());
  omega.diagonal() += dinv;
  return 0.5 * (omega + omega.transpose());
}

LambdaTuning tune_lambda(const Matrix& Q, int d, int p, const std::vector<double>& grid,
                         int threads) {
  if (grid.empty()) throw InvalidParameter("tune_lambda: empty grid");
  if (!std::is_sorted(grid.begin(), grid.end())) {
    throw InvalidParameter("tune_lambda: grid must be sorted ascending");
  }
  if (d < 1 || p < 1) throw InvalidParameter("tune_lambda: d and p must be >= 1");
  const double scale = std::sqrt(std::log(static_cast<double>(d)) / p);

  std::vector<ClimeResult> fits(grid.size());
  parallel_for(grid.size(), threads,
               [&](std::size_t i) { fits[i] = clime(Q, grid[i] * scale, 1); });

  LambdaTuning out;
  std::size_t best = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    LambdaTrace t;
    t.c = grid[i];
    t.lambda = grid[i] * scale;
    t.o_hat = fits[i].o_hat;
    if (i > 0) {
      t.change = (fits[i].o_hat - fits[i - 1].o_hat).cwiseAbs().maxCoeff();
      // Changes equal up to rounding count as ties so the smaller c wins.
      if (best == 0) {
        best = i;
      } else {
        const double incumbent = *out.trace[best].change;
        if (*t.change < incumbent - 1e-12 * std::max(1.0, incumbent)) best = i;
      }
    }
    out.trace.push_back(std::move(t));
  }
  out.c = out.trace[best].c;
  out.lambda = out.trace[best].lambda;
  out.clime = std::move(fits[best]);
  return out;
}

EstimationResult estimate_precision(const Matrix& S, const Partition& partition,
                                    const EstimationOptions& options) {
  EstimationResult r;
  r.partition = partition;
  r.q_hat = refine_q(S, partition);
  ClimeResult fit;
  if (options.lambda) {
    r.lambda = *options.lambda;
    fit = clime(r.q_hat.values, r.lambda, options.threads);
  } else {
    auto tuned = tune_lambda(r.q_hat.values, partition.num_codes(), options.p,
                             options.lambda_grid, options.threads);
    r.lambda = tuned.lambda;
    r.lambda_trace = std::move(tuned.trace);
    fit = std::move(tuned.clime);
  }
  r.o_hat = fit.o_hat;
  r.diagnostics = std::move(fit.diagnostics);
  r.tau = options.tau.value_or(r.lambda);
  r.support = support(r.o_hat, r.tau);
  r.gamma_hat = estimate_gamma(S, r.q_hat, partition);
  r.omega_hat = estimate_omega(r.o_hat, r.gamma_hat, partition, options.eps_floor);
  return r;
}

void write_estimation(const EstimationResult& result, const std::filesystem::path& dir,
                      const std::string& extra_meta) {
  std::filesystem::create_directories(dir);
  write_dense_csv(result.q_hat.values, dir / "q_hat.csv");
  write_dense_csv(result.o_hat, dir / "o_hat.csv");
  write_dense_csv(result.support.cast<double>(), dir / "support.csv");
  write_dense_csv(result.omega_hat, dir / "omega.csv");
  {
    std::ofstream out(dir / "gamma.csv");
    if (!out) throw IoError("cannot write gamma.csv in " + dir.string());
    out << "code_id,gamma\n";
    char buf[64];
    for (Eigen::Index i = 0; i < result.gamma_hat.size(); ++i) {
      const auto res = std::to_chars(buf, buf + sizeof(buf), result.gamma_hat(i));
      out << (i + 1) << ',' << std::string_view(buf, static_cast<std::size_t>(res.ptr - buf))
          << '\n';
    }
  }
  nlohmann::json meta = nlohmann::json::parse(extra_meta);
  meta["lambda"] = result.lambda;
  meta["tau"] = result.tau;
  meta["K"] = result.partition.num_groups();
  meta["d"] = result.partition.num_codes();
  nlohmann::json cols = nlohmann::json::array();
  for (const auto& c : result.diagnostics) {
    cols.push_back({{"column", c.column + 1},
                    {"status", to_string(c.status)},
                    {"iterations", c.iterations},
                    {"l1", c.objective},
                    {"residual", c.residual}});
  }
  meta["columns"] = cols;
  if (!result.lambda_trace.empty()) {
    nlohmann::json trace = nlohmann::json::array();
    for (const auto& t : result.lambda_trace) {
      nlohmann::json e{{"c", t.c}, {"lambda", t.lambda}};
      e["change"] = t.change ? nlohmann::json(*t.change) : nlohmann::json(nullptr);
      trace.push_back(e);
    }
    meta["lambda_trace"] = trace;
  }
  std::ofstream out(dir / "meta.json");
  if (!out) throw IoError("cannot write meta.json in " + dir.string());
  out << meta.dump(2) << '\n';
}

}  // namespace lgbm
