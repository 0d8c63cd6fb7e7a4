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

#include "lgbm/simplex.hpp"

#include <cmath>
#include <vector>

namespace lgbm {

const char* to_string(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal:
      return "optimal";
    case LpStatus::kInfeasible:
      return "infeasible";
    case LpStatus::kUnbounded:
      return "unbounded";
    case LpStatus::kIterationLimit:
      return "iteration-limit";
  }
  return "unknown";
}

namespace {

class Tableau {
 public:
  Tableau(const Matrix& A, const Vector& b, const SimplexOptions& opt)
      : m_(static_cast<int>(A.rows())), n_(static_cast<int>(A.cols())), opt_(opt) {
    for (int i = 0; i < m_; ++i) {
      if (b(i) < 0.0) art_rows_.push_back(i);
    }
    na_ = static_cast<int>(art_rows_.size());
    cols_ = n_ + m_ + na_;
    t_ = Matrix::Zero(m_, cols_);
    rhs_ = b;
    basis_.assign(static_cast<std::size_t>(m_), -1);
    int art = 0;
    for (int i = 0; i < m_; ++i) {
      if (b(i) < 0.0) {
        t_.row(i).head(n_) = -A.row(i);
        t_(i, n_ + i) = -1.0;
        t_(i, n_ + m_ + art) = 1.0;
        rhs_(i) = -b(i);
        basis_[static_cast<std::size_t>(i)] = n_ + m_ + art;
        ++art;
      } else {
        t_.row(i).head(n_) = A.row(i);
        t_(i, n_ + i) = 1.0;
        basis_[static_cast<std::size_t>(i)] = n_ + i;
      }
    }
  }

  int rows() const { return m_; }
  int structural() const { return n_; }
  int artificial_begin() const { return n_ + m_; }
  int artificials() const { return na_; }
  const std::vector<int>& basis() const { return basis_; }
  const std::vector<int>& artificial_rows() const { return art_rows_; }
  double rhs(int i) const { return rhs_(i); }

  // Runs Bland-rule iterations for `cost` over columns [0, enter_limit).
  LpStatus optimize(const Vector& cost, int enter_limit, int& iterations, int max_iterations) {
    Vector reduced = cost;
    for (int i = 0; i < m_; ++i) {
      const double cb = cost(basis_[static_cast<std::size_t>(i)]);
      if (cb != 0.0) reduced.noalias() -= cb * t_.row(i).transpose();
    }
    for (;;) {
      int enter = -1;
      for (int j = 0; j < enter_limit; ++j) {
        if (reduced(j) < -opt_.cost_tol) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return LpStatus::kOptimal;
      if (iterations >= max_iterations) return LpStatus::kIterationLimit;

      int leave = -1;
      double best = 0.0;
      for (int i = 0; i < m_; ++i) {
        const double a = t_(i, enter);
        if (a <= opt_.pivot_tol) continue;
        const double ratio = rhs_(i) / a;
        if (leave < 0 || ratio < best - 1e-12) {
          best = ratio;
          leave = i;
        } else if (ratio <= best + 1e-12 && basis_[static_cast<std::size_t>(i)] <
                                                basis_[static_cast<std::size_t>(leave)]) {
          leave = i;  // Bland: smallest basic index among ties
        }
      }
      if (leave < 0) return LpStatus::kUnbounded;
      pivot(leave, enter);
      const double r = reduced(enter);
      reduced.noalias() -= r * t_.row(leave).transpose();
      ++iterations;
    }
  }

  void pivot(int row, int col) {
    const double piv = t_(row, col);
    t_.row(row) /= piv;
    rhs_(row) /= piv;
    t_(row, col) = 1.0;
    for (int i = 0; i < m_; ++i) {
      if (i == row) continue;
      const double f = t_(i, col);
      if (f == 0.0) continue;
      t_.row(i).noalias() -= f * t_.row(row);
      rhs_(i) -= f * rhs_(row);
      t_(i, col) = 0.0;
    }
    basis_[static_cast<std::size_t>(row)] = col;
  }

  // Pivots basic artificials (at zero level) onto structural or slack columns.
  void expel_artificials() {
    for (int i = 0; i < m_; ++i) {
      if (basis_[static_cast<std::size_t>(i)] < artificial_begin()) continue;
      int best = -1;
      double mag = opt_.pivot_tol;
      for (int j = 0; j < artificial_begin(); ++j) {
        if (std::fabs(t_(i, j)) > mag) {
          mag = std::fabs(t_(i, j));
          best = j;
        }
      }
      if (best >= 0) pivot(i, best);
    }
  }

  double objective(const Vector& cost) const {
    double v = 0.0;
    for (int i = 0; i < m_; ++i) v += cost(basis_[static_cast<std::size_t>(i)]) * rhs_(i);
    return v;
  }

 private:
  int m_;
  int n_;
  int na_ = 0;
  int cols_ = 0;
  SimplexOptions opt_;
  Matrix t_;
  Vector rhs_;
  std::vector<int> basis_;
  std::vector<int> art_rows_;
};

}  // namespace

LpResult solve_lp(const Matrix& A, const Vector& b, const Vector& c, const SimplexOptions& options) {
  const int m = static_cast<int>(A.rows());
  const int n = static_cast<int>(A.cols());
  if (b.size() != m || c.size() != n) throw InvalidParameter("solve_lp: dimension mismatch");
  const int max_iter = options.max_iterations > 0 ? options.max_iterations : 50 * (m + n) + 1000;

  Tableau tab(A, b, options);
  LpResult result;
  const int total_cols = n + m + tab.artificials();

  if (tab.artificials() > 0) {
    Vector phase1 = Vector::Zero(total_cols);
    phase1.tail(tab.artificials()).setOnes();
    const LpStatus s = tab.optimize(phase1, total_cols, result.iterations, max_iter);
    if (s == LpStatus::kIterationLimit) {
      result.status = s;
      return result;
    }
    const double scale = 1.0 + b.cwiseAbs().maxCoeff();
    if (tab.objective(phase1) > 1e-9 * scale) {
      result.status = LpStatus::kInfeasible;
      return result;
    }
    tab.expel_artificials();
  }

  Vector phase2 = Vector::Zero(total_cols);
  phase2.head(n) = c;
  result.status = tab.optimize(phase2, tab.artificial_begin(), result.iterations, max_iter);
  if (result.status != LpStatus::kOptimal) return result;

  // Basic solution from the tableau, then refined against the original rows:
  // every row reads A_i x + s_i - a_i = b_i regardless of the phase-1 flip.
  result.x = Vector::Zero(n);
  const auto& basis = tab.basis();
  for (int i = 0; i < m; ++i) {
    if (basis[static_cast<std::size_t>(i)] < n) result.x(basis[static_cast<std::size_t>(i)]) = tab.rhs(i);
  }
  Matrix B = Matrix::Zero(m, m);
  for (int i = 0; i < m; ++i) {
    const int col = basis[static_cast<std::size_t>(i)];
    if (col < n) {
      B.col(i) = A.col(col);
    } else if (col < n + m) {
      B(col - n, i) = 1.0;
    } else {
      B(tab.artificial_rows()[static_cast<std::size_t>(col - n - m)], i) = -1.0;
    }
  }
  Eigen::FullPivLU<Matrix> lu(B);
  if (lu.rank() == m) {
    const Vector xb = lu.solve(b);
    Vector refined = Vector::Zero(n);
    for (int i = 0; i < m; ++i) {
      if (basis[static_cast<std::size_t>(i)] < n) {
        refined(basis[static_cast<std::size_t>(i)]) = std::max(0.0, xb(i));
      }
    }
    if ((refined - result.x).cwiseAbs().maxCoeff() < 1e-6 * (1.0 + result.x.cwiseAbs().maxCoeff())) {
      result.x = refined;
    }
  }
  result.x = result.x.cwiseMax(0.0);
  result.objective = c.dot(result.x);
  return result;
}

}  // namespace lgbm
