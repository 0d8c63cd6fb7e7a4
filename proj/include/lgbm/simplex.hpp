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

namespace lgbm {

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

const char* to_string(LpStatus status);

struct LpResult {
  LpStatus status = LpStatus::kIterationLimit;
  Vector x;
  double objective = 0.0;
  int iterations = 0;
};

struct SimplexOptions {
  double pivot_tol = 1e-11;
  double cost_tol = 1e-11;
  int max_iterations = 0;  // 0 -> 50 * (rows + cols) + 1000
};

/// Dense two-phase tableau simplex with Bland's anti-cycling rule for
///
///     minimize c^T x   subject to   A x <= b,  x >= 0.
///
/// Rows with negative b get a surplus and an artificial variable in phase 1.
/// The final basic solution is re-solved from the original system with LU
/// so the returned x does not carry accumulated tableau round-off.
LpResult solve_lp(const Matrix& A, const Vector& b, const Vector& c,
                  const SimplexOptions& options = {});

}  // namespace lgbm
