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
#include <limits>

#include "lgbm/common.hpp"
#include "lgbm/cooc.hpp"

namespace lgbm {

/// Marks PMI entries whose co-occurrence count is zero.
inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

inline constexpr double kDefaultEta = -5.0;

/// Empirical PMI, possibly containing kNegInf. Only sppmi() consumes it.
struct PmiMatrix {
  Matrix values;
};

/// Shifted/truncated PMI: every entry >= eta, symmetric.
struct SppmiMatrix {
  Matrix values;
  double eta = kDefaultEta;

  int dim() const { return static_cast<int>(values.rows()); }
};

/// PMI(j, j') = ln( total * C(j, j') / (C(j, .) * C(j', .)) ), kNegInf where
/// C(j, j') = 0. Throws EmptyCorpus when total == 0.
PmiMatrix empirical_pmi(const CoocMatrix& cooc);

/// Entrywise max(PMI, eta). Throws InvalidParameter for non-finite eta.
SppmiMatrix sppmi(const PmiMatrix& pmi, double eta = kDefaultEta);

/// Dense CSV: first line `d`, then d comma-separated rows written with
/// round-trip precision.
void write_dense_csv(const Matrix& m, const std::filesystem::path& path);
Matrix read_dense_csv(const std::filesystem::path& path);

}  // namespace lgbm
