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

#include <cstdint>
#include <filesystem>
#include <string>

#include "lgbm/common.hpp"
#include "lgbm/partition.hpp"

namespace lgbm {

/// Cluster-level precision matrix O (K x K, symmetric positive definite)
/// together with the edge set that generated it.
struct PrecisionGraph {
  int K = 0;
  Matrix O;
  BoolMatrix adjacency;  // off-diagonal edges, zero diagonal
};

/// Ground truth of the block graphical model:
///   Sigma = A Q A^T + diag(gamma),  Q = O^{-1}.
struct BlockModel {
  PrecisionGraph graph;
  Partition assignment;
  Matrix Q;
  Vector gamma;
  Matrix Sigma;
  std::uint64_t seed = 0;

  int num_codes() const { return assignment.num_codes(); }
  int num_clusters() const { return graph.K; }
};

/// O = c * I_K.
PrecisionGraph gen_independent_graph(int K, double c);

/// Erdos-Renyi edges with probability `prob` on i < j, then
/// O = c * Adj + (|lambda_min(c * Adj)| + c1) * I.
PrecisionGraph gen_erdos_renyi_graph(int K, double prob, double c, double c1, Rng& rng);

/// Contiguous even split: code i (1-based) goes to cluster ceil(i / m),
/// m = d / K. Throws InvalidParameter unless K divides d.
Partition build_assignment(int d, int K);

/// Contiguous split for any 1 <= K <= d: code i (1-based) goes to cluster
/// ceil(i * K / d). Group sizes differ by at most one; identical to
/// build_assignment whenever K divides d.
Partition build_balanced_assignment(int d, int K);

/// Q = O^{-1} via Cholesky, gamma_i ~ Unif[gamma_low, gamma_high] (forced to 0
/// on singleton clusters), Sigma = A Q A^T + Gamma.
///
/// Throws SingularMatrix when O is not positive definite or its condition
/// number exceeds 1e12.
BlockModel build_block_model(const PrecisionGraph& graph, const Partition& assignment,
                             double gamma_low, double gamma_high, Rng& rng);

/// Same construction with a caller-supplied gamma (singleton entries are still
/// forced to 0).
BlockModel assemble_block_model(const PrecisionGraph& graph, const Partition& assignment,
                                Vector gamma);

/// d x p matrix whose columns are A Z_l + E_l, Z_l ~ N(0, Q), E_l ~ N(0, Gamma).
/// Per column, the K normals for Z_l are drawn first, then the d normals for E_l.
RowMatrix sample_embeddings(const BlockModel& model, int p, Rng& rng);

/// min over cross-cluster pairs (i, j) of max_{l != i, j} |S(i,l) - S(j,l)|.
/// +infinity when no cross-cluster pair exists.
double cluster_gap(const Matrix& S, const Partition& partition);

// JSON manifest: {"K", "d", "labels" (1-based), "O" (row-major), "gamma", "seed"}.
std::string block_model_to_json(const BlockModel& model);
BlockModel block_model_from_json(const std::string& text);
void write_block_model(const BlockModel& model, const std::filesystem::path& path);
BlockModel read_block_model(const std::filesystem::path& path);

}  // namespace lgbm
