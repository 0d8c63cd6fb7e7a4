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
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lgbm/cod_cluster.hpp"
#include "lgbm/common.hpp"
#include "lgbm/cooc.hpp"
#include "lgbm/metrics.hpp"
#include "lgbm/model_gen.hpp"
#include "lgbm/pmi.hpp"
#include "lgbm/precision_est.hpp"

namespace lgbm {

inline constexpr const char* kVersion = "0.1.0";

struct GraphSpec {
  enum class Kind { kIndependent, kErdosRenyi };
  Kind kind = Kind::kIndependent;
  double c = 0.5;
  double c1 = 0.0;
  double prob = 0.0;
};

/// The six graph families G1..G6. Throws InvalidParameter for other ids.
GraphSpec scenario_graph(const std::string& id);

enum class ClusteringMode { kTuned, kOracle };

struct ScenarioConfig {
  std::string scenario = "G1";
  std::optional<GraphSpec> graph;  // required when scenario is not G1..G6
  int d = 25;
  int p = 50;
  int K = 25;
  long long T = 200000;
  int q = 10;
  int replicates = 10;
  std::uint64_t seed = 1;
  double eta = kDefaultEta;
  std::vector<double> alpha_grid = default_grid();
  std::vector<double> lambda_grid = default_grid();
  double eps_floor = kDefaultEpsFloor;
  std::optional<double> tau;              // defaults to the tuned lambda
  std::optional<double> discourse_alpha;  // defaults to 1 - ln d / p^2
  double gamma_low = 0.25;
  double gamma_high = 0.5;
  ClusteringMode clustering_mode = ClusteringMode::kOracle;
  bool record_timing = false;

  GraphSpec resolved_graph() const;
  /// Throws InvalidParameter naming the offending field.
  void validate() const;
};

ScenarioConfig config_from_json(const std::string& text);
std::string config_to_json(const ScenarioConfig& config);

/// Accepts a config object or an array of them. A run manifest (object with
/// a `scenarios` array) is read the same way, so manifests can be replayed.
std::vector<ScenarioConfig> configs_from_json(const std::string& text);

/// Seed of replicate r: the r-th counter-derived child of the master seed.
/// Stages inside a replicate use children 0 (model), 1 (embeddings) and
/// 2 (corpus) of the replicate seed.
std::uint64_t replicate_seed(std::uint64_t master, int replicate);

/// Simulated inputs of one replicate, up to the SPPMI matrix.
struct ReplicateData {
  BlockModel model;
  RowMatrix embeddings;
  TokenSequence tokens;
  CoocMatrix cooc;
  SppmiMatrix sppmi;
};

ReplicateData simulate_replicate(const ScenarioConfig& config, int replicate);

struct ReplicateResult {
  int replicate = 0;
  std::uint64_t seed = 0;
  double alpha = 0.0;  // clustering threshold picked by tuning
  double lambda = 0.0;
  int k_hat = 0;
  MetricReport metrics;
  double wall_ms = 0.0;
  std::map<std::string, double> stage_ms;
  double baseline_rel_err_frob = 0.0;  // representative-code CLIME
  std::optional<std::string> error;
};

struct ScenarioResult {
  ScenarioConfig config;
  std::vector<ReplicateResult> replicates;
  bool ok() const;
};

/// Runs all replicates (in parallel when threads > 1). Stage failures are
/// recorded per replicate and do not stop the run.
ScenarioResult run_scenario(const ScenarioConfig& config, int threads = 1);

/// Evaluates one replicate end to end, from simulation to metrics.
ReplicateResult run_replicate(const ScenarioConfig& config, int replicate);

inline constexpr const char* kResultsHeader =
    "scenario,replicate,d,p,K,T,alpha,lambda,rand_index,rel_err_max,rel_err_frob,precision,"
    "recall,f_score,wall_ms";

/// One row per replicate, then `mean` and `median` rows over successful
/// replicates. Failed replicates print `nan` metrics.
std::string results_csv(const std::vector<ScenarioResult>& results, bool header = true);

/// Config echo plus one record per replicate.
std::string manifest_json(const std::vector<ScenarioResult>& results);

}  // namespace lgbm
