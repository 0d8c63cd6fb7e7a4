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

#include "lgbm/model_gen.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "lgbm/simd/kernels.hpp"

namespace lgbm {
namespace {

constexpr double kMaxCondition = 1e12;

void require(bool ok, const char* what) {
  if (!ok) throw InvalidParameter(what);
}

}  // namespace

PrecisionGraph gen_independent_graph(int K, double c) {
  require(K >= 1, "gen_independent_graph: K must be >= 1");
  require(c > 0.0 && std::isfinite(c), "gen_independent_graph: c must be positive");
  PrecisionGraph g;
  g.K = K;
  g.O = c * Matrix::Identity(K, K);
  g.adjacency = BoolMatrix::Constant(K, K, false);
  return g;
}

PrecisionGraph gen_erdos_renyi_graph(int K, double prob, double c, double c1, Rng& rng) {
  require(K >= 1, "gen_erdos_renyi_graph: K must be >= 1");
  require(prob >= 0.0 && prob <= 1.0, "gen_erdos_renyi_graph: prob must lie in [0, 1]");
  require(c > 0.0 && std::isfinite(c), "gen_erdos_renyi_graph: c must be positive");
  require(c1 > 0.0 && std::isfinite(c1), "gen_erdos_renyi_graph: c1 must be positive");

  PrecisionGraph g;
  g.K = K;
  g.adjacency = BoolMatrix::Constant(K, K, false);
  Matrix weighted = Matrix::Zero(K, K);
  for (int i = 0; i < K; ++i) {
    for (int j = i + 1; j < K; ++j) {
      if (uniform01(rng) < prob) {
        g.adjacency(i, j) = g.adjacency(j, i) = true;
        weighted(i, j) = weighted(j, i) = c;
      }
    }
  }
  double lambda_min = 0.0;
  if (K > 1) {
    Eigen::SelfAdjointEigenSolver<Matrix> eig(weighted, Eigen::EigenvaluesOnly);
    lambda_min = eig.eigenvalues()(0);
    if (std::fabs(lambda_min) < 1e-10) lambda_min = 0.0;
  }
  g.O = weighted;
  g.O.diagonal().setConstant(std::fabs(lambda_min) + c1);
  return g;
}

Partition build_assignment(int d, int K) {
  require(d >= 1 && K >= 1, "build_assignment: d and K must be >= 1");
  if (d % K != 0) {
    throw InvalidParameter("build_assignment: K=" + std::to_string(K) +
                           " does not divide d=" + std::to_string(d));
  }
  const int m = d / K;
  std::vector<int> labels(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) labels[static_cast<std::size_t>(i)] = i / m;
  return Partition(std::move(labels), K);
}

Partition build_balanced_assignment(int d, int K) {
  require(d >= 1 && K >= 1 && K <= d, "build_balanced_assignment: need 1 <= K <= d");
  std::vector<int> labels(static_cast<std::size_t>(d));
  for (int i = 1; i <= d; ++i) {
    // ceil(i*K/d) in 1-based terms, integer arithmetic
    const long long num = static_cast<long long>(i) * K;
    labels[static_cast<std::size_t>(i - 1)] = static_cast<int>((num + d - 1) / d) - 1;
  }
  return Partition(std::move(labels), K);
}

BlockModel assemble_block_model(const PrecisionGraph& graph, const Partition& assignment,
                                Vector gamma) {
  const int K = graph.K;
  const int d = assignment.num_codes();
  require(graph.O.rows() == K && graph.O.cols() == K, "block model: O must be K x K");
  require(assignment.num_groups() == K, "block model: assignment must have K groups");
  require(gamma.size() == d, "block model: gamma must have length d");
  require((gamma.array() >= 0.0).all(), "block model: gamma must be nonnegative");

  Eigen::SelfAdjointEigenSolver<Matrix> eig(graph.O, Eigen::EigenvaluesOnly);
  const double lo = eig.eigenvalues()(0);
  const double hi = eig.eigenvalues()(K - 1);
  if (!(lo > 0.0) || hi / lo > kMaxCondition) {
    throw SingularMatrix("block model: O is singular or ill-conditioned (eigenvalues in [" +
                         std::to_string(lo) + ", " + std::to_string(hi) + "])");
  }
  Eigen::LLT<Matrix> llt(graph.O);
  if (llt.info() != Eigen::Success) throw SingularMatrix("block model: Cholesky of O failed");

  BlockModel model;
  model.graph = graph;
  model.assignment = assignment;
  Matrix q = llt.solve(Matrix::Identity(K, K));
  model.Q = 0.5 * (q + q.transpose());
  for (int i = 0; i < d; ++i) {
    if (assignment.group_size(assignment.label(i)) == 1) gamma(i) = 0.0;
  }
  model.gamma = std::move(gamma);
  model.Sigma.resize(d, d);
  for (int j = 0; j < d; ++j) {
    for (int i = 0; i < d; ++i) {
      model.Sigma(i, j) = model.Q(assignment.label(i), assignment.label(j));
    }
    model.Sigma(j, j) += model.gamma(j);
  }
  return model;
}

BlockModel build_block_model(const PrecisionGraph& graph, const Partition& assignment,
                             double gamma_low, double gamma_high, Rng& rng) {
  require(gamma_low >= 0.0 && gamma_low <= gamma_high,
          "build_block_model: need 0 <= gamma_low <= gamma_high");
  const int d = assignment.num_codes();
  Vector gamma(d);
  for (int i = 0; i < d; ++i) gamma(i) = gamma_low + (gamma_high - gamma_low) * uniform01(rng);
  return assemble_block_model(graph, assignment, std::move(gamma));
}

RowMatrix sample_embeddings(const BlockModel& model, int p, Rng& rng) {
  require(p >= 1, "sample_embeddings: p must be >= 1");
  const int d = model.num_codes();
  const int K = model.num_clusters();
  const Matrix chol = Eigen::LLT<Matrix>(model.Q).matrixL();
  const Vector noise_sd = model.gamma.array().sqrt();

  std::normal_distribution<double> n01(0.0, 1.0);
  RowMatrix v(d, p);
  Vector g(K);
  Vector z(K);
  for (int l = 0; l < p; ++l) {
    for (int k = 0; k < K; ++k) g(k) = n01(rng);
    z.noalias() = chol.triangularView<Eigen::Lower>() * g;
    for (int i = 0; i < d; ++i) {
      v(i, l) = z(model.assignment.label(i)) + noise_sd(i) * n01(rng);
    }
  }
  return v;
}

double cluster_gap(const Matrix& S, const Partition& partition) {
  const int d = partition.num_codes();
  require(S.rows() == d && S.cols() == d, "cluster_gap: shape mismatch");
  const auto& kern = simd::active();
  double gap = std::numeric_limits<double>::infinity();
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      if (partition.label(i) == partition.label(j)) continue;
      // columns of a symmetric matrix are its rows; split around i and j
      const double* a = S.col(i).data();
      const double* b = S.col(j).data();
      double m = kern.max_abs_diff(a, b, static_cast<std::size_t>(i));
      m = std::max(m, kern.max_abs_diff(a + i + 1, b + i + 1, static_cast<std::size_t>(j - i - 1)));
      m = std::max(m, kern.max_abs_diff(a + j + 1, b + j + 1, static_cast<std::size_t>(d - j - 1)));
      gap = std::min(gap, m);
    }
  }
  return gap;
}

std::string block_model_to_json(const BlockModel& model) {
  nlohmann::json j;
  const int K = model.num_clusters();
  j["K"] = K;
  j["d"] = model.num_codes();
  std::vector<int> labels;
  for (int l : model.assignment.labels()) labels.push_back(l + 1);
  j["labels"] = labels;
  std::vector<double> o;
  for (int r = 0; r < K; ++r) {
    for (int c = 0; c < K; ++c) o.push_back(model.graph.O(r, c));
  }
  j["O"] = o;
  j["gamma"] = std::vector<double>(model.gamma.data(), model.gamma.data() + model.gamma.size());
  j["seed"] = model.seed;
  return j.dump(2);
}

BlockModel block_model_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("block model json: ") + e.what(), 0);
  }
  try {
    const int K = j.at("K").get<int>();
    const int d = j.at("d").get<int>();
    auto labels = j.at("labels").get<std::vector<int>>();
    const auto o = j.at("O").get<std::vector<double>>();
    const auto gamma = j.at("gamma").get<std::vector<double>>();
    if (static_cast<int>(labels.size()) != d || static_cast<int>(gamma.size()) != d ||
        static_cast<int>(o.size()) != K * K) {
      throw InvalidParameter("block model json: inconsistent sizes");
    }
    for (int& l : labels) --l;
    PrecisionGraph g;
    g.K = K;
    g.O.resize(K, K);
    g.adjacency = BoolMatrix::Constant(K, K, false);
    for (int r = 0; r < K; ++r) {
      for (int c = 0; c < K; ++c) {
        g.O(r, c) = o[static_cast<std::size_t>(r * K + c)];
        g.adjacency(r, c) = r != c && g.O(r, c) != 0.0;
      }
    }
    BlockModel m = assemble_block_model(g, Partition(std::move(labels), K),
                                        Eigen::Map<const Vector>(gamma.data(), d));
    m.seed = j.value("seed", std::uint64_t{0});
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("block model json: ") + e.what(), 0);
  }
}

void write_block_model(const BlockModel& model, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << block_model_to_json(model) << '\n';
}

BlockModel read_block_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return block_model_from_json(buf.str());
}

}  // namespace lgbm
