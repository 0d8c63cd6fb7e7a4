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

#include "lgbm/bench.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "lgbm/corpus_sim.hpp"
#include "lgbm/parallel.hpp"
#include "lgbm/simd/kernels.hpp"

namespace lgbm {
namespace {

using json = nlohmann::json;
using Clock = std::chrono::steady_clock;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

// Maps each estimated group to the truth label most of its codes carry. The
// relabelled partition is returned only if that map is a bijection.
std::optional<Partition> align_to_truth(const Partition& truth, const Partition& estimate) {
  if (truth.num_groups() != estimate.num_groups()) return std::nullopt;
  const int K = truth.num_groups();
  std::vector<int> map(static_cast<std::size_t>(K));
  std::vector<bool> used(static_cast<std::size_t>(K), false);
  for (int k = 0; k < K; ++k) {
    std::vector<int> votes(static_cast<std::size_t>(K), 0);
    for (int code : estimate.group(k)) ++votes[static_cast<std::size_t>(truth.label(code))];
    const int best = static_cast<int>(std::max_element(votes.begin(), votes.end()) - votes.begin());
    if (used[static_cast<std::size_t>(best)]) return std::nullopt;
    used[static_cast<std::size_t>(best)] = true;
    map[static_cast<std::size_t>(k)] = best;
  }
  std::vector<int> labels(static_cast<std::size_t>(estimate.num_codes()));
  for (int i = 0; i < estimate.num_codes(); ++i) {
    labels[static_cast<std::size_t>(i)] = map[static_cast<std::size_t>(estimate.label(i))];
  }
  return Partition(std::move(labels), K);
}

double median(std::vector<double> v) {
  v.erase(std::remove_if(v.begin(), v.end(), [](double x) { return std::isnan(x); }), v.end());
  if (v.empty()) return kNaN;
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double mean(const std::vector<double>& v) {
  double s = 0.0;
  int n = 0;
  for (double x : v) {
    if (!std::isnan(x)) {
      s += x;
      ++n;
    }
  }
  return n ? s / n : kNaN;
}

json graph_to_json(const GraphSpec& g) {
  json j;
  if (g.kind == GraphSpec::Kind::kIndependent) {
    j["type"] = "independent";
    j["c"] = g.c;
  } else {
    j["type"] = "erdos_renyi";
    j["prob"] = g.prob;
    j["c"] = g.c;
    j["c1"] = g.c1;
  }
  return j;
}

GraphSpec graph_from_json(const json& j) {
  GraphSpec g;
  const auto type = j.at("type").get<std::string>();
  if (type == "independent") {
    g.kind = GraphSpec::Kind::kIndependent;
    g.c = j.at("c").get<double>();
  } else if (type == "erdos_renyi") {
    g.kind = GraphSpec::Kind::kErdosRenyi;
    g.prob = j.at("prob").get<double>();
    g.c = j.at("c").get<double>();
    g.c1 = j.at("c1").get<double>();
  } else {
    throw InvalidParameter("config: unknown graph type `" + type + "`");
  }
  return g;
}

}  // namespace

GraphSpec scenario_graph(const std::string& id) {
  using K = GraphSpec::Kind;
  if (id == "G1") return {K::kIndependent, 0.5, 0.0, 0.0};
  if (id == "G2") return {K::kIndependent, 2.0, 0.0, 0.0};
  if (id == "G3") return {K::kErdosRenyi, 0.3, 0.2, 0.2};
  if (id == "G4") return {K::kErdosRenyi, 0.5, 0.3, 0.2};
  if (id == "G5") return {K::kErdosRenyi, 0.3, 0.2, 0.05};
  if (id == "G6") return {K::kErdosRenyi, 0.5, 0.3, 0.05};
  throw InvalidParameter("unknown scenario `" + id + "` (expected G1..G6 or a graph block)");
}

GraphSpec ScenarioConfig::resolved_graph() const {
  return graph ? *graph : scenario_graph(scenario);
}

void ScenarioConfig::validate() const {
  auto fail = [](const std::string& what) { throw InvalidParameter("config: " + what); };
  resolved_graph();
  if (d < 1) fail("d must be positive");
  if (p < 1) fail("p must be positive");
  if (K < 1 || K > d) fail("K must lie in [1, d]");
  if (T < 1) fail("T must be positive");
  if (T > std::numeric_limits<int>::max()) fail("T too large");
  if (q < 1) fail("q must be positive");
  if (replicates < 0) fail("replicates must be >= 0");
  if (alpha_grid.empty() || !std::is_sorted(alpha_grid.begin(), alpha_grid.end())) {
    fail("alpha_grid must be nonempty and ascending");
  }
  if (lambda_grid.empty() || !std::is_sorted(lambda_grid.begin(), lambda_grid.end()) ||
      lambda_grid.front() <= 0.0) {
    fail("lambda_grid must be nonempty, positive and ascending");
  }
  if (!(eps_floor > 0.0)) fail("eps_floor must be positive");
  if (tau && !(*tau >= 0.0)) fail("tau must be >= 0");
  if (!(gamma_low >= 0.0 && gamma_low <= gamma_high)) fail("need 0 <= gamma_low <= gamma_high");
  if (!std::isfinite(eta)) fail("eta must be finite");
  if (discourse_alpha && !(*discourse_alpha >= 0.0 && *discourse_alpha <= 1.0)) {
    fail("discourse_alpha must lie in [0, 1]");
  }
}

ScenarioConfig config_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("config: ") + e.what(), 0);
  }
  ScenarioConfig c;
  try {
    c.scenario = j.value("scenario", c.scenario);
    if (j.contains("graph") && !j["graph"].is_null()) c.graph = graph_from_json(j["graph"]);
    c.d = j.value("d", c.d);
    c.p = j.value("p", c.p);
    c.K = j.value("K", c.K);
    c.T = j.value("T", c.T);
    c.q = j.value("q", c.q);
    c.replicates = j.value("replicates", c.replicates);
    c.seed = j.value("seed", c.seed);
    c.eta = j.value("eta", c.eta);
    c.alpha_grid = j.value("alpha_grid", c.alpha_grid);
    c.lambda_grid = j.value("lambda_grid", c.lambda_grid);
    c.eps_floor = j.value("eps_floor", c.eps_floor);
    if (j.contains("tau") && !j["tau"].is_null()) c.tau = j["tau"].get<double>();
    if (j.contains("discourse_alpha") && !j["discourse_alpha"].is_null()) {
      c.discourse_alpha = j["discourse_alpha"].get<double>();
    }
    c.gamma_low = j.value("gamma_low", c.gamma_low);
    c.gamma_high = j.value("gamma_high", c.gamma_high);
    const auto mode = j.value("clustering_mode", std::string("oracle"));
    if (mode == "oracle") {
      c.clustering_mode = ClusteringMode::kOracle;
    } else if (mode == "tuned") {
      c.clustering_mode = ClusteringMode::kTuned;
    } else {
      throw InvalidParameter("config: clustering_mode must be `tuned` or `oracle`");
    }
    c.record_timing = j.value("record_timing", c.record_timing);
  } catch (const json::exception& e) {
    throw ParseError(std::string("config: ") + e.what(), 0);
  }
  c.validate();
  return c;
}

std::string config_to_json(const ScenarioConfig& c) {
  json j;
  j["scenario"] = c.scenario;
  j["graph"] = graph_to_json(c.resolved_graph());
  j["d"] = c.d;
  j["p"] = c.p;
  j["K"] = c.K;
  j["T"] = c.T;
  j["q"] = c.q;
  j["replicates"] = c.replicates;
  j["seed"] = c.seed;
  j["eta"] = c.eta;
  j["alpha_grid"] = c.alpha_grid;
  j["lambda_grid"] = c.lambda_grid;
  j["eps_floor"] = c.eps_floor;
  j["tau"] = c.tau ? json(*c.tau) : json(nullptr);
  j["discourse_alpha"] = c.discourse_alpha ? json(*c.discourse_alpha) : json(nullptr);
  j["gamma_low"] = c.gamma_low;
  j["gamma_high"] = c.gamma_high;
  j["clustering_mode"] = c.clustering_mode == ClusteringMode::kOracle ? "oracle" : "tuned";
  j["record_timing"] = c.record_timing;
  return j.dump(2);
}

std::vector<ScenarioConfig> configs_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("config: ") + e.what(), 0);
  }
  const json* list = &j;
  if (j.is_object() && j.contains("scenarios")) list = &j["scenarios"];
  std::vector<ScenarioConfig> out;
  if (list->is_array()) {
    for (const auto& item : *list) out.push_back(config_from_json(item.dump()));
  } else {
    out.push_back(config_from_json(list->dump()));
  }
  return out;
}

std::uint64_t replicate_seed(std::uint64_t master, int replicate) {
  return derive_seed(master, static_cast<std::uint64_t>(replicate));
}

ReplicateData simulate_replicate(const ScenarioConfig& config, int replicate) {
  config.validate();
  const std::uint64_t seed = replicate_seed(config.seed, replicate);
  Rng model_rng(derive_seed(seed, 0));
  Rng embed_rng(derive_seed(seed, 1));
  Rng corpus_rng(derive_seed(seed, 2));

  const GraphSpec g = config.resolved_graph();
  const PrecisionGraph graph =
      g.kind == GraphSpec::Kind::kIndependent
          ? gen_independent_graph(config.K, g.c)
          : gen_erdos_renyi_graph(config.K, g.prob, g.c, g.c1, model_rng);
  const Partition assignment = config.d % config.K == 0
                                   ? build_assignment(config.d, config.K)
                                   : build_balanced_assignment(config.d, config.K);

  ReplicateData data;
  data.model = build_block_model(graph, assignment, config.gamma_low, config.gamma_high, model_rng);
  data.model.seed = seed;
  data.embeddings = sample_embeddings(data.model, config.p, embed_rng);
  const double alpha = config.discourse_alpha.value_or(default_alpha(config.d, config.p));
  data.tokens = simulate_corpus(data.embeddings, static_cast<int>(config.T), alpha, corpus_rng);
  data.cooc = count_cooccurrences({data.tokens}, config.d, config.q);
  data.sppmi = sppmi(empirical_pmi(data.cooc), config.eta);
  return data;
}

ReplicateResult run_replicate(const ScenarioConfig& config, int replicate) {
  ReplicateResult r;
  r.replicate = replicate;
  r.seed = replicate_seed(config.seed, replicate);
  r.metrics = {kNaN, kNaN, kNaN, kNaN, kNaN, kNaN};
  r.alpha = r.lambda = r.baseline_rel_err_frob = kNaN;
  const auto start = Clock::now();
  std::string stage = "simulate";
  try {
    auto t0 = Clock::now();
    const ReplicateData data = simulate_replicate(config, replicate);
    r.stage_ms["simulate"] = ms_since(t0);
    const Partition& truth = data.model.assignment;

    stage = "cluster";
    t0 = Clock::now();
    const AlphaTuning tuning = tune_alpha(data.sppmi, config.d, config.p, config.alpha_grid);
    r.alpha = tuning.alpha;
    r.k_hat = tuning.partition.num_groups();
    r.metrics.rand_index = rand_index(truth, tuning.partition);
    r.stage_ms["cluster"] = ms_since(t0);

    stage = "estimate";
    t0 = Clock::now();
    std::optional<Partition> working;
    if (config.clustering_mode == ClusteringMode::kOracle) {
      working = truth;
    } else {
      working = align_to_truth(truth, tuning.partition);
    }
    if (working) {
      EstimationOptions opt;
      opt.lambda_grid = config.lambda_grid;
      opt.p = config.p;
      opt.eps_floor = config.eps_floor;
      opt.tau = config.tau;
      const EstimationResult est = estimate_precision(data.sppmi.values, *working, opt);
      r.lambda = est.lambda;
      const Matrix& O = data.model.graph.O;
      r.metrics.rel_err_max = relative_error(est.o_hat, O, NormKind::kMax);
      r.metrics.rel_err_frobenius = relative_error(est.o_hat, O, NormKind::kFrobenius);
      const SupportScore s = f_score(est.support, data.model.graph.adjacency);
      r.metrics.precision = s.precision;
      r.metrics.recall = s.recall;
      r.metrics.f_score = s.f_score;

      const QHat rep = representative_q(data.sppmi.values, *working);
      const LambdaTuning base = tune_lambda(rep.values, config.d, config.p, config.lambda_grid);
      r.baseline_rel_err_frob = relative_error(base.clime.o_hat, O, NormKind::kFrobenius);
    }
    r.stage_ms["estimate"] = ms_since(t0);
  } catch (const std::exception& e) {
    r.error = stage + ": " + e.what();
  }
  r.wall_ms = ms_since(start);
  return r;
}

bool ScenarioResult::ok() const {
  return std::none_of(replicates.begin(), replicates.end(),
                      [](const ReplicateResult& r) { return r.error.has_value(); });
}

ScenarioResult run_scenario(const ScenarioConfig& config, int threads) {
  config.validate();
  ScenarioResult out;
  out.config = config;
  out.replicates.resize(static_cast<std::size_t>(config.replicates));
  parallel_for(out.replicates.size(), threads, [&](std::size_t i) {
    out.replicates[i] = run_replicate(config, static_cast<int>(i));
  });
  return out;
}

std::string results_csv(const std::vector<ScenarioResult>& results, bool header) {
  std::ostringstream os;
  if (header) os << kResultsHeader << '\n';
  for (const auto& res : results) {
    const auto& c = res.config;
    auto row = [&](const std::string& key, double alpha, double lambda, const MetricReport& m,
                   double wall) {
      os << c.scenario << ',' << key << ',' << c.d << ',' << c.p << ',' << c.K << ',' << c.T
         << ',' << fmt(alpha) << ',' << fmt(lambda) << ',' << fmt(m.rand_index) << ','
         << fmt(m.rel_err_max) << ',' << fmt(m.rel_err_frobenius) << ',' << fmt(m.precision)
         << ',' << fmt(m.recall) << ',' << fmt(m.f_score) << ','
         << fmt(c.record_timing ? wall : 0.0) << '\n';
    };
    std::vector<std::vector<double>> cols(9);
    for (const auto& r : res.replicates) {
      const bool failed = r.error.has_value();
      MetricReport m = r.metrics;
      if (failed) m = {kNaN, kNaN, kNaN, kNaN, kNaN, kNaN};
      row(std::to_string(r.replicate), failed ? kNaN : r.alpha, failed ? kNaN : r.lambda, m,
          r.wall_ms);
      if (failed) continue;
      const double vals[] = {r.alpha,         r.lambda,        m.rand_index,
                             m.rel_err_max,   m.rel_err_frobenius, m.precision,
                             m.recall,        m.f_score,       r.wall_ms};
      for (std::size_t k = 0; k < cols.size(); ++k) cols[k].push_back(vals[k]);
    }
    if (res.replicates.empty()) continue;
    for (const char* agg : {"mean", "median"}) {
      const bool is_mean = std::string(agg) == "mean";
      std::vector<double> a(cols.size());
      for (std::size_t k = 0; k < cols.size(); ++k) a[k] = is_mean ? mean(cols[k]) : median(cols[k]);
      row(agg, a[0], a[1], MetricReport{a[2], a[3], a[4], a[5], a[6], a[7]}, a[8]);
    }
  }
  return os.str();
}

std::string manifest_json(const std::vector<ScenarioResult>& results) {
  json m;
  m["software"] = {{"name", "lgbm"},
                   {"version", kVersion},
                   {"simd", std::string(simd::backend_name(simd::active().backend))}};
  m["seed_scheme"] =
      "replicate r uses splitmix64(seed + r * 0x9E3779B97F4A7C15); stages 0/1/2 = "
      "model/embeddings/corpus derive from it the same way";
  json scenarios = json::array();
  for (const auto& res : results) {
    json s = json::parse(config_to_json(res.config));
    json reps = json::array();
    for (const auto& r : res.replicates) {
      json e;
      e["replicate"] = r.replicate;
      e["seed"] = r.seed;
      e["k_hat"] = r.k_hat;
      // Timings make the manifest irreproducible, so they are opt-in.
      if (res.config.record_timing) {
        e["stage_ms"] = r.stage_ms;
        e["wall_ms"] = r.wall_ms;
      }
      e["baseline_rel_err_frob"] =
          std::isnan(r.baseline_rel_err_frob) ? json(nullptr) : json(r.baseline_rel_err_frob);
      e["error"] = r.error ? json(*r.error) : json(nullptr);
      reps.push_back(e);
    }
    s["replicate_runs"] = reps;
    scenarios.push_back(s);
  }
  m["scenarios"] = scenarios;
  return m.dump(2);
}

}  // namespace lgbm
