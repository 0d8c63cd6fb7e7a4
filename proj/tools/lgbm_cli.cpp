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

// Command-line front end: each pipeline stage runs standalone on the file
// formats documented in README.md; `bench` chains them per scenario config.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "lgbm/bench.hpp"
#include "lgbm/cod_cluster.hpp"
#include "lgbm/cooc.hpp"
#include "lgbm/corpus_sim.hpp"
#include "lgbm/metrics.hpp"
#include "lgbm/model_gen.hpp"
#include "lgbm/pmi.hpp"
#include "lgbm/precision_est.hpp"
#include "lgbm/simd/kernels.hpp"

namespace fs = std::filesystem;
using namespace lgbm;

namespace {

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void spit(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << text;
}

SppmiMatrix load_sppmi(const fs::path& path) {
  SppmiMatrix s;
  s.values = read_dense_csv(path);
  s.eta = s.values.size() ? s.values.minCoeff() : kDefaultEta;
  return s;
}

struct SimulateArgs {
  std::string config;
  std::string scenario = "G1";
  int d = 25, p = 50, K = 25, q = 10, replicate = 0;
  long long T = 200000;
  std::uint64_t seed = 1;
  std::string out = "sim";
};

int run_simulate(const SimulateArgs& a) {
  ScenarioConfig cfg;
  if (!a.config.empty()) {
    cfg = configs_from_json(slurp(a.config)).front();
  } else {
    cfg.scenario = a.scenario;
    cfg.d = a.d;
    cfg.p = a.p;
    cfg.K = a.K;
    cfg.T = a.T;
    cfg.q = a.q;
    cfg.seed = a.seed;
  }
  const ReplicateData data = simulate_replicate(cfg, a.replicate);
  const fs::path out(a.out);
  fs::create_directories(out);
  write_block_model(data.model, out / "model.json");
  write_partition_csv(data.model.assignment, out / "partition_true.csv");
  write_sequences({data.tokens}, out / "tokens.txt");
  std::cout << "wrote " << data.tokens.size() << " tokens, d=" << cfg.d << " K=" << cfg.K
            << " to " << out.string() << '\n';
  return 0;
}

struct EvaluateArgs {
  std::string truth, estimate, model, o_hat, support;
};

int run_evaluate(const EvaluateArgs& a) {
  nlohmann::json report;
  if (!a.truth.empty() || !a.estimate.empty()) {
    if (a.truth.empty() || a.estimate.empty()) {
      throw InvalidParameter("evaluate: --truth and --estimate go together");
    }
    report["rand_index"] = rand_index(read_partition_csv(a.truth), read_partition_csv(a.estimate));
  }
  if (!a.o_hat.empty() || !a.support.empty()) {
    if (a.model.empty()) throw InvalidParameter("evaluate: --model is required with --o-hat/--support");
    const BlockModel model = read_block_model(a.model);
    if (!a.o_hat.empty()) {
      const Matrix o_hat = read_dense_csv(a.o_hat);
      report["rel_err_max"] = relative_error(o_hat, model.graph.O, NormKind::kMax);
      report["rel_err_frob"] = relative_error(o_hat, model.graph.O, NormKind::kFrobenius);
    }
    if (!a.support.empty()) {
      const BoolMatrix sup = (read_dense_csv(a.support).array() != 0.0).matrix();
      const SupportScore s = f_score(sup, model.graph.adjacency);
      report["precision"] = s.precision;
      report["recall"] = s.recall;
      report["f_score"] = s.f_score;
    }
  }
  if (report.empty()) throw InvalidParameter("evaluate: nothing to evaluate");
  std::cout << report.dump(2) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Latent graphical block model pipeline: simulate, count, PMI, cluster, estimate"};
  app.require_subcommand(1);
  std::string simd_choice = "auto";
  app.add_option("--simd", simd_choice, "Kernel backend")
      ->check(CLI::IsMember({"auto", "scalar", "avx2"}));

  // simulate
  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Generate a block model and a token corpus");
  simulate->add_option("--config", sim.config, "Scenario config JSON (first scenario is used)");
  simulate->add_option("--scenario", sim.scenario, "G1..G6");
  simulate->add_option("--d", sim.d);
  simulate->add_option("--p", sim.p);
  simulate->add_option("--K", sim.K);
  simulate->add_option("--T", sim.T);
  simulate->add_option("--seed", sim.seed);
  simulate->add_option("--replicate", sim.replicate, "Replicate index under the master seed");
  simulate->add_option("--out", sim.out, "Output directory");

  // cooc
  std::string cooc_in, cooc_out = "cooc.txt";
  int cooc_q = 10, cooc_d = 0, threads = 1;
  auto* cooc = app.add_subcommand("cooc", "Count windowed co-occurrences");
  cooc->add_option("--input", cooc_in, "Token file (one sequence per line)")->required();
  cooc->add_option("--output", cooc_out);
  cooc->add_option("--q", cooc_q, "Window size")->check(CLI::PositiveNumber);
  cooc->add_option("--d", cooc_d, "Number of codes (default: largest id seen)");
  cooc->add_option("--threads", threads);

  // pmi
  std::string pmi_in, pmi_out = "sppmi.csv";
  double eta = kDefaultEta;
  auto* pmi = app.add_subcommand("pmi", "Build the SPPMI matrix from counts");
  pmi->add_option("--input", pmi_in, "Co-occurrence file")->required();
  pmi->add_option("--output", pmi_out);
  pmi->add_option("--eta", eta, "Floor for PMI entries");

  // cluster
  std::string cl_in, cl_out = "partition.csv", cl_trace;
  std::optional<double> cl_alpha;
  int cl_p = 0;
  std::vector<double> cl_grid = default_grid();
  auto* cluster = app.add_subcommand("cluster", "Recover code clusters with COD");
  cluster->add_option("--input", cl_in, "SPPMI dense CSV")->required();
  cluster->add_option("--output", cl_out);
  cluster->add_option("--alpha", cl_alpha, "Fixed threshold (otherwise tuned; needs --p)");
  cluster->add_option("--p", cl_p, "Embedding dimension for the tuning scale");
  cluster->add_option("--grid", cl_grid, "Tuning multipliers");
  cluster->add_option("--trace", cl_trace, "CSV of per-grid-point partitions");

  // estimate
  std::string es_in, es_part, es_out = "estimate";
  std::optional<double> es_lambda, es_tau;
  int es_p = 0;
  double es_eps = kDefaultEpsFloor;
  std::vector<double> es_grid = default_grid();
  auto* estimate = app.add_subcommand("estimate", "Cluster averaging, CLIME, gamma and omega");
  estimate->add_option("--input", es_in, "SPPMI dense CSV")->required();
  estimate->add_option("--partition", es_part, "Partition CSV")->required();
  estimate->add_option("--out", es_out, "Output directory");
  estimate->add_option("--lambda", es_lambda, "Fixed lambda (otherwise tuned; needs --p)");
  estimate->add_option("--p", es_p);
  estimate->add_option("--grid", es_grid);
  estimate->add_option("--tau", es_tau, "Support threshold (default lambda)");
  estimate->add_option("--eps-floor", es_eps);
  estimate->add_option("--threads", threads);

  // evaluate
  EvaluateArgs ev;
  auto* evaluate = app.add_subcommand("evaluate", "Score estimates against ground truth");
  evaluate->add_option("--truth", ev.truth, "True partition CSV");
  evaluate->add_option("--estimate", ev.estimate, "Estimated partition CSV");
  evaluate->add_option("--model", ev.model, "model.json with the true O");
  evaluate->add_option("--o-hat", ev.o_hat, "Estimated O (dense CSV)");
  evaluate->add_option("--support", ev.support, "Estimated support (dense 0/1 CSV)");

  // bench
  std::string bench_cfg, bench_out = "bench_out";
  std::optional<std::uint64_t> bench_seed;
  std::optional<int> bench_reps;
  auto* bench = app.add_subcommand("bench", "Run simulation scenarios end to end");
  bench->add_option("--config", bench_cfg, "Scenario config or manifest JSON")->required();
  bench->add_option("--seed", bench_seed, "Override the master seed");
  bench->add_option("--replicates", bench_reps, "Override the replicate count");
  bench->add_option("--out", bench_out, "Output directory");
  bench->add_option("--threads", threads, "Replicates run concurrently");

  CLI11_PARSE(app, argc, argv);

  try {
    if (simd_choice == "scalar") {
      simd::set_backend(simd::Backend::kScalar);
    } else if (simd_choice == "avx2" && !simd::set_backend(simd::Backend::kAvx2)) {
      std::cerr << "avx2 kernels unavailable on this machine\n";
      return 2;
    }

    if (*simulate) return run_simulate(sim);

    if (*cooc) {
      auto seqs = read_sequences(cooc_in);
      int d = cooc_d;
      if (d <= 0) {
        for (const auto& s : seqs) {
          for (int t : s) d = std::max(d, t + 1);
        }
      }
      const CoocMatrix c = count_cooccurrences(seqs, d, cooc_q, threads);
      write_cooc(c, cooc_out);
      std::cout << "d=" << c.dim() << " q=" << c.window() << " total=" << c.total() << '\n';
      return 0;
    }

    if (*pmi) {
      const SppmiMatrix s = sppmi(empirical_pmi(read_cooc(pmi_in)), eta);
      write_dense_csv(s.values, pmi_out);
      std::cout << "wrote " << s.dim() << "x" << s.dim() << " SPPMI (eta=" << eta << ")\n";
      return 0;
    }

    if (*cluster) {
      const SppmiMatrix s = load_sppmi(cl_in);
      Partition part;
      if (cl_alpha) {
        part = cod_cluster(s, *cl_alpha);
        std::cout << "alpha=" << *cl_alpha;
      } else {
        if (cl_p < 1) throw InvalidParameter("cluster: --p is required when --alpha is absent");
        const AlphaTuning t = tune_alpha(s, s.dim(), cl_p, cl_grid);
        part = t.partition;
        std::cout << "c=" << t.c << " alpha=" << t.alpha;
        if (!cl_trace.empty()) {
          std::ostringstream os;
          os << "c,alpha,stability,groups,labels\n";
          for (const auto& e : t.trace) {
            os << e.c << ',' << e.alpha << ',' << e.stability << ',' << e.partition.num_groups()
               << ',';
            for (int i = 0; i < e.partition.num_codes(); ++i) {
              os << (i ? " " : "") << e.partition.label(i) + 1;
            }
            os << '\n';
          }
          spit(cl_trace, os.str());
        }
      }
      write_partition_csv(part, cl_out);
      std::cout << " groups=" << part.num_groups() << '\n';
      return 0;
    }

    if (*estimate) {
      const SppmiMatrix s = load_sppmi(es_in);
      const Partition part = read_partition_csv(es_part);
      EstimationOptions opt;
      opt.lambda = es_lambda;
      opt.lambda_grid = es_grid;
      opt.p = es_p;
      opt.tau = es_tau;
      opt.eps_floor = es_eps;
      opt.threads = threads;
      if (!es_lambda && es_p < 1) {
        throw InvalidParameter("estimate: --p is required when --lambda is absent");
      }
      const EstimationResult r = estimate_precision(s.values, part, opt);
      nlohmann::json extra{{"eps_floor", es_eps}, {"input", es_in}, {"partition", es_part}};
      write_estimation(r, es_out, extra.dump());
      std::cout << "lambda=" << r.lambda << " K=" << part.num_groups() << " -> " << es_out << '\n';
      return 0;
    }

    if (*evaluate) return run_evaluate(ev);

    if (*bench) {
      auto configs = configs_from_json(slurp(bench_cfg));
      std::vector<ScenarioResult> results;
      for (auto& cfg : configs) {
        if (bench_seed) cfg.seed = *bench_seed;
        if (bench_reps) cfg.replicates = *bench_reps;
        results.push_back(run_scenario(cfg, threads));
      }
      const fs::path out(bench_out);
      spit(out / "results.csv", results_csv(results));
      spit(out / "manifest.json", manifest_json(results) + "\n");
      bool ok = true;
      for (const auto& r : results) {
        for (const auto& rep : r.replicates) {
          if (rep.error) {
            ok = false;
            std::cerr << r.config.scenario << " replicate " << rep.replicate << ": " << *rep.error
                      << '\n';
          }
        }
      }
      std::cout << "wrote " << (out / "results.csv").string() << '\n';
      return ok ? 0 : 1;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
