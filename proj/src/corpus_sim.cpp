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

#include "lgbm/corpus_sim.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "lgbm/simd/kernels.hpp"

namespace lgbm {
namespace {

void draw_direction(DiscourseState& s) {
  const double norm = s.z.norm();
  s.c = s.z / norm;
}

void advance(DiscourseState& s, Rng& rng, std::normal_distribution<double>& n01, Vector& r) {
  const auto p = static_cast<std::size_t>(s.z.size());
  const double scale = 1.0 / std::sqrt(static_cast<double>(p));
  for (std::size_t i = 0; i < p; ++i) r(static_cast<Eigen::Index>(i)) = scale * n01(rng);
  simd::active().axpby(std::sqrt(s.alpha), s.z.data(), std::sqrt(1.0 - s.alpha), r.data(), p);
  draw_direction(s);
}

// Unnormalized softmax weights into `w`, returns their sum.
double softmax_weights(const simd::KernelTable& kern, const RowMatrix& V, const double* c,
                       Vector& w) {
  const auto d = static_cast<std::size_t>(V.rows());
  const auto p = static_cast<std::size_t>(V.cols());
  kern.matvec(V.data(), d, p, c, p, w.data());
  const double top = w.maxCoeff();
  double total = 0.0;
  for (std::size_t j = 0; j < d; ++j) {
    const double e = std::exp(w(static_cast<Eigen::Index>(j)) - top);
    w(static_cast<Eigen::Index>(j)) = e;
    total += e;
  }
  return total;
}

}  // namespace

double default_alpha(int d, int p) {
  if (d < 1 || p < 1) throw InvalidParameter("default_alpha: d and p must be >= 1");
  const double a = 1.0 - std::log(static_cast<double>(d)) / (static_cast<double>(p) * p);
  if (!(a > 0.0) || !(a < 1.0)) {
    throw InvalidParameter("default_alpha: 1 - ln(d)/p^2 = " + std::to_string(a) +
                           " is outside (0, 1)");
  }
  return a;
}

DiscourseState init_discourse(int p, double alpha, Rng& rng) {
  if (p < 1) throw InvalidParameter("init_discourse: p must be >= 1");
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw InvalidParameter("init_discourse: alpha in [0, 1]");
  std::normal_distribution<double> n01(0.0, 1.0);
  DiscourseState s;
  s.alpha = alpha;
  s.z.resize(p);
  const double scale = 1.0 / std::sqrt(static_cast<double>(p));
  do {
    for (int i = 0; i < p; ++i) s.z(i) = scale * n01(rng);
  } while (s.z.norm() < 1e-300);
  draw_direction(s);
  return s;
}

void step_discourse(DiscourseState& state, Rng& rng) {
  std::normal_distribution<double> n01(0.0, 1.0);
  Vector r(state.z.size());
  advance(state, rng, n01, r);
}

Vector emission_probs(const RowMatrix& V, std::span<const double> c) {
  if (static_cast<Eigen::Index>(c.size()) != V.cols()) {
    throw InvalidParameter("emission_probs: dimension mismatch");
  }
  Vector w(V.rows());
  const double total = softmax_weights(simd::active(), V, c.data(), w);
  return w / total;
}

TokenSequence simulate_corpus(const RowMatrix& V, int T, double alpha, Rng& rng) {
  if (T < 0) throw InvalidParameter("simulate_corpus: T must be >= 0");
  TokenSequence tokens;
  if (T == 0) return tokens;
  tokens.reserve(static_cast<std::size_t>(T));
  const int d = static_cast<int>(V.rows());
  const int p = static_cast<int>(V.cols());
  const auto& kern = simd::active();

  DiscourseState state = init_discourse(p, alpha, rng);
  std::normal_distribution<double> n01(0.0, 1.0);
  Vector r(p);
  Vector w(d);
  for (int t = 0; t < T; ++t) {
    const double total = softmax_weights(kern, V, state.c.data(), w);
    const double u = uniform01(rng) * total;
    double acc = 0.0;
    int pick = d - 1;
    for (int j = 0; j < d; ++j) {
      acc += w(j);
      if (u < acc) {
        pick = j;
        break;
      }
    }
    tokens.push_back(pick);
    if (t + 1 < T) advance(state, rng, n01, r);
  }
  return tokens;
}

void write_sequences(const std::vector<TokenSequence>& sequences,
                     const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  for (const auto& seq : sequences) {
    for (std::size_t i = 0; i < seq.size(); ++i) {
      if (i) out << ' ';
      out << (seq[i] + 1);
    }
    out << '\n';
  }
}

std::vector<TokenSequence> read_sequences(const std::filesystem::path& path, int d) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<TokenSequence> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream row(line);
    TokenSequence seq;
    std::string tok;
    while (row >> tok) {
      std::size_t used = 0;
      long id = 0;
      try {
        id = std::stol(tok, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      const std::string where = "position " + std::to_string(seq.size() + 1);
      if (used != tok.size()) throw ParseError("tokens: bad id `" + tok + "` at " + where, lineno);
      if (id < 1 || (d > 0 && id > d)) {
        throw ParseError("tokens: id " + tok + " out of range at " + where, lineno);
      }
      seq.push_back(static_cast<int>(id - 1));
    }
    out.push_back(std::move(seq));
  }
  return out;
}

}  // namespace lgbm
