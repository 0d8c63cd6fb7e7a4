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
#include <span>
#include <vector>

#include "lgbm/common.hpp"

namespace lgbm {

/// Latent random-walk state z and its direction c = z / |z|.
struct DiscourseState {
  Vector z;
  Vector c;
  double alpha = 1.0;
};

/// Code ids are 0-based in memory; the text format is 1-based.
using TokenSequence = std::vector<int>;

/// 1 - ln(d) / p^2. Throws InvalidParameter when the result is not in (0, 1).
double default_alpha(int d, int p);

/// Stationary start: z ~ N(0, I_p / p). Redraws in the (measure-zero) case
/// |z| < 1e-300.
DiscourseState init_discourse(int p, double alpha, Rng& rng);

/// z <- sqrt(alpha) z + sqrt(1 - alpha) r,  r ~ N(0, I_p / p);  c <- z / |z|.
void step_discourse(DiscourseState& state, Rng& rng);

/// Softmax of <V_j, c> over the rows of V, stabilized by max subtraction.
Vector emission_probs(const RowMatrix& V, std::span<const double> c);

/// Draws T tokens. At each step a token is sampled from emission_probs(V, c_t)
/// and the discourse state is advanced afterwards.
TokenSequence simulate_corpus(const RowMatrix& V, int T, double alpha, Rng& rng);

/// One sequence per line, whitespace-separated 1-based ids.
void write_sequences(const std::vector<TokenSequence>& sequences,
                     const std::filesystem::path& path);

/// Reads the text format back. Empty lines are empty sequences. When d > 0,
/// ids above d are rejected with a ParseError naming line and position.
std::vector<TokenSequence> read_sequences(const std::filesystem::path& path, int d = 0);

}  // namespace lgbm
