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
#include <vector>

#include "lgbm/common.hpp"
#include "lgbm/corpus_sim.hpp"

namespace lgbm {

/// Symmetric windowed co-occurrence counts.
///
/// C(w, w') counts ordered position pairs (t, s) inside one sequence with
/// 0 < |t - s| <= q, token_t = w and token_s = w'. Only the upper triangle
/// (i <= j) is stored, sorted by (i, j); C(j, i) == C(i, j).
class CoocMatrix {
 public:
  struct Entry {
    int i;
    int j;
    std::uint64_t count;
    bool operator==(const Entry&) const = default;
  };

  CoocMatrix() = default;

  /// Entries are nonzero upper-triangle counts (0 <= i <= j < d) sorted by
  /// (i, j). Margins and total are derived.
  CoocMatrix(int d, int q, std::vector<Entry> upper);

  int dim() const { return d_; }
  int window() const { return q_; }
  std::uint64_t total() const { return total_; }
  const std::vector<std::uint64_t>& row_margins() const { return margins_; }
  const std::vector<Entry>& upper_entries() const { return upper_; }

  /// C(i, j) for 0-based ids; symmetric.
  std::uint64_t count(int i, int j) const;

  /// Dense d x d copy of the counts.
  Matrix to_dense() const;

  bool operator==(const CoocMatrix& other) const {
    return d_ == other.d_ && q_ == other.q_ && upper_ == other.upper_;
  }

 private:
  int d_ = 0;
  int q_ = 0;
  std::vector<Entry> upper_;
  std::vector<std::uint64_t> margins_;
  std::uint64_t total_ = 0;
};

/// Counts over all sequences; windows never cross sequence boundaries.
/// Sequences are split across `threads` workers whose partial counts are
/// summed, so the result does not depend on the thread count.
///
/// Throws ParseError (line = 1-based sequence index) when an id is outside
/// [0, d).
CoocMatrix count_cooccurrences(const std::vector<TokenSequence>& sequences, int d, int q,
                               int threads = 1);

/// Text format: header `d q total`, then `i j count` per nonzero upper
/// triangle entry (1-based, i <= j).
void write_cooc(const CoocMatrix& cooc, const std::filesystem::path& path);
CoocMatrix read_cooc(const std::filesystem::path& path);

}  // namespace lgbm
