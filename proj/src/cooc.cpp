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

#include "lgbm/cooc.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <unordered_map>

namespace lgbm {
namespace {

// Dense accumulation below this dimension, hashed above it.
constexpr int kDenseLimit = 2048;

inline std::uint64_t pack(int i, int j) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(i)) << 32) |
         static_cast<std::uint32_t>(j);
}

class Accumulator {
 public:
  explicit Accumulator(int d) : d_(d) {
    if (d_ <= kDenseLimit) dense_.assign(static_cast<std::size_t>(d_) * d_, 0);
  }

  // One ordered pair in each direction.
  void add_pair(int a, int b) {
    const int i = std::min(a, b);
    const int j = std::max(a, b);
    const std::uint64_t inc = (i == j) ? 2 : 1;
    if (!dense_.empty()) {
      dense_[static_cast<std::size_t>(i) * d_ + j] += inc;
    } else {
      sparse_[pack(i, j)] += inc;
    }
  }

  void merge_into(Accumulator& dst) const {
    if (!dense_.empty()) {
      for (std::size_t k = 0; k < dense_.size(); ++k) dst.dense_[k] += dense_[k];
    } else {
      for (const auto& [key, v] : sparse_) dst.sparse_[key] += v;
    }
  }

  std::vector<CoocMatrix::Entry> entries() const {
    std::vector<CoocMatrix::Entry> out;
    if (!dense_.empty()) {
      for (int i = 0; i < d_; ++i) {
        for (int j = i; j < d_; ++j) {
          const auto v = dense_[static_cast<std::size_t>(i) * d_ + j];
          if (v) out.push_back({i, j, v});
        }
      }
    } else {
      out.reserve(sparse_.size());
      for (const auto& [key, v] : sparse_) {
        out.push_back({static_cast<int>(key >> 32), static_cast<int>(key & 0xffffffffULL), v});
      }
      std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        return a.i != b.i ? a.i < b.i : a.j < b.j;
      });
    }
    return out;
  }

 private:
  int d_;
  std::vector<std::uint64_t> dense_;
  std::unordered_map<std::uint64_t, std::uint64_t> sparse_;
};

void count_range(const std::vector<TokenSequence>& seqs, std::size_t begin, std::size_t end,
                 int q, Accumulator& acc) {
  for (std::size_t s = begin; s < end; ++s) {
    const auto& seq = seqs[s];
    const std::size_t n = seq.size();
    for (std::size_t t = 0; t < n; ++t) {
      const std::size_t stop = std::min(n, t + static_cast<std::size_t>(q) + 1);
      for (std::size_t u = t + 1; u < stop; ++u) acc.add_pair(seq[t], seq[u]);
    }
  }
}

}  // namespace

CoocMatrix::CoocMatrix(int d, int q, std::vector<Entry> upper)
    : d_(d), q_(q), upper_(std::move(upper)), margins_(static_cast<std::size_t>(d), 0) {
  if (d < 0 || q < 1) throw InvalidParameter("cooc: need d >= 0 and q >= 1");
  for (std::size_t k = 0; k < upper_.size(); ++k) {
    const auto& e = upper_[k];
    if (e.i < 0 || e.j >= d || e.i > e.j) throw InvalidParameter("cooc: entry out of range");
    if (e.count == 0) throw InvalidParameter("cooc: zero entries are not stored");
    if (k > 0) {
      const auto& prev = upper_[k - 1];
      if (prev.i > e.i || (prev.i == e.i && prev.j >= e.j)) {
        throw InvalidParameter("cooc: entries must be strictly sorted");
      }
    }
    margins_[static_cast<std::size_t>(e.i)] += e.count;
    if (e.i != e.j) margins_[static_cast<std::size_t>(e.j)] += e.count;
  }
  for (auto m : margins_) total_ += m;
}

std::uint64_t CoocMatrix::count(int i, int j) const {
  if (i > j) std::swap(i, j);
  auto it = std::lower_bound(upper_.begin(), upper_.end(), Entry{i, j, 0},
                             [](const Entry& a, const Entry& b) {
                               return a.i != b.i ? a.i < b.i : a.j < b.j;
                             });
  return (it != upper_.end() && it->i == i && it->j == j) ? it->count : 0;
}

Matrix CoocMatrix::to_dense() const {
  Matrix m = Matrix::Zero(d_, d_);
  for (const auto& e : upper_) {
    m(e.i, e.j) = static_cast<double>(e.count);
    m(e.j, e.i) = static_cast<double>(e.count);
  }
  return m;
}

CoocMatrix count_cooccurrences(const std::vector<TokenSequence>& sequences, int d, int q,
                               int threads) {
  if (q < 1) throw InvalidParameter("count_cooccurrences: q must be >= 1");
  if (d < 0) throw InvalidParameter("count_cooccurrences: d must be >= 0");
  for (std::size_t s = 0; s < sequences.size(); ++s) {
    const auto& seq = sequences[s];
    for (std::size_t t = 0; t < seq.size(); ++t) {
      if (seq[t] < 0 || seq[t] >= d) {
        throw ParseError("co-occurrence: id " + std::to_string(seq[t] + 1) + " at position " +
                             std::to_string(t + 1) + " outside [1, " + std::to_string(d) + "]",
                         s + 1);
      }
    }
  }

  const std::size_t n = sequences.size();
  const std::size_t workers =
      std::clamp<std::size_t>(static_cast<std::size_t>(std::max(threads, 1)), 1, std::max<std::size_t>(n, 1));
  Accumulator total(d);
  if (workers == 1) {
    count_range(sequences, 0, n, q, total);
  } else {
    std::vector<Accumulator> partial(workers, Accumulator(d));
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        count_range(sequences, n * w / workers, n * (w + 1) / workers, q, partial[w]);
      });
    }
    for (auto& th : pool) th.join();
    for (const auto& p : partial) p.merge_into(total);
  }
  return CoocMatrix(d, q, total.entries());
}

void write_cooc(const CoocMatrix& cooc, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << cooc.dim() << ' ' << cooc.window() << ' ' << cooc.total() << '\n';
  for (const auto& e : cooc.upper_entries()) {
    out << (e.i + 1) << ' ' << (e.j + 1) << ' ' << e.count << '\n';
  }
}

namespace {

// Parses a nonnegative integer token; rejects signs and trailing garbage.
bool parse_count(const std::string& tok, std::uint64_t& value) {
  if (tok.empty() || !std::all_of(tok.begin(), tok.end(), ::isdigit)) return false;
  try {
    value = std::stoull(tok);
  } catch (const std::exception&) {
    return false;
  }
  return true;
}

}  // namespace

CoocMatrix read_cooc(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::string line;
  std::size_t lineno = 0;

  auto fields = [&](std::size_t expected) {
    std::istringstream row(line);
    std::vector<std::uint64_t> v;
    std::string tok;
    while (row >> tok) {
      std::uint64_t x = 0;
      if (!parse_count(tok, x)) throw ParseError("cooc: bad field `" + tok + "`", lineno);
      v.push_back(x);
    }
    if (v.size() != expected) {
      throw ParseError("cooc: expected " + std::to_string(expected) + " fields", lineno);
    }
    return v;
  };

  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty()) break;
  }
  if (line.empty()) throw ParseError("cooc: missing header `d q total`", std::max<std::size_t>(lineno, 1));
  const auto header = fields(3);
  const auto d = static_cast<int>(header[0]);
  const auto q = static_cast<int>(header[1]);
  if (q < 1) throw ParseError("cooc: window must be >= 1", lineno);

  std::vector<CoocMatrix::Entry> entries;
  std::set<std::pair<std::uint64_t, std::uint64_t>> seen;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto f = fields(3);
    if (f[0] < 1 || f[1] < f[0] || f[1] > static_cast<std::uint64_t>(d)) {
      throw ParseError("cooc: need 1 <= i <= j <= d", lineno);
    }
    const std::pair<std::uint64_t, std::uint64_t> key{f[0], f[1]};
    if (!seen.insert(key).second) {
      throw ParseError("cooc: duplicate entry (" + std::to_string(f[0]) + ", " +
                           std::to_string(f[1]) + ")",
                       lineno);
    }
    if (f[2] == 0) continue;
    entries.push_back({static_cast<int>(f[0] - 1), static_cast<int>(f[1] - 1), f[2]});
  }
  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) { return a.i != b.i ? a.i < b.i : a.j < b.j; });
  CoocMatrix out(d, q, std::move(entries));
  if (out.total() != header[2]) {
    throw ParseError("cooc: header total " + std::to_string(header[2]) +
                         " disagrees with entries (" + std::to_string(out.total()) + ")",
                     1);
  }
  return out;
}

}  // namespace lgbm
