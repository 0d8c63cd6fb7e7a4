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

#include "lgbm/pmi.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <string>
#include <system_error>

namespace lgbm {

PmiMatrix empirical_pmi(const CoocMatrix& cooc) {
  if (cooc.total() == 0) throw EmptyCorpus("empirical_pmi: no co-occurrences counted");
  const int d = cooc.dim();
  const auto& margin = cooc.row_margins();
  const double log_total = std::log(static_cast<double>(cooc.total()));
  Vector log_margin(d);
  for (int i = 0; i < d; ++i) {
    log_margin(i) = std::log(static_cast<double>(margin[static_cast<std::size_t>(i)]));
  }
  PmiMatrix out{Matrix::Constant(d, d, kNegInf)};
  for (const auto& e : cooc.upper_entries()) {
    // log differences avoid overflow of total * count for large corpora
    const double v = log_total + std::log(static_cast<double>(e.count)) - log_margin(e.i) -
                     log_margin(e.j);
    out.values(e.i, e.j) = v;
    out.values(e.j, e.i) = v;
  }
  return out;
}

SppmiMatrix sppmi(const PmiMatrix& pmi, double eta) {
  if (!std::isfinite(eta)) throw InvalidParameter("sppmi: eta must be finite");
  SppmiMatrix out;
  out.eta = eta;
  out.values = pmi.values.cwiseMax(eta);
  return out;
}

void write_dense_csv(const Matrix& m, const std::filesystem::path& path) {
  if (m.rows() != m.cols()) throw InvalidParameter("write_dense_csv: matrix must be square");
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << m.rows() << '\n';
  char buf[64];
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (c) out << ',';
      const auto res = std::to_chars(buf, buf + sizeof(buf), m(r, c));
      out.write(buf, res.ptr - buf);
    }
    out << '\n';
  }
}

Matrix read_dense_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::string line;
  std::size_t lineno = 1;
  if (!std::getline(in, line)) throw ParseError("dense csv: missing header", lineno);
  long d = -1;
  {
    const auto res = std::from_chars(line.data(), line.data() + line.size(), d);
    if (res.ec != std::errc() || d < 0 ||
        line.find_first_not_of(" \r", static_cast<std::size_t>(res.ptr - line.data())) !=
            std::string::npos) {
      throw ParseError("dense csv: header must be the dimension d", lineno);
    }
  }
  Matrix m(d, d);
  for (long r = 0; r < d; ++r) {
    ++lineno;
    if (!std::getline(in, line)) throw ParseError("dense csv: missing row", lineno);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const char* p = line.data();
    const char* end = p + line.size();
    for (long c = 0; c < d; ++c) {
      double v = 0.0;
      const auto res = std::from_chars(p, end, v);
      if (res.ec != std::errc()) {
        throw ParseError("dense csv: bad value in column " + std::to_string(c + 1), lineno);
      }
      m(r, c) = v;
      p = res.ptr;
      if (c + 1 < d) {
        if (p == end || *p != ',') {
          throw ParseError("dense csv: expected " + std::to_string(d) + " columns", lineno);
        }
        ++p;
      }
    }
    if (p != end) throw ParseError("dense csv: trailing data", lineno);
  }
  return m;
}

}  // namespace lgbm
