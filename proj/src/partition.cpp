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

#include "lgbm/partition.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

namespace lgbm {

Partition::Partition(std::vector<int> labels, int num_groups)
    : labels_(std::move(labels)), num_groups_(num_groups) {
  if (num_groups_ < 0) throw InvalidParameter("partition: negative group count");
  groups_.assign(static_cast<std::size_t>(num_groups_), {});
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    const int k = labels_[i];
    if (k < 0 || k >= num_groups_) {
      throw InvalidParameter("partition: label " + std::to_string(k) + " of code " +
                             std::to_string(i) + " outside [0, " + std::to_string(num_groups_) +
                             ")");
    }
    groups_[static_cast<std::size_t>(k)].push_back(static_cast<int>(i));
  }
  for (int k = 0; k < num_groups_; ++k) {
    if (groups_[static_cast<std::size_t>(k)].empty()) {
      throw InvalidParameter("partition: group " + std::to_string(k) + " is empty");
    }
  }
}

Partition Partition::from_groups(const std::vector<std::vector<int>>& groups, int d) {
  std::vector<int> labels(static_cast<std::size_t>(d), -1);
  for (std::size_t k = 0; k < groups.size(); ++k) {
    for (int code : groups[k]) {
      if (code < 0 || code >= d) throw InvalidParameter("partition: code id out of range");
      if (labels[static_cast<std::size_t>(code)] != -1) {
        throw InvalidParameter("partition: code " + std::to_string(code) + " in two groups");
      }
      labels[static_cast<std::size_t>(code)] = static_cast<int>(k);
    }
  }
  for (int i = 0; i < d; ++i) {
    if (labels[static_cast<std::size_t>(i)] == -1) {
      throw InvalidParameter("partition: code " + std::to_string(i) + " not covered");
    }
  }
  return Partition(std::move(labels), static_cast<int>(groups.size()));
}

Matrix Partition::membership() const {
  Matrix a = Matrix::Zero(num_codes(), num_groups_);
  for (int i = 0; i < num_codes(); ++i) a(i, label(i)) = 1.0;
  return a;
}

bool Partition::operator==(const Partition& other) const {
  return num_groups_ == other.num_groups_ && labels_ == other.labels_;
}

bool same_grouping(const Partition& a, const Partition& b) {
  if (a.num_codes() != b.num_codes() || a.num_groups() != b.num_groups()) return false;
  std::vector<int> map(static_cast<std::size_t>(a.num_groups()), -1);
  for (int i = 0; i < a.num_codes(); ++i) {
    int& m = map[static_cast<std::size_t>(a.label(i))];
    if (m == -1) m = b.label(i);
    if (m != b.label(i)) return false;
  }
  return true;
}

void write_partition_csv(const Partition& partition, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << "code_id,cluster_id\n";
  for (int i = 0; i < partition.num_codes(); ++i) {
    out << (i + 1) << ',' << (partition.label(i) + 1) << '\n';
  }
}

Partition read_partition_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::string line;
  std::size_t lineno = 0;
  std::map<int, int> by_code;
  int max_cluster = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (lineno == 1 && line.rfind("code_id", 0) == 0) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream row(line);
    long code = 0;
    long cluster = 0;
    std::string extra;
    if (!(row >> code >> cluster) || (row >> extra)) {
      throw ParseError("partition: expected `code_id,cluster_id`", lineno);
    }
    if (code < 1 || cluster < 1) throw ParseError("partition: ids are 1-based", lineno);
    if (!by_code.emplace(static_cast<int>(code), static_cast<int>(cluster)).second) {
      throw ParseError("partition: duplicate code " + std::to_string(code), lineno);
    }
    max_cluster = std::max(max_cluster, static_cast<int>(cluster));
  }
  const int d = static_cast<int>(by_code.size());
  std::vector<int> labels(static_cast<std::size_t>(d));
  for (const auto& [code, cluster] : by_code) {
    if (code > d) throw ParseError("partition: code ids must be 1..d", lineno);
    labels[static_cast<std::size_t>(code - 1)] = cluster - 1;
  }
  return Partition(std::move(labels), max_cluster);
}

}  // namespace lgbm
