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
#include <vector>

#include "lgbm/common.hpp"

namespace lgbm {

/// A partition of codes {0..d-1} into K nonempty disjoint groups.
///
/// Labels are 0-based in memory and 1-based in every file format. Group k is
/// the set of codes whose label is k; groups are kept sorted by code id.
class Partition {
 public:
  Partition() = default;

  /// Validates that every label lies in [0, num_groups) and that every
  /// group is nonempty. Throws InvalidParameter otherwise.
  Partition(std::vector<int> labels, int num_groups);

  /// Builds from explicit groups. Groups must be disjoint, nonempty and
  /// cover 0..d-1; group order determines the label.
  static Partition from_groups(const std::vector<std::vector<int>>& groups, int d);

  int num_codes() const { return static_cast<int>(labels_.size()); }
  int num_groups() const { return num_groups_; }
  int label(int code) const { return labels_[static_cast<std::size_t>(code)]; }
  const std::vector<int>& labels() const { return labels_; }
  const std::vector<int>& group(int k) const { return groups_[static_cast<std::size_t>(k)]; }
  const std::vector<std::vector<int>>& groups() const { return groups_; }
  int group_size(int k) const { return static_cast<int>(group(k).size()); }

  /// d x K membership matrix A with A(i, k) = 1 iff label(i) == k.
  Matrix membership() const;

  bool operator==(const Partition& other) const;

 private:
  std::vector<int> labels_;
  int num_groups_ = 0;
  std::vector<std::vector<int>> groups_;
};

/// True when both partitions group the codes identically, ignoring label ids.
bool same_grouping(const Partition& a, const Partition& b);

/// CSV with header `code_id,cluster_id`, both 1-based, one row per code.
void write_partition_csv(const Partition& partition, const std::filesystem::path& path);
Partition read_partition_csv(const std::filesystem::path& path);

}  // namespace lgbm
