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

#include <filesystem>
#include <fstream>

#include <doctest.h>

#include "lgbm/partition.hpp"

using namespace lgbm;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "lgbm_test_partition";
  fs::create_directories(dir);
  return dir / name;
}

void write_text(const fs::path& p, const std::string& s) { std::ofstream(p) << s; }

}  // namespace

TEST_CASE("groups are derived from labels and sorted") {
  const Partition p({1, 0, 1, 2, 0}, 3);
  CHECK(p.num_codes() == 5);
  CHECK(p.num_groups() == 3);
  CHECK(p.group(0) == std::vector<int>{1, 4});
  CHECK(p.group(1) == std::vector<int>{0, 2});
  CHECK(p.group_size(2) == 1);
  const Matrix A = p.membership();
  CHECK(A.rowwise().sum().isOnes());
  CHECK(A.colwise().sum()(0) == 2.0);
}

TEST_CASE("invalid labelings are rejected") {
  CHECK_THROWS_AS(Partition({0, 2}, 3), InvalidParameter);   // group 1 empty
  CHECK_THROWS_AS(Partition({0, -1}, 2), InvalidParameter);
  CHECK_THROWS_AS(Partition({0, 3}, 2), InvalidParameter);
  CHECK_THROWS_AS(Partition::from_groups({{0, 1}, {1, 2}}, 3), InvalidParameter);
  CHECK_THROWS_AS(Partition::from_groups({{0}}, 2), InvalidParameter);
}

TEST_CASE("same_grouping ignores label names") {
  const Partition a({0, 0, 1, 2}, 3);
  const Partition b({2, 2, 0, 1}, 3);
  const Partition c({0, 1, 1, 2}, 3);
  CHECK(same_grouping(a, b));
  CHECK_FALSE(same_grouping(a, c));
  CHECK(same_grouping(a, Partition::from_groups({{3}, {0, 1}, {2}}, 4)));
}

TEST_CASE("partition csv round trip uses 1-based ids") {
  const Partition p({0, 0, 1, 2, 1}, 3);
  const auto path = scratch("p.csv");
  write_partition_csv(p, path);
  std::ifstream in(path);
  std::string header, first;
  std::getline(in, header);
  std::getline(in, first);
  CHECK(header == "code_id,cluster_id");
  CHECK(first == "1,1");
  CHECK(same_grouping(read_partition_csv(path), p));
}

TEST_CASE("partition csv errors") {
  CHECK_THROWS_AS(read_partition_csv(scratch("missing.csv")), IoError);
  const auto bad = scratch("bad.csv");
  write_text(bad, "code_id,cluster_id\n1,1\n2,x\n");
  CHECK_THROWS_AS(read_partition_csv(bad), ParseError);
  write_text(bad, "code_id,cluster_id\n1,1\n3,1\n");  // gap in code ids
  CHECK_THROWS_AS(read_partition_csv(bad), Error);
  write_text(bad, "code_id,cluster_id\n1,0\n");
  CHECK_THROWS_AS(read_partition_csv(bad), Error);
}
