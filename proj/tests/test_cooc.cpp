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

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>

#include <doctest.h>

#include "lgbm/cooc.hpp"
#include "oracles/brute.hpp"

using namespace lgbm;
namespace fs = std::filesystem;

namespace {

std::vector<TokenSequence> random_sequences(std::mt19937_64& rng, int d, int count, int max_len) {
  std::vector<TokenSequence> out(static_cast<std::size_t>(count));
  for (auto& s : out) {
    s.resize(rng() % (max_len + 1));
    for (int& t : s) t = static_cast<int>(rng() % d);
  }
  return out;
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "lgbm_test_cooc";
  fs::create_directories(dir);
  return dir / name;
}

void expect_parse_error(const std::string& text, std::size_t line) {
  const auto path = scratch("bad.txt");
  std::ofstream(path) << text;
  try {
    read_cooc(path);
    FAIL("accepted: " << text);
  } catch (const ParseError& e) {
    CHECK(e.line() == line);
  }
}

}  // namespace

TEST_CASE("hand counts") {
  const auto ab = count_cooccurrences({{0, 1}}, 2, 1);
  CHECK(ab.count(0, 1) == 1);
  CHECK(ab.count(1, 0) == 1);
  CHECK(ab.count(0, 0) == 0);
  CHECK(ab.total() == 2);

  const auto aaa = count_cooccurrences({{0, 0, 0}}, 1, 2);
  CHECK(aaa.count(0, 0) == 6);
  CHECK(aaa.total() == 6);

  const auto none = count_cooccurrences({}, 4, 3);
  CHECK(none.total() == 0);
  CHECK(none.to_dense().isZero());

  CHECK_THROWS_AS(count_cooccurrences({{0, 5}}, 3, 1), ParseError);
  CHECK_THROWS_AS(count_cooccurrences({{0}}, 3, 0), InvalidParameter);
}

TEST_CASE("counts equal the pair-loop oracle") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 60; ++trial) {
    const int d = 1 + static_cast<int>(rng() % 9);
    const int q = 1 + static_cast<int>(rng() % 6);
    const auto seqs = random_sequences(rng, d, 1 + static_cast<int>(rng() % 4), 200);
    const Matrix want = oracle::cooc_counts(seqs, d, q);
    const auto got = count_cooccurrences(seqs, d, q);
    CHECK(got.to_dense() == want);
    CHECK(count_cooccurrences(seqs, d, q, 3) == got);

    std::uint64_t sum = 0;
    for (int i = 0; i < d; ++i) {
      std::uint64_t row = 0;
      for (int j = 0; j < d; ++j) row += got.count(i, j);
      CHECK(got.row_margins()[i] == row);
      sum += row;
    }
    CHECK(got.total() == sum);
  }
}

TEST_CASE("large vocabularies take the sparse path with the same result") {
  std::mt19937_64 rng(7);
  const int d = 5000;
  const auto seqs = random_sequences(rng, d, 3, 150);
  const auto got = count_cooccurrences(seqs, d, 4, 2);
  const auto ref = oracle::cooc_counts(seqs, d, 4);
  for (const auto& e : got.upper_entries()) CHECK(ref(e.i, e.j) == static_cast<double>(e.count));
  CHECK(static_cast<double>(got.total()) == ref.sum());
}

TEST_CASE("single-sequence total is 2qT - q^2 - q") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 50; ++trial) {
    const int q = 1 + static_cast<int>(rng() % 10);
    const int T = q + 1 + static_cast<int>(rng() % 300);
    TokenSequence s(T);
    for (int& t : s) t = static_cast<int>(rng() % 7);
    const auto c = count_cooccurrences({s}, 7, q);
    CHECK(c.total() == static_cast<std::uint64_t>(2 * q * T - q * q - q));
  }
}

TEST_CASE("sequence order does not matter") {
  std::mt19937_64 rng(10);
  auto seqs = random_sequences(rng, 6, 8, 60);
  const auto ref = count_cooccurrences(seqs, 6, 3);
  for (int k = 0; k < 5; ++k) {
    std::shuffle(seqs.begin(), seqs.end(), rng);
    CHECK(count_cooccurrences(seqs, 6, 3) == ref);
  }
}

TEST_CASE("concatenation only adds boundary pairs") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const auto seqs = random_sequences(rng, 5, 2, 40);
    TokenSequence joined = seqs[0];
    joined.insert(joined.end(), seqs[1].begin(), seqs[1].end());
    const Matrix apart = count_cooccurrences(seqs, 5, 3).to_dense();
    const Matrix together = count_cooccurrences({joined}, 5, 3).to_dense();
    CHECK((together - apart).minCoeff() >= 0.0);
  }
}

TEST_CASE("count file round trip") {
  std::mt19937_64 rng(12);
  const auto c = count_cooccurrences(random_sequences(rng, 8, 3, 100), 8, 2);
  write_cooc(c, scratch("c.txt"));
  const auto back = read_cooc(scratch("c.txt"));
  CHECK(back == c);
  CHECK(back.total() == c.total());

  const auto empty = count_cooccurrences({}, 3, 2);
  write_cooc(empty, scratch("e.txt"));
  CHECK(read_cooc(scratch("e.txt")) == empty);
}

TEST_CASE("count file errors") {
  CHECK_THROWS_AS(read_cooc(scratch("missing.txt")), IoError);
  expect_parse_error("", 1);
  expect_parse_error("3 1\n", 1);
  expect_parse_error("3 1 2\n1 2 -1\n", 2);
  expect_parse_error("3 1 2\n1 4 1\n", 2);      // j > d
  expect_parse_error("3 1 2\n2 1 1\n", 2);      // lower triangle
  expect_parse_error("3 1 4\n1 2 1\n1 2 1\n", 3);
  expect_parse_error("3 1 9\n1 2 1\n", 1);      // header total disagrees
  expect_parse_error("3 1 2\n1 2 x\n", 2);
}
