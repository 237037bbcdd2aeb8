// test_bucketing.cc
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
//
// Copyright 2026 The smoothlm Authors.

#include <random>

#include "doctest.h"
#include "smoothlm/bucketing.hpp"
#include "smoothlm/error.hpp"

namespace smoothlm {
namespace {

constexpr double kTop = 100000.0;

TEST_CASE("undersized last bucket merges backward") {
  auto m = BucketMap::WallOfBricks({{0, 5}, {1, 5}, {2, 5}}, 10, kTop);
  CHECK(m.num_buckets() == 1);
  m = BucketMap::WallOfBricks({{0, 5}, {1, 5}, {2, 10}}, 10, kTop);
  CHECK(m.num_buckets() == 2);
  CHECK(m.Lookup(1) == 0);
  CHECK(m.Lookup(1.5) == 1);
}

TEST_CASE("single key and infinite c_min give one bucket") {
  auto m = BucketMap::WallOfBricks({{0, 100}}, 10, kTop);
  CHECK(m.num_buckets() == 1);
  CHECK(m.Lookup(0) == 0);
  CHECK(m.Lookup(1e9) == 0);
  m = BucketMap::WallOfBricks({{0, 100}, {5, 100}, {9, 100}}, kInfiniteCmin,
                              kTop);
  CHECK(m.num_buckets() == 1);
  CHECK(BucketMap::WallOfBricks({}, 10, kTop).num_buckets() == 1);
}

TEST_CASE("keys above c_top fall in the top bucket") {
  auto m = BucketMap::WallOfBricks({{1, 20}, {50, 20}, {1e6, 20}}, 20, 100);
  CHECK(m.num_buckets() == 3);
  CHECK(m.Lookup(100) == 2);
  CHECK(m.Lookup(1e9) == 2);
  CHECK(m.Lookup(60) == 2);
}

TEST_CASE("invalid thresholds") {
  CHECK_THROWS_AS(BucketMap::WallOfBricks({{0, 1}}, 0.5, kTop), Error);
  CHECK_THROWS_AS(BucketMap::WallOfBricks({{0, 1}}, 10, 0.0), Error);
}

TEST_CASE("random histograms: every bucket filled, lookup monotone") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> key(0, 5000);
  std::uniform_int_distribution<int> mass(1, 30);
  for (int trial = 0; trial < 30; ++trial) {
    std::map<double, double> h;
    int keys = 1 + static_cast<int>(rng() % 300);
    for (int i = 0; i < keys; ++i) h[key(rng)] += mass(rng);
    double c_min = 1 + static_cast<double>(rng() % 200);
    double c_top = 100 + static_cast<double>(rng() % 5000);
    auto m = BucketMap::WallOfBricks(h, c_min, c_top);
    std::vector<double> fill(m.num_buckets(), 0.0);
    double total = 0.0;
    std::size_t prev = 0;
    for (auto [k, n] : h) {
      std::size_t b = m.Lookup(k);
      REQUIRE(b < m.num_buckets());
      CHECK(b >= prev);
      prev = b;
      fill[b] += n;
      total += n;
    }
    for (double f : fill) {
      if (total >= c_min) CHECK(f >= c_min);
    }
    CHECK(m.Lookup(c_top) == m.Lookup(c_top * 10));
  }
}

}  // namespace
}  // namespace smoothlm
