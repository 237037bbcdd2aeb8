// test_good_turing.cc
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

#include <cmath>
#include <random>

#include "doctest.h"
#include "smoothlm/error.hpp"
#include "smoothlm/good_turing.hpp"
#include "smoothlm/katz.hpp"

namespace smoothlm {
namespace {

std::map<Count, Count> RandomCounts(std::mt19937_64 &rng) {
  // Roughly Zipfian n_r with occasional gaps above r = 4.
  std::uniform_int_distribution<int> top(5, 40);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::map<Count, Count> n;
  Count base = 200 + static_cast<Count>(u(rng) * 5000);
  int max_r = top(rng);
  for (int r = 1; r <= max_r; ++r) {
    Count nr = static_cast<Count>(std::llround(base / std::pow(r, 1.6 + u(rng))));
    if (r > 4 && u(rng) < 0.2) continue;
    if (nr > 0) n[r] = nr;
  }
  return n;
}

CountOfCounts ToCoc(const std::map<Count, Count> &n) {
  CountOfCounts coc;
  coc.order = 2;
  coc.n = n;
  for (auto [r, nr] : n) coc.total += r * nr;
  return coc;
}

TEST_CASE("adjusted count by direct substitution") {
  std::map<Count, Count> n{{1, 2}, {2, 1}};
  CHECK(GtAdjustedCount(1, n) == 1.0);
  CHECK(GtAdjustedCount(0, {{1, 5}}, 10) == doctest::Approx(0.5));
}

TEST_CASE("adjusted count with a missing n_r is undefined") {
  std::map<Count, Count> n{{1, 4}, {2, 2}, {3, 1}};
  CHECK(GtAdjustedCount(3, n) == 0.0);  // n_4 = 0 gives r* = 0
  try {
    GtAdjustedCount(4, n);
    FAIL("expected an error");
  } catch (const Error &e) {
    CHECK(e.kind() == ErrorKind::kUndefinedEstimate);
    CHECK(std::string(e.what()).find("r=4") != std::string::npos);
  }
}

TEST_CASE("zero-count mass does not depend on how n_0 is split") {
  std::map<Count, Count> n{{1, 5}, {2, 2}};
  double total = 5 + 4;
  for (Count n0 : {1, 10, 1000}) {
    double mass = static_cast<double>(n0) * GtAdjustedCount(0, n, n0) / total;
    CHECK(mass == doctest::Approx(5.0 / total).epsilon(1e-15));
  }
}

TEST_CASE("zero-count mass is n_1/N exactly on random count-of-counts") {
  std::mt19937_64 rng(20260101);
  for (int trial = 0; trial < 50; ++trial) {
    auto coc = ToCoc(RandomCounts(rng));
    CHECK(GtZeroMass(coc) ==
          static_cast<double>(coc[1]) / static_cast<double>(coc.total));
  }
}

TEST_CASE("raw Good-Turing conserves the total count") {
  // Gap-free n_r, so every r* is defined; the top r gets r* = 0.
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    std::map<Count, Count> n;
    Count max_r = 3 + static_cast<Count>(rng() % 20);
    for (Count r = 1; r <= max_r; ++r) n[r] = 1 + (10000 / (r * r)) % 997;
    Count n0 = 1 + static_cast<Count>(rng() % 100000);
    double before = 0.0, after = n0 * GtAdjustedCount(0, n, n0);
    for (auto [r, nr] : n) {
      before += static_cast<double>(r * nr);
      after += static_cast<double>(nr) * GtAdjustedCount(r, n);
    }
    CHECK(after == doctest::Approx(before).epsilon(1e-12));
  }
}

TEST_CASE("count-of-counts fit on three points") {
  SimpleGoodTuring sgt({{1, 100}, {2, 50}, {3, 30}});
  CHECK(sgt.intercept() == doctest::Approx(4.6211606782954462).epsilon(1e-12));
  CHECK(sgt.slope() == doctest::Approx(-1.0855762144491137).epsilon(1e-12));
  CHECK(sgt.Smoothed(1) == 100.0);
  CHECK(sgt.Smoothed(4) == doctest::Approx(22.561219784695648).epsilon(1e-12));
  for (Count r = 1; r <= 4; ++r) CHECK(sgt.Smoothed(r) > 0.0);
  // Turing and fitted estimates agree within 1.65 sd at r = 1.
  CHECK(sgt.switch_point() == 1);
  CHECK(sgt.AdjustedCount(3) ==
        doctest::Approx(2.927045480761516).epsilon(1e-12));
}

TEST_CASE("power-law count-of-counts is reproduced") {
  const double c = 1e6;
  std::map<Count, Count> n;
  for (Count r = 1; r <= 30; ++r) n[r] = std::llround(c / (r * r));
  SimpleGoodTuring sgt(n);
  CHECK(sgt.slope() == doctest::Approx(-2.0).epsilon(0.01));
  for (Count r = 1; r <= 31; ++r) {
    double want = c / static_cast<double>(r * r);
    CHECK(std::fabs(sgt.Fitted(static_cast<double>(r)) - want) / want <= 0.05);
  }
}

TEST_CASE("smoothed n_r is positive and non-increasing past the data") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    auto n = RandomCounts(rng);
    SimpleGoodTuring sgt(n);
    REQUIRE(sgt.slope() < 0.0);
    double prev = INFINITY;
    for (Count r = 1; r <= sgt.max_r() + 1; ++r) {
      double z = sgt.Fitted(static_cast<double>(r));
      CHECK(z > 0.0);
      CHECK(z <= prev);
      prev = z;
    }
  }
}

TEST_CASE("a single nonzero n_r cannot be smoothed") {
  try {
    SimpleGoodTuring sgt(std::map<Count, Count>{{3, 7}});
    FAIL("expected an error");
  } catch (const Error &e) {
    CHECK(e.kind() == ErrorKind::kCannotSmooth);
  }
}

TEST_CASE("discount schedule satisfies both identities") {
  CountOfCounts coc = ToCoc({{1, 10}, {2, 5}, {3, 3}, {4, 2}, {5, 1}, {6, 1}});
  auto d = ComputeKatzDiscounts(coc, 5);
  // d_5 would be 1.5, so the range shrinks to 4.
  CHECK(d.k == 4);
  double a = (d.k + 1) * static_cast<double>(coc[d.k + 1]) / coc[1];
  double lost = 0.0;
  for (Count r = 1; r <= d.k; ++r) {
    CHECK(d.Ratio(r) > 0.0);
    CHECK(d.Ratio(r) <= 1.0);
    lost += coc[r] * (1.0 - d.Ratio(r)) * r;
    double rstar = (r + 1) * static_cast<double>(coc[r + 1]) / coc[r];
    CHECK((1.0 - d.Ratio(r)) ==
          doctest::Approx((1.0 - rstar / r) / (1.0 - a)).epsilon(1e-12));
  }
  CHECK(lost == doctest::Approx(10.0).epsilon(1e-6));
  CHECK(d.Ratio(5) == 1.0);
}

TEST_CASE("discount range shrinks at the singularity and at gaps") {
  // (k+1) n_{k+1} = n_1 at k = 3.
  auto d = ComputeKatzDiscounts(
      ToCoc({{1, 12}, {2, 4}, {3, 2}, {4, 3}, {5, 1}}), 3);
  CHECK(d.k == 2);
  CHECK(d.Ratio(1) == doctest::Approx(1.0 / 3.0));
  CHECK(d.Ratio(2) == doctest::Approx(0.5));
  // n_4 = 0.
  d = ComputeKatzDiscounts(ToCoc({{1, 10}, {2, 4}, {3, 1}, {5, 1}}), 5);
  CHECK(d.k == 2);
  // d_1 is always 0 when k = 1, so nothing is left.
  CHECK_THROWS_AS(ComputeKatzDiscounts(ToCoc({{1, 10}, {2, 5}, {3, 1}}), 1),
                  Error);
  CHECK_THROWS_AS(ComputeKatzDiscounts(ToCoc({{2, 4}, {3, 1}}), 1), Error);
}

TEST_CASE("discount identity on random count-of-counts") {
  std::mt19937_64 rng(20260101);
  for (int trial = 0; trial < 50; ++trial) {
    auto coc = ToCoc(RandomCounts(rng));
    KatzDiscounts d;
    try {
      d = ComputeKatzDiscounts(coc, 5);
    } catch (const Error &) {
      continue;
    }
    double lost = 0.0;
    for (Count r = 1; r <= d.k; ++r) lost += coc[r] * (1.0 - d.Ratio(r)) * r;
    CHECK(lost == doctest::Approx(static_cast<double>(coc[1])).epsilon(1e-6));
  }
}

}  // namespace
}  // namespace smoothlm
