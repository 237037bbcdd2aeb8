// test_katz.cc
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

#include "doctest.h"
#include "smoothlm/error.hpp"
#include "smoothlm/katz.hpp"
#include "test_util.hpp"

namespace smoothlm {
namespace {

using testing::MakeFixture;

TEST_CASE("three-word corpus matches the hand-built table") {
  auto f = MakeFixture(testing::Lines({"a b c", "a", "b", "c", "a a",
                                       "b a a a", "a c a a", "c"}),
                       2);
  KatzOptions opts;
  opts.k = {0, 0, 2};
  KatzModel katz(f.table, 2, opts);
  CHECK(katz.discounts(2).k == 2);
  CHECK(katz.discounts(2).Ratio(1) == doctest::Approx(1.0 / 3.0));
  CHECK(katz.discounts(2).Ratio(2) == doctest::Approx(0.5));
  // Rows are </s>, <unk>, a, b, c.
  const std::map<std::string, std::vector<double>> want{
      {"<s>", {0.225, 0.025, 0.5, 0.125, 0.125}},
      {"a", {0.4, 0.13333333333333333, 0.4, 0.033333333333333333,
             0.033333333333333333}},
      {"b", {0.1111111111111111, 0.13333333333333333, 0.1111111111111111,
             0.53333333333333333, 0.1111111111111111}},
      {"c", {0.75, 0.016666666666666666, 0.083333333333333329,
             0.066666666666666666, 0.083333333333333329}},
      {"<unk>", {0.3, 0.033333333333333333, 0.36666666666666664,
                 0.13333333333333333, 0.16666666666666666}},
  };
  for (const auto &[h, row] : want) {
    WordId hid = f.vocab.Id(h);
    for (WordId w = 1; w <= 5; ++w) {
      CAPTURE(h);
      CAPTURE(w);
      CHECK(katz.Prob(std::span<const WordId>(&hid, 1), w) ==
            doctest::Approx(row[w - 1]).epsilon(1e-12));
    }
  }
}

TEST_CASE("discounted mass equals the mass handed to unseen words") {
  auto f = MakeFixture(testing::SyntheticCorpus(800, 50, 4), 3);
  KatzOptions opts;
  opts.delta = 0.3;
  KatzModel katz(f.table, 3, opts);
  for (int j = 2; j <= 3; ++j) {
    const auto &hist = f.table->level(j - 1);
    const auto &ev = f.table->level(j);
    CHECK(katz.discounts(j).k >= 1);
    for (std::size_t h = 0; h < hist.size(); ++h) {
      if (hist.total[h] == 0 || katz.UsesFallback(j, h)) continue;
      auto ctx = f.table->Ngram(j - 1, static_cast<NodeId>(h));
      ctx.insert(ctx.begin(), 3 - j, kBos);
      double n = static_cast<double>(hist.total[h]);
      double kept = 0.0, unseen = 0.0;
      std::vector<bool> seen(f.vocab.size(), false);
      for (NodeId c = hist.child_begin[h]; c < hist.child_end[h]; ++c) {
        if (ev.count[c] == 0) continue;
        kept += katz.KatzCount(j, c);
        seen[ev.word[c]] = true;
      }
      for (std::size_t w = 1; w < f.vocab.size(); ++w) {
        if (!seen[w]) unseen += katz.LevelProb(j, ctx, w);
      }
      CHECK(kept + n * unseen == doctest::Approx(n).epsilon(1e-9));
    }
  }
}

testing::Fixture SaturatedFixture() {
  // History "a" is followed by every predicted event, each more than k times.
  // Rare q_i map to <unk>, which is then followed only by </s>.
  std::vector<Sentence> train;
  for (int i = 0; i < 6; ++i) {
    for (const char *w : {"a", "b", "c", "d"}) train.push_back({"a", w});
    train.push_back({"a", "q" + std::to_string(i)});
  }
  for (const char *s : {"b d b", "c d c", "b d d", "d b b d"}) {
    train.push_back(Tokenize(s));
  }
  return MakeFixture(train, 2, 2);
}

TEST_CASE("a saturated history keeps its relative frequencies") {
  auto f = SaturatedFixture();
  KatzModel katz(f.table, 2, KatzOptions{});
  Count k = katz.discounts(2).k;
  CHECK(k == 2);
  WordId a = f.vocab.Id("a");
  NodeId h = f.table->Find(std::vector<WordId>{a});
  const auto &hist = f.table->level(1);
  REQUIRE(hist.distinct[h] == static_cast<Count>(f.vocab.num_events()));
  for (NodeId c = hist.child_begin[h]; c < hist.child_end[h]; ++c) {
    REQUIRE(f.table->level(2).count[c] > k);
  }
  CHECK(katz.Backoff(2, h) == 0.0);
  for (std::size_t w = 1; w < f.vocab.size(); ++w) {
    double c = static_cast<double>(
        f.table->CountOf(std::vector<WordId>{a, static_cast<WordId>(w)}));
    CHECK(katz.Prob(std::span<const WordId>(&a, 1), w) ==
          doctest::Approx(c / hist.total[h]).epsilon(1e-15));
  }
}

TEST_CASE("a history with nothing to discount uses the fallback mass") {
  auto f = SaturatedFixture();
  KatzOptions opts;
  opts.beta = 2.5;
  KatzModel katz(f.table, 2, opts);
  WordId u = kUnk;
  NodeId h = f.table->Find(std::vector<WordId>{u});
  REQUIRE(f.table->level(1).total[h] == 6);
  CHECK(katz.UsesFallback(2, h));
  CHECK(katz.Normalizer(2, h) == 6 + 2.5);
  std::span<const WordId> ctx(&u, 1);
  CHECK(katz.Prob(ctx, kEos) == doctest::Approx(6.0 / 8.5).epsilon(1e-15));
  CHECK(testing::SumRow(katz, ctx).sum == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("invalid parameters") {
  auto f = MakeFixture(testing::SyntheticCorpus(100, 20, 6), 2);
  KatzOptions opts;
  opts.delta = 0.0;
  CHECK_THROWS_AS(KatzModel(f.table, 2, opts), Error);
  opts.delta = 1.0;
  opts.beta = -1.0;
  CHECK_THROWS_AS(KatzModel(f.table, 2, opts), Error);
}

}  // namespace
}  // namespace smoothlm
