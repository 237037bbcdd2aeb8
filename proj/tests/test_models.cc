// test_models.cc
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
#include "smoothlm/build.hpp"
#include "smoothlm/error.hpp"
#include "smoothlm/evaluate.hpp"
#include "test_util.hpp"

namespace smoothlm {
namespace {

using testing::Fixture;
using testing::MakeFixture;

Fixture John(int order = 2) {
  return MakeFixture(ReadSentencesFile(testing::DataPath("john.txt")), order);
}

double SentenceProb(const LanguageModel &m, const std::vector<WordId> &ids) {
  double p = 1.0;
  int n = m.order();
  for (std::size_t i = n - 1; i < ids.size(); ++i) {
    std::span<const WordId> h(ids.data() + i - (n - 1), n - 1);
    p *= m.Prob(h, ids[i]);
  }
  return p;
}

double P(const LanguageModel &m, const Fixture &f, const char *h,
         const char *w) {
  WordId hid = f.vocab.Id(h);
  return m.Prob(std::span<const WordId>(&hid, 1), f.vocab.Id(w));
}

TEST_CASE("relative frequencies of the three-sentence corpus") {
  auto f = John();
  MlModel ml(f.table, 2);
  CHECK(P(ml, f, "<s>", "John") == 1.0 / 3.0);
  CHECK(P(ml, f, "read", "a") == 2.0 / 3.0);
  CHECK(P(ml, f, "a", "book") == 0.5);
  CHECK(P(ml, f, "Moby", "read") == 0.0);
  CHECK(SentenceProb(ml, f.Ids("John read a book")) ==
        doctest::Approx(1.0 / 18.0).epsilon(1e-15));
}

TEST_CASE("relative frequency of an unseen history is an error") {
  auto f = MakeFixture(testing::Lines({"a b"}), 2);
  MlModel ml(f.table, 2);
  WordId h = kUnk;
  try {
    ml.Prob(std::span<const WordId>(&h, 1), 3);
    FAIL("expected an error");
  } catch (const Error &e) {
    CHECK(e.kind() == ErrorKind::kUndefinedDistribution);
  }
}

TEST_CASE("plus-one over the content words reproduces the sentence products") {
  auto f = John();
  AdditiveModel add(f.table, 2, 1.0, AdditiveDenominator::kContentWords);
  CHECK(add.denominator_size() == 11.0);
  CHECK(P(add, f, "read", "a") == 3.0 / 14.0);
  CHECK(SentenceProb(add, f.Ids("John read a book")) ==
        doctest::Approx(12.0 / 99372.0).epsilon(1e-14));
  CHECK(SentenceProb(add, f.Ids("Moby read a book")) ==
        doctest::Approx(3.0 / 99372.0).epsilon(1e-14));
}

TEST_CASE("additive smoothing over the predicted events") {
  auto f = John();
  AdditiveModel add(f.table, 2, 0.5);
  CHECK(add.denominator_size() == 13.0);
  CHECK(P(add, f, "read", "a") == 2.5 / (3.0 + 6.5));
  CHECK(add.method() == Method::kPlusDelta);
  CHECK(AdditiveModel(f.table, 2, 1.0).method() == Method::kPlusOne);
  CHECK_THROWS_AS(AdditiveModel(f.table, 2, 0.0), Error);
  CHECK_THROWS_AS(AdditiveModel(f.table, 2, -1.0), Error);
}

TEST_CASE("huge delta approaches the uniform distribution") {
  auto f = John();
  AdditiveModel add(f.table, 2, 1e12);
  for (const char *w : {"a", "John", "</s>", "<unk>"}) {
    CHECK(P(add, f, "read", w) == doctest::Approx(1.0 / 13.0).epsilon(1e-9));
  }
}

std::vector<ModelSpec> EverySmoothedSpec(int order) {
  std::vector<ModelSpec> out;
  for (Method m : AllMethods()) {
    if (m == Method::kMl) continue;
    ModelSpec s;
    s.method = m;
    s.order = order;
    s.delta = m == Method::kPlusDelta ? 0.05 : 1.0;
    if (m == Method::kKatz) s.delta = 0.2;
    s.c_min = 30;
    s.church_gale.c_min = 30;
    s.church_gale.c_mb = 300;
    s.one_count.beta.assign(order, 0.7);
    s.one_count.gamma.assign(order, 1.3);
    out.push_back(s);
  }
  return out;
}

TEST_CASE("every smoothed method normalizes and stays positive") {
  auto corpus = testing::SyntheticCorpus(900, 60, 17);
  std::vector<Sentence> train(corpus.begin(), corpus.begin() + 700);
  std::vector<Sentence> dev(corpus.begin() + 700, corpus.end());
  for (int order : {2, 3}) {
    auto f = MakeFixture(train, order);
    auto dev_ids = f.Encode(dev);
    std::mt19937_64 rng(order);
    std::uniform_int_distribution<WordId> word(kUnk, f.vocab.size() - 1);
    std::vector<std::vector<WordId>> histories;
    const auto &hist = f.table->level(order - 1);
    for (std::size_t h = 0; h < hist.size(); ++h) {
      if (hist.total[h] > 0) {
        histories.push_back(f.table->Ngram(order - 1, static_cast<NodeId>(h)));
      }
    }
    for (int i = 0; histories.size() < 100 + hist.size() && i < 100000; ++i) {
      std::vector<WordId> h(order - 1);
      for (auto &w : h) w = word(rng);
      if (f.table->Aggregate(h).total == 0) histories.push_back(h);
    }
    for (const auto &spec : EverySmoothedSpec(order)) {
      CAPTURE(MethodName(spec.method));
      CAPTURE(order);
      auto built = BuildModel(f.table, spec, dev_ids);
      const auto &m = *built.model;
      std::vector<double> dist(f.vocab.size());
      double worst = 0.0, least = 1.0;
      for (const auto &h : histories) {
        auto r = testing::SumRow(m, h);
        worst = std::max(worst, std::fabs(r.sum - 1.0));
        least = std::min(least, r.min);
        m.FillDistribution(h, dist);
        for (std::size_t w = 1; w < dist.size(); ++w) {
          REQUIRE(dist[w] == doctest::Approx(m.Prob(h, w)).epsilon(1e-12));
        }
      }
      CHECK(worst <= 1e-6);
      CHECK(least > 0.0);
    }
  }
}

TEST_CASE("relative frequencies score the training data best") {
  auto corpus = testing::SyntheticCorpus(400, 40, 3);
  auto f = MakeFixture(corpus, 2);
  MlModel ml(f.table, 2);
  double best = CrossEntropy(ml, f.train).bits;
  for (const auto &spec : EverySmoothedSpec(2)) {
    auto built = BuildModel(f.table, spec, f.train);
    CHECK(CrossEntropy(*built.model, f.train).bits >= best);
  }
}

}  // namespace
}  // namespace smoothlm
