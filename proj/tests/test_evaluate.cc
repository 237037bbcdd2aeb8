// test_evaluate.cc
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
#include "smoothlm/interpolated.hpp"
#include "test_util.hpp"

namespace smoothlm {
namespace {

using testing::Fixture;
using testing::MakeFixture;

TEST_CASE("uniform model over eight events costs three bits") {
  auto f = MakeFixture(testing::Lines({"a b c d e f"}), 2);
  REQUIRE(f.vocab.num_events() == 8);
  InterpolatedModel u(f.table, 2, Method::kInterpHeldOut,
                      {BucketMap{}, BucketMap{}}, {{0.0}, {0.0}});
  auto test = f.Encode(testing::Lines({"f e d", "zzz a", "c"}));
  auto r = CrossEntropy(u, test);
  CHECK(r.bits == 3.0);
  CHECK(r.perplexity == 8.0);
  CHECK(r.tokens == 9);
  CHECK(r.sentences == 3);
}

TEST_CASE("perplexity arithmetic") {
  CHECK(Perplexity(0.0) == 1.0);
  CHECK(Perplexity(3.0) == 8.0);
  CHECK(Perplexity(0.014) == doctest::Approx(1.00975).epsilon(1e-5));
  CHECK(Perplexity(7.0 + 0.014) / Perplexity(7.0) ==
        doctest::Approx(std::exp2(0.014)).epsilon(1e-14));
}

TEST_CASE("plus-one entropy of the worked sentence") {
  auto f = MakeFixture(ReadSentencesFile(testing::DataPath("john.txt")), 2);
  AdditiveModel m(f.table, 2, 1.0, AdditiveDenominator::kContentWords);
  auto test = f.Encode(testing::Lines({"John read a book"}));
  auto r = CrossEntropy(m, test);
  CHECK(r.tokens == 5);
  CHECK(r.bits ==
        doctest::Approx(-std::log2(12.0 / 99372.0) / 5.0).epsilon(1e-14));
  CHECK(std::exp2(r.sentence_log2[0]) ==
        doctest::Approx(12.0 / 99372.0).epsilon(1e-13));
  EvalOptions no_eos;
  no_eos.count_eos = false;
  auto r4 = CrossEntropy(m, test, no_eos);
  CHECK(r4.tokens == 4);
  CHECK(r4.neg_log2 == r.neg_log2);
}

TEST_CASE("a zero probability names the n-gram") {
  auto f = MakeFixture(ReadSentencesFile(testing::DataPath("john.txt")), 2);
  MlModel ml(f.table, 2);
  auto test = f.Encode(testing::Lines({"Moby read a book"}));
  EvalOptions opts;
  opts.vocab = &f.vocab;
  try {
    CrossEntropy(ml, test, opts);
    FAIL("expected an error");
  } catch (const Error &e) {
    CHECK(e.kind() == ErrorKind::kInfiniteEntropy);
    CHECK(std::string(e.what()).find("<s> Moby") != std::string::npos);
  }
}

TEST_CASE("threads do not change a single bit") {
  auto corpus = testing::SyntheticCorpus(1200, 80, 12);
  std::vector<Sentence> train(corpus.begin(), corpus.begin() + 1000);
  std::vector<Sentence> test(corpus.begin() + 1000, corpus.end());
  auto f = MakeFixture(train, 3);
  ModelSpec spec;
  spec.method = Method::kKatz;
  auto m = BuildModel(f.table, spec).model;
  auto ids = f.Encode(test);
  auto serial = CrossEntropy(*m, ids);
  EvalOptions opts;
  opts.threads = 4;
  auto threaded = CrossEntropy(*m, ids, opts);
  CHECK(serial.bits == threaded.bits);
  CHECK(serial.sentence_log2 == threaded.sentence_log2);
}

TEST_CASE("training data as test data gives ideal counts equal to r") {
  auto f = MakeFixture(testing::SyntheticCorpus(500, 40, 2), 2);
  auto a = AnalyzeCounts(*f.table, 2, f.train, 40);
  CHECK(a.rows[0].actual == 0);
  int defined = 0;
  for (Count r = 1; r < a.tail; ++r) {
    if (a.rows[r].actual == 0) continue;
    ++defined;
    CHECK(a.rows[r].Ideal() == static_cast<double>(r));
  }
  CHECK(defined > 5);
  CHECK(a.zero_history == 0);
}

TEST_CASE("disjoint test data fills only the zero row") {
  auto f = MakeFixture(testing::Lines({"a b"}), 2);
  auto test = f.Encode(testing::Lines({"b a"}));
  auto a = AnalyzeCounts(*f.table, 2, test, 5);
  CHECK(a.rows[0].actual == 3);
  CHECK(std::isfinite(a.rows[0].Ideal()));
  // Count-1 n-grams were expected and never came; nothing was expected above.
  CHECK(a.rows[1].Ideal() == 0.0);
  for (Count r = 2; r <= 5; ++r) CHECK(std::isnan(a.rows[r].Ideal()));
}

struct Diagnostics {
  Fixture f;
  std::vector<std::vector<WordId>> test;
  std::unique_ptr<LanguageModel> model;
  CountAnalysis analysis;
  ModelCountStats stats;
};

Diagnostics MakeDiagnostics(Method method) {
  auto corpus = testing::SyntheticCorpus(1500, 60, 77);
  std::vector<Sentence> train(corpus.begin(), corpus.begin() + 1000);
  std::vector<Sentence> dev(corpus.begin() + 1000, corpus.begin() + 1200);
  std::vector<Sentence> test(corpus.begin() + 1200, corpus.end());
  Diagnostics d{MakeFixture(train, 2), {}, nullptr, {}, {}};
  d.test = d.f.Encode(test);
  ModelSpec spec;
  spec.method = method;
  spec.order = 2;
  d.model = BuildModel(d.f.table, spec, d.f.Encode(dev)).model;
  d.analysis = AnalyzeCounts(*d.f.table, 2, d.test, 10);
  d.stats = AnalyzeModel(*d.model, *d.f.table, d.analysis, d.test);
  return d;
}

TEST_CASE("entropy fractions add up to the whole") {
  auto d = MakeDiagnostics(Method::kKatz);
  auto fr = EntropyFractionsByCount(d.analysis, d.stats);
  double sum = fr.zero_history;
  for (double x : fr.row) sum += x;
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
  auto eval = CrossEntropy(*d.model, d.test);
  CHECK(fr.total_bits == doctest::Approx(eval.neg_log2).epsilon(1e-6));
  double prev = 0.0;
  for (Count k = 0; k <= d.analysis.tail; ++k) {
    CHECK(fr.Cumulative(k) >= prev);
    prev = fr.Cumulative(k);
  }
}

TEST_CASE("fractions of a test set with one count class") {
  std::vector<Sentence> train;
  for (int i = 0; i < 2; ++i) {
    train.push_back({"a", "b"});
    train.push_back({"c", "d"});
  }
  auto f = MakeFixture(train, 2);
  AdditiveModel m(f.table, 2, 1.0);
  auto test = f.Encode(testing::Lines({"a b", "c d"}));
  auto a = AnalyzeCounts(*f.table, 2, test, 5);
  auto fr = EntropyFractionsByCount(a, AnalyzeModel(m, *f.table, a, test));
  CHECK(fr.row[2] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(fr.row[0] == 0.0);
}

TEST_CASE("relative frequencies: expected over actual is r over ideal") {
  auto corpus = testing::SyntheticCorpus(1500, 60, 77);
  std::vector<Sentence> train(corpus.begin(), corpus.begin() + 1000);
  // ML gives zero to unseen pairs; the diagnostics only sum probabilities.
  std::vector<Sentence> test(corpus.begin() + 1000, corpus.end());
  auto f = MakeFixture(train, 2);
  MlModel ml(f.table, 2);
  auto ids = f.Encode(test);
  auto a = AnalyzeCounts(*f.table, 2, ids, 10);
  auto stats = AnalyzeModel(ml, *f.table, a, ids);
  auto ratio = ExpectedOverActual(a, stats);
  for (Count r = 1; r < a.tail; ++r) {
    if (a.rows[r].actual == 0) continue;
    CHECK(ratio[r] ==
          doctest::Approx(static_cast<double>(r) / a.rows[r].Ideal())
              .epsilon(1e-9));
  }
}

TEST_CASE("bang for the buck ignores a uniform rescaling of one row") {
  auto d = MakeDiagnostics(Method::kInterpHeldOut);
  auto base = BangForTheBuck(d.analysis, d.stats);
  for (Count r : {Count{0}, Count{1}, Count{3}, d.analysis.tail}) {
    // The last row holds every count from the tail up.
    testing::RescaledModel scaled(*d.model, *d.f.table, r, 0.37,
                                  r == d.analysis.tail);
    auto stats = AnalyzeModel(scaled, *d.f.table, d.analysis, d.test);
    auto bang = BangForTheBuck(d.analysis, stats);
    CHECK(std::fabs(bang[r] - base[r]) <= 1e-9);
    CHECK(stats.expected[r] ==
          doctest::Approx(0.37 * d.stats.expected[r]).epsilon(1e-12));
  }
  // Identical models score identically.
  auto again = AnalyzeModel(*d.model, *d.f.table, d.analysis, d.test);
  CHECK(BangForTheBuck(d.analysis, again) == base);
}

// Events (h, w) with h from a fixed set of histories and w drawn from one
// Zipf distribution. `burst` > 1 repeats each draw a geometric number of
// times, which makes counts overdispersed.
std::vector<Sentence> HistorySource(std::size_t per_history, double burst,
                                    std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<double> w(400);
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = 1.0 / (i + 1.0);
  std::discrete_distribution<int> zipf(w.begin(), w.end());
  std::geometric_distribution<int> extra(1.0 / burst);
  std::vector<Sentence> out;
  for (int h = 0; h < 150; ++h) {
    std::string hw = "h" + std::to_string(h);
    std::size_t made = 0;
    while (made < per_history) {
      std::string word = "x" + std::to_string(zipf(rng));
      int times = burst > 1.0 ? 1 + extra(rng) : 1;
      for (int t = 0; t < times && made < per_history; ++t, ++made) {
        out.push_back({hw, word});
      }
    }
  }
  return out;
}

double DesiredOverN1(const std::vector<Sentence> &train,
                     const std::vector<Sentence> &test) {
  std::vector<Sentence> all = train;
  all.insert(all.end(), test.begin(), test.end());
  Fixture f;
  f.vocab = BuildVocabulary(all, 1);
  f.order = 2;
  f.train = f.Encode(train);
  f.table = std::make_shared<const CountTable>(
      CountNgrams(f.train, 2, f.vocab.size()));
  std::vector<Count> n1s;
  for (Count k = 2; k <= 80; ++k) n1s.push_back(k);
  auto bands = GtZeroCountStudy(*f.table, 2, f.Encode(test), n1s);
  double desired = 0.0, predicted = 0.0;
  for (const auto &b : bands) {
    CHECK(b.histories > 0);
    desired += b.desired * b.histories;
    predicted += static_cast<double>(b.n1 * b.histories);
  }
  REQUIRE(predicted > 0.0);
  return desired / predicted;
}

TEST_CASE("zero-count study: independent draws sit near n_1") {
  double ratio = DesiredOverN1(HistorySource(150, 1.0, 1),
                               HistorySource(150, 1.0, 2));
  CHECK(ratio == doctest::Approx(1.0).epsilon(0.15));
}

TEST_CASE("zero-count study: bursty draws sit above n_1") {
  double ratio = DesiredOverN1(HistorySource(150, 4.0, 1),
                               HistorySource(150, 4.0, 2));
  CHECK(ratio > 1.5);
}

}  // namespace
}  // namespace smoothlm
