// test_counts.cc
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

#include <sstream>

#include "doctest.h"
#include "smoothlm/counts.hpp"
#include "smoothlm/error.hpp"
#include "test_util.hpp"

namespace smoothlm {
namespace {

using testing::MakeFixture;

std::vector<WordId> Gram(const testing::Fixture &f,
                         std::initializer_list<const char *> words) {
  std::vector<WordId> out;
  for (const char *w : words) out.push_back(f.vocab.Id(w));
  return out;
}

std::string Dump(const CountTable &t, const Vocabulary &v) {
  std::ostringstream out;
  WriteCounts(t, v, out);
  return out.str();
}

TEST_CASE("bigram counts of the three-sentence corpus") {
  auto f = MakeFixture(ReadSentencesFile(testing::DataPath("john.txt")), 2);
  const auto &t = *f.table;
  CHECK(t.num_tokens() == 18);
  CHECK(t.CountOf(Gram(f, {"<s>", "John"})) == 1);
  CHECK(t.CountOf(Gram(f, {"read", "a"})) == 2);
  CHECK(t.CountOf(Gram(f, {"read", "book"})) == 0);
  CHECK(t.CountOf(Gram(f, {"read"})) == 3);
  CHECK(t.CountOf(Gram(f, {"</s>"})) == 3);
  auto h = t.Aggregate(Gram(f, {"read"}));
  CHECK(h.total == 3);
  CHECK(h.distinct == 2);
  CHECK(h.ones == 1);
  auto root = t.Aggregate(std::span<const WordId>{});
  CHECK(root.total == 18);
  CHECK(root.ones == 8);
}

TEST_CASE("trigram padding uses two begin tokens") {
  auto f = MakeFixture(ReadSentencesFile(testing::DataPath("john.txt")), 3);
  const auto &t = *f.table;
  CHECK(t.CountOf(Gram(f, {"<s>", "<s>", "John"})) == 1);
  CHECK(t.CountOf(Gram(f, {"<s>", "<s>"})) == 0);
  CHECK(t.Aggregate(Gram(f, {"<s>", "<s>"})).total == 3);
  CHECK(t.CountOf(Gram(f, {"read", "a", "book"})) == 1);
}

TEST_CASE("count of counts") {
  auto f = MakeFixture(ReadSentencesFile(testing::DataPath("john.txt")), 2);
  auto coc = CountOfCountsAt(*f.table, 2);
  CHECK(coc.total == 18);
  CHECK(coc[2] == 1);  // read a
  CHECK(coc[1] == 16);
  CHECK(coc[3] == 0);
  CHECK_THROWS_AS(CountOfCountsAt(*f.table, 3), Error);
}

TEST_CASE("node totals equal the sum of child counts; suffix links agree") {
  auto f = MakeFixture(testing::SyntheticCorpus(300, 40, 11), 3);
  const auto &t = *f.table;
  for (int k = 0; k < t.order(); ++k) {
    const auto &lv = t.level(k);
    const auto &next = t.level(k + 1);
    for (std::size_t h = 0; h < lv.size(); ++h) {
      Count sum = 0, distinct = 0, ones = 0;
      for (NodeId c = lv.child_begin[h]; c < lv.child_end[h]; ++c) {
        CHECK(next.parent[c] == static_cast<NodeId>(h));
        sum += next.count[c];
        distinct += next.count[c] > 0;
        ones += next.count[c] == 1;
      }
      CHECK(lv.total[h] == sum);
      CHECK(lv.distinct[h] == distinct);
      CHECK(lv.ones[h] == ones);
    }
  }
  const auto &tri = t.level(3);
  for (std::size_t i = 0; i < tri.size(); ++i) {
    auto g = t.Ngram(3, static_cast<NodeId>(i));
    auto s = t.Ngram(2, tri.suffix[i]);
    CHECK(s == std::vector<WordId>(g.begin() + 1, g.end()));
    CHECK(t.level(2).count[tri.suffix[i]] >= tri.count[i]);
  }
}

TEST_CASE("threaded counting is identical to serial counting") {
  auto f = MakeFixture(testing::SyntheticCorpus(500, 60, 3), 3);
  auto threaded = CountNgrams(f.train, 3, f.vocab.size(), 4);
  CHECK(Dump(threaded, f.vocab) == Dump(*f.table, f.vocab));
}

TEST_CASE("count file round trip") {
  auto f = MakeFixture(testing::SyntheticCorpus(200, 30, 5), 3);
  std::stringstream ss(Dump(*f.table, f.vocab));
  auto back = ReadCounts(ss, f.vocab);
  CHECK(back.order() == 3);
  CHECK(Dump(back, f.vocab) == Dump(*f.table, f.vocab));
}

TEST_CASE("count file with a foreign token is a vocabulary mismatch") {
  Vocabulary v({"a"});
  std::istringstream in("#order 1 #tokens 2\na\t1\nb\t1\n");
  try {
    ReadCounts(in, v);
    FAIL("expected an error");
  } catch (const Error &e) {
    CHECK(e.kind() == ErrorKind::kVocabMismatch);
  }
  std::istringstream bad("#order 1 #tokens 5\na\t1\n");
  CHECK_THROWS_AS(ReadCounts(bad, v), Error);
}

TEST_CASE("mixed padding is rejected") {
  CountBuilder b(3, 5);
  std::vector<WordId> short_pad{kBos, 3, kEos};
  CHECK_THROWS_AS(b.Add(short_pad), Error);
}

}  // namespace
}  // namespace smoothlm
