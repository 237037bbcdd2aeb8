// counts.cc
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

#include "smoothlm/counts.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <thread>
#include <utility>

#include "smoothlm/error.hpp"

namespace smoothlm {

NodeId CountTable::Child(int level, NodeId node, WordId w) const {
  if (level + 1 >= static_cast<int>(levels_.size())) return kNoNode;
  const Level &lv = levels_[level];
  const Level &next = levels_[level + 1];
  auto first = next.word.begin() + lv.child_begin[node];
  auto last = next.word.begin() + lv.child_end[node];
  auto it = std::lower_bound(first, last, w);
  if (it == last || *it != w) return kNoNode;
  return static_cast<NodeId>(it - next.word.begin());
}

NodeId CountTable::Find(std::span<const WordId> ngram) const {
  if (levels_.empty() || ngram.size() >= levels_.size()) return kNoNode;
  NodeId node = 0;
  for (std::size_t i = 0; i < ngram.size(); ++i) {
    node = Child(static_cast<int>(i), node, ngram[i]);
    if (node == kNoNode) return kNoNode;
  }
  return node;
}

Count CountTable::CountOf(std::span<const WordId> ngram) const {
  NodeId node = Find(ngram);
  return node == kNoNode ? 0 : levels_[ngram.size()].count[node];
}

HistoryStats CountTable::Aggregate(int level, NodeId node) const {
  const Level &lv = levels_[level];
  return {lv.total[node], lv.distinct[node], lv.ones[node]};
}

HistoryStats CountTable::Aggregate(std::span<const WordId> history) const {
  if (static_cast<int>(history.size()) >= order()) return {};
  NodeId node = Find(history);
  if (node == kNoNode) return {};
  return Aggregate(static_cast<int>(history.size()), node);
}

std::vector<WordId> CountTable::Ngram(int level, NodeId node) const {
  std::vector<WordId> out(level);
  for (int k = level; k > 0; --k) {
    out[k - 1] = levels_[k].word[node];
    node = levels_[k].parent[node];
  }
  return out;
}

CountTable CountTable::FromCounts(std::vector<NgramCounts> counts,
                                  std::size_t vocab_size) {
  const int n = static_cast<int>(counts.size());
  for (int k = n; k >= 2; --k) {
    for (const auto &entry : counts[k - 1]) {
      std::vector<WordId> prefix(entry.first.begin(), entry.first.end() - 1);
      counts[k - 2].try_emplace(std::move(prefix), 0);
    }
  }

  CountTable table;
  table.vocab_size_ = vocab_size;
  table.levels_.resize(n + 1);
  Level &root = table.levels_[0];
  root.word = {-1};
  root.parent = {kNoNode};
  root.suffix = {kNoNode};
  root.count = {0};
  root.total = {0};
  root.distinct = {0};
  root.ones = {0};
  root.child_begin = {0};
  root.child_end = {0};

  std::vector<std::vector<WordId>> prev_grams;
  for (int k = 1; k <= n; ++k) {
    std::vector<std::pair<std::vector<WordId>, Count>> sorted(
        counts[k - 1].begin(), counts[k - 1].end());
    counts[k - 1].clear();
    std::sort(sorted.begin(), sorted.end());

    Level &lv = table.levels_[k];
    Level &up = table.levels_[k - 1];
    const std::size_t m = sorted.size();
    lv.word.resize(m);
    lv.parent.resize(m);
    lv.count.resize(m);
    lv.total.assign(m, 0);
    lv.distinct.assign(m, 0);
    lv.ones.assign(m, 0);
    lv.child_begin.assign(m, 0);
    lv.child_end.assign(m, 0);

    // Parents are sorted too, so a single forward scan pairs them up.
    std::size_t p = 0;
    for (std::size_t i = 0; i < m; ++i) {
      const auto &gram = sorted[i].first;
      NodeId parent = 0;
      if (k > 1) {
        while (p < prev_grams.size() &&
               !std::equal(prev_grams[p].begin(), prev_grams[p].end(),
                           gram.begin())) {
          ++p;
        }
        if (p == prev_grams.size()) {
          Fail(ErrorKind::kFormat, "count table is missing an n-gram prefix");
        }
        parent = static_cast<NodeId>(p);
      }
      lv.word[i] = gram.back();
      lv.parent[i] = parent;
      lv.count[i] = sorted[i].second;
      if (i == 0 || lv.parent[i - 1] != parent) {
        up.child_begin[parent] = static_cast<NodeId>(i);
      }
      up.child_end[parent] = static_cast<NodeId>(i + 1);
      Count c = sorted[i].second;
      if (c > 0) {
        up.total[parent] += c;
        up.distinct[parent] += 1;
        if (c == 1) up.ones[parent] += 1;
      }
    }
    prev_grams.clear();
    prev_grams.reserve(m);
    for (auto &entry : sorted) prev_grams.push_back(std::move(entry.first));
  }

  for (int k = 1; k <= n; ++k) {
    Level &lv = table.levels_[k];
    lv.suffix.assign(lv.size(), kNoNode);
    for (std::size_t i = 0; i < lv.size(); ++i) {
      if (k == 1) {
        lv.suffix[i] = 0;
        continue;
      }
      std::vector<WordId> gram = table.Ngram(k, static_cast<NodeId>(i));
      lv.suffix[i] =
          table.Find(std::span<const WordId>(gram).subspan(1));
    }
  }
  return table;
}

CountBuilder::CountBuilder(int order, std::size_t vocab_size)
    : order_(order), vocab_size_(vocab_size), counts_(order) {
  if (order < 1) {
    Fail(ErrorKind::kInvalidParameter,
         "order must be >= 1, got " + std::to_string(order));
  }
}

void CountBuilder::Add(std::span<const WordId> sentence) {
  std::size_t first = 0;
  while (first < sentence.size() && sentence[first] == kBos) ++first;
  if (first + 1 < static_cast<std::size_t>(order_) && !sentence.empty()) {
    Fail(ErrorKind::kInvalidParameter,
         "sentence is padded for order " + std::to_string(first + 1) +
             ", counting needs " + std::to_string(order_));
  }
  std::vector<WordId> gram;
  for (std::size_t i = first; i < sentence.size(); ++i) {
    for (int k = 1; k <= order_; ++k) {
      gram.assign(sentence.begin() + (i + 1 - k), sentence.begin() + i + 1);
      ++counts_[k - 1][gram];
    }
  }
}

void CountBuilder::Merge(const CountBuilder &other) {
  for (int k = 0; k < order_; ++k) {
    for (const auto &[gram, c] : other.counts_[k]) counts_[k][gram] += c;
  }
}

CountTable CountBuilder::Build() && {
  return CountTable::FromCounts(std::move(counts_), vocab_size_);
}

CountTable CountNgrams(std::span<const std::vector<WordId>> sentences,
                       int order, std::size_t vocab_size, int threads) {
  threads = std::max(1, threads);
  std::size_t shards = std::min<std::size_t>(threads, sentences.size());
  if (shards <= 1) {
    CountBuilder builder(order, vocab_size);
    for (const auto &s : sentences) builder.Add(s);
    return std::move(builder).Build();
  }
  std::vector<CountBuilder> builders(shards, CountBuilder(order, vocab_size));
  std::vector<std::thread> workers;
  std::size_t per = (sentences.size() + shards - 1) / shards;
  for (std::size_t t = 0; t < shards; ++t) {
    workers.emplace_back([&, t] {
      std::size_t b = t * per;
      std::size_t e = std::min(sentences.size(), b + per);
      for (std::size_t i = b; i < e; ++i) builders[t].Add(sentences[i]);
    });
  }
  for (auto &w : workers) w.join();
  for (std::size_t t = 1; t < shards; ++t) builders[0].Merge(builders[t]);
  return std::move(builders[0]).Build();
}

HistoryStats HistoryAggregate(const CountTable &table,
                              std::span<const WordId> history) {
  return table.Aggregate(history);
}

CountOfCounts CountOfCountsAt(const CountTable &table, int order) {
  if (order < 1 || order > table.order()) {
    Fail(ErrorKind::kInvalidParameter,
         "count-of-counts order " + std::to_string(order) +
             " outside table order " + std::to_string(table.order()));
  }
  CountOfCounts coc;
  coc.order = order;
  for (Count c : table.level(order).count) {
    if (c > 0) {
      ++coc.n[c];
      coc.total += c;
    }
  }
  return coc;
}

void WriteCounts(const CountTable &table, const Vocabulary &vocab,
                 std::ostream &out) {
  out << "#order " << table.order() << " #tokens " << table.num_tokens()
      << '\n';
  for (int k = 1; k <= table.order(); ++k) {
    const auto &lv = table.level(k);
    std::vector<std::pair<std::vector<std::string_view>, Count>> rows;
    for (std::size_t i = 0; i < lv.size(); ++i) {
      if (lv.count[i] == 0) continue;
      std::vector<std::string_view> toks;
      for (WordId w : table.Ngram(k, static_cast<NodeId>(i))) {
        toks.push_back(vocab.Word(w));
      }
      rows.emplace_back(std::move(toks), lv.count[i]);
    }
    std::sort(rows.begin(), rows.end());
    for (const auto &[toks, c] : rows) {
      for (auto t : toks) out << t << '\t';
      out << c << '\n';
    }
  }
}

void WriteCountsFile(const CountTable &table, const Vocabulary &vocab,
                     const std::string &path) {
  std::ofstream out(path);
  if (!out) Fail(ErrorKind::kIo, "cannot write count file: " + path);
  WriteCounts(table, vocab, out);
  if (!out) Fail(ErrorKind::kIo, "write failed: " + path);
}

CountTable ReadCounts(std::istream &in, const Vocabulary &vocab) {
  std::string line;
  if (!std::getline(in, line)) Fail(ErrorKind::kFormat, "empty count file");
  std::istringstream hs(line);
  std::string tag1, tag2;
  int order = 0;
  Count tokens = 0;
  if (!(hs >> tag1 >> order >> tag2 >> tokens) || tag1 != "#order" ||
      tag2 != "#tokens" || order < 1) {
    Fail(ErrorKind::kFormat, "bad count file header: " + line);
  }
  std::vector<NgramCounts> counts(order);
  std::size_t lineno = 1;
  std::vector<WordId> gram;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    gram.clear();
    std::size_t start = 0;
    std::string_view field;
    std::string_view view(line);
    while (true) {
      std::size_t tab = view.find('\t', start);
      if (tab == std::string_view::npos) {
        field = view.substr(start);
        break;
      }
      std::string_view tok = view.substr(start, tab - start);
      auto id = vocab.Find(tok);
      if (!id) {
        Fail(ErrorKind::kVocabMismatch,
             "count file line " + std::to_string(lineno) + ": token '" +
                 std::string(tok) + "' not in vocabulary " +
                 vocab.HashString());
      }
      gram.push_back(*id);
      start = tab + 1;
    }
    Count c = 0;
    auto [ptr, ec] =
        std::from_chars(field.data(), field.data() + field.size(), c);
    if (ec != std::errc() || ptr != field.data() + field.size() || c <= 0 ||
        gram.empty() || static_cast<int>(gram.size()) > order) {
      Fail(ErrorKind::kFormat,
           "count file line " + std::to_string(lineno) + " is malformed");
    }
    counts[gram.size() - 1][gram] += c;
  }
  CountTable table = CountTable::FromCounts(std::move(counts), vocab.size());
  if (table.num_tokens() != tokens) {
    Fail(ErrorKind::kFormat, "count file header says " +
                                 std::to_string(tokens) + " tokens, found " +
                                 std::to_string(table.num_tokens()));
  }
  return table;
}

CountTable ReadCountsFile(const std::string &path, const Vocabulary &vocab) {
  std::ifstream in(path);
  if (!in) Fail(ErrorKind::kIo, "cannot open count file: " + path);
  return ReadCounts(in, vocab);
}

}  // namespace smoothlm
