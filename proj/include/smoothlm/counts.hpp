// counts.hpp
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
//
// \file
// N-gram count tables stored as a trie with one flat array per order.

#ifndef SMOOTHLM_COUNTS_HPP_
#define SMOOTHLM_COUNTS_HPP_

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "smoothlm/corpus.hpp"

namespace smoothlm {

using Count = std::int64_t;
using NodeId = std::int32_t;
inline constexpr NodeId kNoNode = -1;

struct NgramHash {
  std::size_t operator()(const std::vector<WordId> &v) const noexcept {
    std::size_t h = 0xcbf29ce484222325ull;
    for (WordId w : v) {
      h ^= static_cast<std::size_t>(w) + 0x9e3779b97f4a7c15ull + (h << 6) +
           (h >> 2);
    }
    return h;
  }
};

using NgramCounts =
    std::unordered_map<std::vector<WordId>, Count, NgramHash>;

struct HistoryStats {
  Count total = 0;      // N(h): sum of continuation counts
  Count distinct = 0;   // continuations with nonzero count
  Count ones = 0;       // continuations seen exactly once
};

// Immutable count trie. Level k holds the k-grams; level 0 is the empty
// history. Every prefix of a stored k-gram is stored too, with count 0 when it
// never occurs as an event itself (pure begin-token padding).
class CountTable {
 public:
  struct Level {
    std::vector<WordId> word;
    std::vector<NodeId> parent;
    // Node for the same n-gram with its first word dropped.
    std::vector<NodeId> suffix;
    std::vector<Count> count;
    std::vector<Count> total;
    std::vector<Count> distinct;
    std::vector<Count> ones;
    // Children occupy [child_begin, child_end) of the next level.
    std::vector<NodeId> child_begin;
    std::vector<NodeId> child_end;

    std::size_t size() const { return word.size(); }
  };

  CountTable() = default;

  int order() const { return static_cast<int>(levels_.size()) - 1; }
  std::size_t vocab_size() const { return vocab_size_; }
  const Level &level(int k) const { return levels_[k]; }

  // Node of `ngram` at level ngram.size(), or kNoNode.
  NodeId Find(std::span<const WordId> ngram) const;
  // Child of `node` (at `level`) with last word `w`, or kNoNode.
  NodeId Child(int level, NodeId node, WordId w) const;
  Count CountOf(std::span<const WordId> ngram) const;
  HistoryStats Aggregate(std::span<const WordId> history) const;
  HistoryStats Aggregate(int level, NodeId node) const;
  // Words of the n-gram stored at (level, node).
  std::vector<WordId> Ngram(int level, NodeId node) const;

  // Total count of k-gram events; the same for every k.
  Count num_tokens() const { return levels_.empty() ? 0 : levels_[0].total[0]; }

  // Builds from raw per-order counts; counts[k-1] holds the k-grams.
  static CountTable FromCounts(std::vector<NgramCounts> counts,
                               std::size_t vocab_size);

 private:
  std::vector<Level> levels_;
  std::size_t vocab_size_ = 0;
};

// Accumulates counts from encoded sentences. At each predicted position the
// k-grams ending there are counted for k = 1..order.
class CountBuilder {
 public:
  CountBuilder(int order, std::size_t vocab_size);

  void Add(std::span<const WordId> sentence);
  void Merge(const CountBuilder &other);
  CountTable Build() &&;

 private:
  int order_;
  std::size_t vocab_size_;
  std::vector<NgramCounts> counts_;
};

// Counts sentences (encoded for at least `order`) on `threads` shards.
CountTable CountNgrams(std::span<const std::vector<WordId>> sentences,
                       int order, std::size_t vocab_size, int threads = 1);

HistoryStats HistoryAggregate(const CountTable &table,
                              std::span<const WordId> history);

struct CountOfCounts {
  int order = 0;
  std::map<Count, Count> n;  // r -> n_r, r >= 1
  Count total = 0;           // N = sum r n_r

  Count operator[](Count r) const {
    auto it = n.find(r);
    return it == n.end() ? 0 : it->second;
  }
};

CountOfCounts CountOfCountsAt(const CountTable &table, int order);

// Text dump: header "#order <n> #tokens <N>", then tab-separated
// "tok1 ... tokk count" lines, orders ascending, token strings sorted.
void WriteCounts(const CountTable &table, const Vocabulary &vocab,
                 std::ostream &out);
void WriteCountsFile(const CountTable &table, const Vocabulary &vocab,
                     const std::string &path);
CountTable ReadCounts(std::istream &in, const Vocabulary &vocab);
CountTable ReadCountsFile(const std::string &path, const Vocabulary &vocab);

}  // namespace smoothlm

#endif  // SMOOTHLM_COUNTS_HPP_
