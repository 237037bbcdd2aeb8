// corpus.hpp
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
// Text ingestion: vocabularies, boundary padding and data segments.

#ifndef SMOOTHLM_CORPUS_HPP_
#define SMOOTHLM_CORPUS_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace smoothlm {

using WordId = std::int32_t;

inline constexpr WordId kBos = 0;
inline constexpr WordId kEos = 1;
inline constexpr WordId kUnk = 2;
inline constexpr WordId kFirstWord = 3;

inline constexpr std::string_view kBosString = "<s>";
inline constexpr std::string_view kEosString = "</s>";
inline constexpr std::string_view kUnkString = "<unk>";

using Sentence = std::vector<std::string>;

// Closed word set. Ids 0..2 are the specials, content words follow in
// lexicographic order.
class Vocabulary {
 public:
  Vocabulary();
  explicit Vocabulary(const std::set<std::string> &words);

  // Total ids including the three specials.
  std::size_t size() const { return words_.size(); }
  // Words that can be predicted: everything but the begin token.
  std::size_t num_events() const { return words_.size() - 1; }
  std::size_t num_content_words() const { return words_.size() - 3; }

  WordId Id(std::string_view word) const;
  // Returns nullopt for out-of-vocabulary forms instead of the unknown id.
  std::optional<WordId> Find(std::string_view word) const;
  const std::string &Word(WordId id) const { return words_[id]; }

  // FNV-1a over the words in id order, newline separated.
  std::uint64_t Hash() const;
  std::string HashString() const;

  bool operator==(const Vocabulary &other) const {
    return words_ == other.words_;
  }

 private:
  std::vector<std::string> words_;
  std::map<std::string, WordId, std::less<>> ids_;
};

// Whitespace tokenization, optionally lowercased (ASCII folding).
Sentence Tokenize(std::string_view line, bool lowercase = false);

// One sentence per line; blank lines are skipped.
std::vector<Sentence> ReadSentences(std::istream &in, bool lowercase = false);
std::vector<Sentence> ReadSentencesFile(const std::string &path,
                                        bool lowercase = false);

// Words with frequency >= min_count, or exactly `explicit_list` when given.
Vocabulary BuildVocabulary(
    std::span<const Sentence> sentences, int min_count,
    const std::optional<std::set<std::string>> &explicit_list = std::nullopt);

// Vocabulary file: optional leading '#' comment lines, then one content
// word per line. Word i (0-based) gets id 3 + i.
Vocabulary ReadVocabulary(std::istream &in);
Vocabulary ReadVocabularyFile(const std::string &path);
void WriteVocabulary(const Vocabulary &vocab, std::ostream &out);
void WriteVocabularyFile(const Vocabulary &vocab, const std::string &path);

// Prepends order-1 begin ids and appends a single end id.
std::vector<WordId> EncodeSentence(std::span<const std::string> words,
                                   const Vocabulary &vocab, int order);
std::vector<std::vector<WordId>> EncodeCorpus(
    std::span<const Sentence> sentences, const Vocabulary &vocab, int order);

// Maps ids back to surface strings, dropping boundary tokens.
Sentence DecodeSentence(std::span<const WordId> ids, const Vocabulary &vocab);

struct Range {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::size_t size() const { return end - begin; }
};

struct SplitSizes {
  std::size_t test = 0;
  std::size_t dev1 = 0;
  std::size_t dev2 = 0;
  // 0 takes every sentence left after the held-out segments.
  std::size_t train = 0;
};

struct DataSplit {
  Range test;
  Range dev1;
  Range dev2;
  Range train;
};

// Adjacent segments in the order test, dev1, dev2, train. Sizes are in
// sentences.
DataSplit SplitCorpus(std::size_t num_sentences, const SplitSizes &sizes);

template <typename T>
std::span<const T> Slice(const std::vector<T> &v, const Range &r) {
  return std::span<const T>(v).subspan(r.begin, r.size());
}

}  // namespace smoothlm

#endif  // SMOOTHLM_CORPUS_HPP_
