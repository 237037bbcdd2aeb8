// corpus.cc
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

#include "smoothlm/corpus.hpp"

#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "smoothlm/error.hpp"

namespace smoothlm {

namespace {

bool IsSpecial(std::string_view w) {
  return w == kBosString || w == kEosString || w == kUnkString;
}

}  // namespace

Vocabulary::Vocabulary() : Vocabulary(std::set<std::string>{}) {}

Vocabulary::Vocabulary(const std::set<std::string> &words) {
  words_.reserve(words.size() + 3);
  words_.emplace_back(kBosString);
  words_.emplace_back(kEosString);
  words_.emplace_back(kUnkString);
  for (const auto &w : words) {
    if (!IsSpecial(w)) words_.push_back(w);
  }
  for (std::size_t i = 0; i < words_.size(); ++i) {
    ids_.emplace(words_[i], static_cast<WordId>(i));
  }
}

WordId Vocabulary::Id(std::string_view word) const {
  auto it = ids_.find(word);
  return it == ids_.end() ? kUnk : it->second;
}

std::optional<WordId> Vocabulary::Find(std::string_view word) const {
  auto it = ids_.find(word);
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

std::uint64_t Vocabulary::Hash() const {
  std::uint64_t h = 14695981039346656037ull;
  auto mix = [&h](unsigned char c) {
    h ^= c;
    h *= 1099511628211ull;
  };
  for (const auto &w : words_) {
    for (char c : w) mix(static_cast<unsigned char>(c));
    mix('\n');
  }
  return h;
}

std::string Vocabulary::HashString() const {
  std::ostringstream os;
  os << std::hex << Hash();
  std::string s = os.str();
  return std::string(16 - s.size(), '0') + s;
}

Sentence Tokenize(std::string_view line, bool lowercase) {
  Sentence out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i])))
      ++i;
    std::size_t j = i;
    while (j < line.size() &&
           !std::isspace(static_cast<unsigned char>(line[j])))
      ++j;
    if (j > i) {
      std::string tok(line.substr(i, j - i));
      if (lowercase) {
        for (char &c : tok) {
          c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        }
      }
      out.push_back(std::move(tok));
    }
    i = j;
  }
  return out;
}

std::vector<Sentence> ReadSentences(std::istream &in, bool lowercase) {
  std::vector<Sentence> out;
  std::string line;
  while (std::getline(in, line)) {
    Sentence s = Tokenize(line, lowercase);
    if (!s.empty()) out.push_back(std::move(s));
  }
  return out;
}

std::vector<Sentence> ReadSentencesFile(const std::string &path,
                                        bool lowercase) {
  std::ifstream in(path);
  if (!in) Fail(ErrorKind::kIo, "cannot open corpus file: " + path);
  return ReadSentences(in, lowercase);
}

Vocabulary BuildVocabulary(
    std::span<const Sentence> sentences, int min_count,
    const std::optional<std::set<std::string>> &explicit_list) {
  if (explicit_list) return Vocabulary(*explicit_list);
  if (min_count < 1) {
    Fail(ErrorKind::kInvalidParameter,
         "min_count must be >= 1, got " + std::to_string(min_count));
  }
  std::unordered_map<std::string_view, std::int64_t> freq;
  for (const auto &s : sentences) {
    for (const auto &w : s) ++freq[w];
  }
  std::set<std::string> words;
  for (const auto &[w, c] : freq) {
    if (c >= min_count) words.emplace(w);
  }
  return Vocabulary(words);
}

Vocabulary ReadVocabulary(std::istream &in) {
  std::set<std::string> words;
  std::string line;
  bool header = true;
  std::vector<std::string> order;
  while (std::getline(in, line)) {
    if (header && !line.empty() && line[0] == '#') continue;
    header = false;
    if (line.empty()) continue;
    if (IsSpecial(line)) {
      Fail(ErrorKind::kFormat, "vocabulary lists a reserved token: " + line);
    }
    if (!words.insert(line).second) {
      Fail(ErrorKind::kFormat, "duplicate vocabulary word: " + line);
    }
    order.push_back(line);
  }
  Vocabulary vocab(words);
  // Ids come from line position, so the file must already be sorted.
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (vocab.Word(kFirstWord + static_cast<WordId>(i)) != order[i]) {
      Fail(ErrorKind::kFormat,
           "vocabulary file is not in lexicographic order near: " + order[i]);
    }
  }
  return vocab;
}

Vocabulary ReadVocabularyFile(const std::string &path) {
  std::ifstream in(path);
  if (!in) Fail(ErrorKind::kIo, "cannot open vocabulary file: " + path);
  return ReadVocabulary(in);
}

void WriteVocabulary(const Vocabulary &vocab, std::ostream &out) {
  out << "# smoothlm vocabulary; ids 0-2 are " << kBosString << ' '
      << kEosString << ' ' << kUnkString << "; the first word below has id 3\n";
  out << "# hash " << vocab.HashString() << '\n';
  for (std::size_t i = kFirstWord; i < vocab.size(); ++i) {
    out << vocab.Word(static_cast<WordId>(i)) << '\n';
  }
}

void WriteVocabularyFile(const Vocabulary &vocab, const std::string &path) {
  std::ofstream out(path);
  if (!out) Fail(ErrorKind::kIo, "cannot write vocabulary file: " + path);
  WriteVocabulary(vocab, out);
  if (!out) Fail(ErrorKind::kIo, "write failed: " + path);
}

std::vector<WordId> EncodeSentence(std::span<const std::string> words,
                                   const Vocabulary &vocab, int order) {
  if (order < 1) {
    Fail(ErrorKind::kInvalidParameter,
         "order must be >= 1, got " + std::to_string(order));
  }
  std::vector<WordId> ids;
  ids.reserve(words.size() + order);
  ids.assign(order - 1, kBos);
  for (const auto &w : words) {
    WordId id = vocab.Id(w);
    // Boundary strings in raw text are ordinary unknown words.
    if (id == kBos || id == kEos) id = kUnk;
    ids.push_back(id);
  }
  ids.push_back(kEos);
  return ids;
}

std::vector<std::vector<WordId>> EncodeCorpus(
    std::span<const Sentence> sentences, const Vocabulary &vocab, int order) {
  std::vector<std::vector<WordId>> out;
  out.reserve(sentences.size());
  for (const auto &s : sentences) out.push_back(EncodeSentence(s, vocab, order));
  return out;
}

Sentence DecodeSentence(std::span<const WordId> ids, const Vocabulary &vocab) {
  Sentence out;
  for (WordId id : ids) {
    if (id == kBos || id == kEos) continue;
    out.push_back(vocab.Word(id));
  }
  return out;
}

DataSplit SplitCorpus(std::size_t num_sentences, const SplitSizes &sizes) {
  std::size_t held = sizes.test + sizes.dev1 + sizes.dev2;
  std::size_t need = held + (sizes.train == 0 ? 1 : sizes.train);
  if (need > num_sentences) {
    Fail(ErrorKind::kInvalidParameter,
         "corpus has " + std::to_string(num_sentences) + " sentences, split needs " +
             std::to_string(need) + " (short by " +
             std::to_string(need - num_sentences) + ")");
  }
  DataSplit split;
  std::size_t pos = 0;
  auto take = [&pos](std::size_t n) {
    Range r{pos, pos + n};
    pos += n;
    return r;
  };
  split.test = take(sizes.test);
  split.dev1 = take(sizes.dev1);
  split.dev2 = take(sizes.dev2);
  split.train = take(sizes.train == 0 ? num_sentences - held : sizes.train);
  return split;
}

}  // namespace smoothlm
