// model_io.hpp
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
// Model files. Every method except the bucketed Good-Turing one is written in
// back-off form:
//
//   #method <tag> #order <n> #params k=v ... #vocab <hash> #events <|V'|>
//       #root-backoff <log10>            (one line)
//   \1-grams:
//   log10prob<TAB>w1<TAB>log10bow
//   ...
//   \n-grams:
//   log10prob<TAB>w1 w2 ... wn
//   \end\ (last line)
//
// p_j(w|h) is the listed probability when there is one, otherwise
// bow(h) p_{j-1}(w|h'), with bow 1 for unlisted histories and p_0 uniform
// over the predicted events. A probability of -inf marks a history-only line.
// The bucketed Good-Turing model is stored as its parameters plus the counts
// and is rebuilt on load.

#ifndef SMOOTHLM_MODEL_IO_HPP_
#define SMOOTHLM_MODEL_IO_HPP_

#include <iosfwd>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "smoothlm/model.hpp"

namespace smoothlm {

class BackoffModel : public LanguageModel {
 public:
  struct Entry {
    double prob = -1.0;  // < 0 for history-only entries
    double bow = 1.0;
  };
  using Table = std::unordered_map<std::vector<WordId>, Entry, NgramHash>;

  // `levels[j-1]` holds the j-grams. With `strict_top`, an unlisted
  // top-order history has no distribution (maximum likelihood).
  BackoffModel(Method tag, int order, std::size_t vocab_size, ParamMap params,
               double root_bow, std::vector<Table> levels, bool strict_top);

  Method method() const override { return tag_; }
  int order() const override { return order_; }
  std::size_t vocab_size() const override { return vocab_size_; }
  ParamMap Params() const override { return params_; }
  double Prob(std::span<const WordId> history, WordId w) const override;

  double root_backoff() const { return root_bow_; }
  const Table &entries(int j) const { return levels_[j - 1]; }

 private:
  double LevelProb(int j, std::span<const WordId> context, WordId w,
                   std::vector<WordId> &key) const;

  Method tag_;
  int order_;
  std::size_t vocab_size_;
  ParamMap params_;
  double root_bow_;
  std::vector<Table> levels_;
  bool strict_top_;
  double uniform_;
};

void WriteModel(const LanguageModel &model, const Vocabulary &vocab,
                std::ostream &out);
void WriteModelFile(const LanguageModel &model, const Vocabulary &vocab,
                    const std::string &path);
// Throws kVocabMismatch when the file was written with another vocabulary.
std::unique_ptr<LanguageModel> ReadModel(std::istream &in,
                                         const Vocabulary &vocab);
std::unique_ptr<LanguageModel> ReadModelFile(const std::string &path,
                                             const Vocabulary &vocab);

}  // namespace smoothlm

#endif  // SMOOTHLM_MODEL_IO_HPP_
