// evaluate.hpp
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
// Cross-entropy scoring and the per-count diagnostics.
//
// The diagnostics work at one order n. Every predicted test token whose
// history h has N(h) > 0 in training falls in the row of its training count
// r = c(h w); rows stop at `tail`, which also holds every higher count.
// Tokens whose history has no training counts are tallied apart.

#ifndef SMOOTHLM_EVALUATE_HPP_
#define SMOOTHLM_EVALUATE_HPP_

#include <functional>
#include <span>
#include <vector>

#include "smoothlm/model.hpp"

namespace smoothlm {

struct EvalOptions {
  // Count one end-of-sentence prediction per sentence in N_T.
  bool count_eos = true;
  int threads = 1;
  // Used only to spell out the offending n-gram in errors.
  const Vocabulary *vocab = nullptr;
};

struct EvalResult {
  double bits = 0.0;        // H, bits per word
  double perplexity = 1.0;  // 2^H
  double neg_log2 = 0.0;    // sum over sentences of -log2 p(sentence)
  Count tokens = 0;         // N_T
  Count sentences = 0;
  std::vector<double> sentence_log2;  // log2 p(sentence), in input order
};

// Sentences must be encoded for at least the model order. Throws
// kInfiniteEntropy on a zero probability.
EvalResult CrossEntropy(const LanguageModel &model,
                        std::span<const std::vector<WordId>> test,
                        const EvalOptions &options = {});
double Perplexity(double bits);

// Calls fn(history, word) for every predicted token, in order.
void ForEachEvent(std::span<const std::vector<WordId>> sentences,
                  const std::function<void(std::span<const WordId>, WordId)> &fn);

struct CountRow {
  Count r = 0;
  Count actual = 0;           // test tokens in the row
  double weight = 0.0;        // sum over tokens of n_r(h) / N(h)
  double ml_expected = 0.0;   // sum over tokens of the ML mass on the row

  // Ideal average corrected count r0*; NaN when nothing is expected.
  double Ideal() const;
};

struct CountAnalysis {
  int order = 0;
  Count tail = 40;
  std::vector<CountRow> rows;  // index r = 0..tail
  Count events = 0;
  Count zero_history = 0;      // tokens whose history has N(h) = 0
  // History nodes with N(h) > 0 and their number of test tokens.
  std::vector<std::pair<NodeId, Count>> histories;
};

CountAnalysis AnalyzeCounts(const CountTable &train, int order,
                            std::span<const std::vector<WordId>> test,
                            Count tail = 40);

struct ModelCountStats {
  std::vector<double> expected;  // model mass on each row, summed over tokens
  std::vector<double> log2_sum;  // sum of log2 p over the tokens in each row
  double zero_history_log2 = 0.0;
};

ModelCountStats AnalyzeModel(const LanguageModel &model,
                             const CountTable &train,
                             const CountAnalysis &analysis,
                             std::span<const std::vector<WordId>> test);

// Model-average r* over r0* per row; NaN for rows without test tokens.
std::vector<double> ExpectedOverActual(const CountAnalysis &analysis,
                                       const ModelCountStats &stats);
// Entropy per token of each row after rescaling the model's mass on the row
// to match the observed tokens. NaN for rows without test tokens.
std::vector<double> BangForTheBuck(const CountAnalysis &analysis,
                                   const ModelCountStats &stats);

struct EntropyFractions {
  std::vector<double> row;     // share of total entropy per count row
  double zero_history = 0.0;   // share of tokens with an empty history
  double total_bits = 0.0;

  // Share of the rows with count <= k.
  double Cumulative(Count k) const;
};

EntropyFractions EntropyFractionsByCount(const CountAnalysis &analysis,
                                         const ModelCountStats &stats);

struct ZeroCountBand {
  Count n1 = 0;
  Count total_lo = 0;  // N band [total_lo, total_hi)
  Count total_hi = 0;
  Count histories = 0;
  Count tokens = 0;
  Count zero_tokens = 0;
  // Total corrected count the zero-count words of such a history should get.
  double desired = 0.0;
};

// Bands are the listed n_1 values crossed with power-of-two ranges of N.
std::vector<ZeroCountBand> GtZeroCountStudy(
    const CountTable &train, int order,
    std::span<const std::vector<WordId>> test,
    const std::vector<Count> &n1_values = {1, 2, 3, 4, 5});

}  // namespace smoothlm

#endif  // SMOOTHLM_EVALUATE_HPP_
