// katz.hpp
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
// Katz back-off: counts up to k are discounted by Good-Turing derived ratios,
// the freed mass goes to unseen words in proportion to the next lower order.

#ifndef SMOOTHLM_KATZ_HPP_
#define SMOOTHLM_KATZ_HPP_

#include <memory>
#include <vector>

#include "smoothlm/model.hpp"

namespace smoothlm {

struct KatzDiscounts {
  // Largest discounted count after reduction.
  Count k = 0;
  // d[r] for r = 1..k; d[0] is unused and set to 1.
  std::vector<double> d;

  // Counts above k are not discounted.
  double Ratio(Count r) const {
    return r >= 1 && r <= k ? d[static_cast<std::size_t>(r)] : 1.0;
  }
};

// Starts from `k` (0 = the largest observed count) and lowers it while some
// n_r with r <= k+1 is zero, (k+1) n_{k+1} >= n_1, or some d_r falls outside
// (0, 1]. Throws kUndefinedEstimate if no k >= 1 qualifies.
KatzDiscounts ComputeKatzDiscounts(const CountOfCounts &coc, Count k = 0);

struct KatzOptions {
  // Requested k per order 2..n, indexed by order; missing or 0 means auto.
  std::vector<Count> k;
  double delta = 1.0;  // additive constant of the unigram level
  double beta = 1.0;   // mass for histories with nothing to discount
};

class KatzModel : public LanguageModel {
 public:
  KatzModel(std::shared_ptr<const CountTable> table, int order,
            const KatzOptions &options);

  Method method() const override { return Method::kKatz; }
  int order() const override { return order_; }
  std::size_t vocab_size() const override { return table_->vocab_size(); }
  ParamMap Params() const override;
  double Prob(std::span<const WordId> history, WordId w) const override;
  void FillDistribution(std::span<const WordId> history,
                        std::span<double> out) const override;

  // p_j(w | context) with context holding j-1 words.
  double LevelProb(int j, std::span<const WordId> context, WordId w) const;
  // Discounted count of event node `node` at level j >= 2.
  double KatzCount(int j, NodeId node) const { return katz_count_[j][node]; }
  // Normalizer and back-off weight of history node `node` at trie level j-1,
  // predicting level j. Zero-total histories report 0 and 1.
  double Normalizer(int j, NodeId node) const { return z_[j][node]; }
  double Backoff(int j, NodeId node) const { return bow_[j][node]; }
  bool UsesFallback(int j, NodeId node) const { return fallback_[j][node]; }
  const KatzDiscounts &discounts(int j) const { return discounts_[j]; }
  double delta() const { return options_.delta; }
  double beta() const { return options_.beta; }
  double UnigramProb(WordId w) const;
  // Back-off weight of the empty history against the uniform distribution.
  double RootBackoff() const;
  const CountTable &table() const { return *table_; }

 private:
  double ProbChain(int j, const std::vector<NodeId> &chain, WordId w) const;
  void FillChain(int j, const std::vector<NodeId> &chain,
                 std::span<double> out) const;

  std::shared_ptr<const CountTable> table_;
  int order_;
  KatzOptions options_;
  double num_events_;
  // Indexed by level j (2..n); entries 0 and 1 are empty.
  std::vector<KatzDiscounts> discounts_;
  std::vector<std::vector<double>> katz_count_;
  std::vector<std::vector<double>> z_;
  std::vector<std::vector<double>> bow_;
  std::vector<std::vector<bool>> fallback_;
};

}  // namespace smoothlm

#endif  // SMOOTHLM_KATZ_HPP_
