// one_count.hpp
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
// Interpolation whose lower-order weight grows with the number of words seen
// once after the history:
//   p_j(w|h) = (c(h w) + alpha(h) p_{j-1}(w|h')) / (N(h) + alpha(h)),
//   alpha(h) = gamma_j (n_1(h) + beta_j).

#ifndef SMOOTHLM_ONE_COUNT_HPP_
#define SMOOTHLM_ONE_COUNT_HPP_

#include <memory>
#include <vector>

#include "smoothlm/model.hpp"

namespace smoothlm {

struct OneCountParams {
  // Indexed by level - 1 for levels 1..n.
  std::vector<double> beta;
  std::vector<double> gamma;
};

class OneCountModel : public LanguageModel {
 public:
  OneCountModel(std::shared_ptr<const CountTable> table, int order,
                OneCountParams params);

  Method method() const override { return Method::kOneCount; }
  int order() const override { return order_; }
  std::size_t vocab_size() const override { return table_->vocab_size(); }
  ParamMap Params() const override;
  double Prob(std::span<const WordId> history, WordId w) const override;
  void FillDistribution(std::span<const WordId> history,
                        std::span<double> out) const override;

  double LevelProb(int j, std::span<const WordId> context, WordId w) const;
  // alpha of history node `node` (trie level j-1) when predicting level j.
  double Alpha(int j, NodeId node) const;
  // Weight given to the lower order for an unseen word.
  double Backoff(int j, NodeId node) const;
  const OneCountParams &params() const { return params_; }
  double uniform() const { return uniform_; }
  const CountTable &table() const { return *table_; }

 private:
  std::shared_ptr<const CountTable> table_;
  int order_;
  OneCountParams params_;
  double uniform_;
};

}  // namespace smoothlm

#endif  // SMOOTHLM_ONE_COUNT_HPP_
