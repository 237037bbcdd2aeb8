// interpolated.hpp
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
// Recursive linear interpolation with bucketed weights:
//   p_j(w|h) = lambda_j(b(h)) p_ML(w|h) + (1 - lambda_j(b(h))) p_{j-1}(w|h')
// ending in the uniform distribution over predicted events.

#ifndef SMOOTHLM_INTERPOLATED_HPP_
#define SMOOTHLM_INTERPOLATED_HPP_

#include <memory>
#include <span>
#include <vector>

#include "smoothlm/bucketing.hpp"
#include "smoothlm/model.hpp"

namespace smoothlm {

// Bucketing statistic of history node `node` at trie level `level`.
double HistoryKey(const CountTable &table, int level, NodeId node,
                  BucketKey key);

// Per-level wall-of-bricks maps. `histograms[j-1]` counts the lambda-training
// events at level j by the key of their history.
std::vector<BucketMap> BuildBucketMaps(
    const std::vector<std::map<double, double>> &histograms, double c_min,
    double c_top, BucketKey key);

class InterpolatedModel : public LanguageModel {
 public:
  // `buckets` and `lambdas` are indexed by level - 1 for levels 1..order.
  InterpolatedModel(std::shared_ptr<const CountTable> table, int order,
                    Method tag, std::vector<BucketMap> buckets,
                    std::vector<std::vector<double>> lambdas);

  Method method() const override { return tag_; }
  int order() const override { return order_; }
  std::size_t vocab_size() const override { return table_->vocab_size(); }
  ParamMap Params() const override;
  double Prob(std::span<const WordId> history, WordId w) const override;
  void FillDistribution(std::span<const WordId> history,
                        std::span<double> out) const override;

  // p_j(w | context) with context holding j-1 words.
  double LevelProb(int j, std::span<const WordId> context, WordId w) const;
  const CountTable &table() const { return *table_; }
  std::shared_ptr<const CountTable> shared_table() const { return table_; }
  const BucketMap &buckets(int level) const { return buckets_[level - 1]; }
  const std::vector<double> &lambdas(int level) const {
    return lambdas_[level - 1];
  }
  const std::vector<std::vector<double>> &all_lambdas() const {
    return lambdas_;
  }
  void set_lambdas(std::vector<std::vector<double>> lambdas);

  // Bucket of history node `node` (trie level level-1) for the level-`level`
  // weight, or -1 when the history has no counts and the weight is 0.
  int BucketOf(int level, NodeId node) const;
  double Lambda(int level, NodeId node) const;
  double uniform() const { return uniform_; }

 private:
  std::shared_ptr<const CountTable> table_;
  int order_;
  Method tag_;
  std::vector<BucketMap> buckets_;
  std::vector<std::vector<double>> lambdas_;
  double uniform_;
};

}  // namespace smoothlm

#endif  // SMOOTHLM_INTERPOLATED_HPP_
