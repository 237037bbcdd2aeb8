// interpolated.cc
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

#include "smoothlm/interpolated.hpp"

#include <algorithm>

#include "smoothlm/error.hpp"

namespace smoothlm {

double HistoryKey(const CountTable &table, int level, NodeId node,
                  BucketKey key) {
  const auto &lv = table.level(level);
  double n = static_cast<double>(lv.total[node]);
  if (key == BucketKey::kAverageCount) {
    return lv.distinct[node] == 0 ? 0.0
                                  : n / static_cast<double>(lv.distinct[node]);
  }
  return n;
}

std::vector<BucketMap> BuildBucketMaps(
    const std::vector<std::map<double, double>> &histograms, double c_min,
    double c_top, BucketKey key) {
  std::vector<BucketMap> maps;
  for (const auto &h : histograms) {
    maps.push_back(BucketMap::WallOfBricks(h, c_min, c_top, key));
  }
  return maps;
}

InterpolatedModel::InterpolatedModel(std::shared_ptr<const CountTable> table,
                                     int order, Method tag,
                                     std::vector<BucketMap> buckets,
                                     std::vector<std::vector<double>> lambdas)
    : table_(std::move(table)),
      order_(order),
      tag_(tag),
      buckets_(std::move(buckets)) {
  if (order < 1 || order > table_->order()) {
    Fail(ErrorKind::kInvalidParameter, "model order exceeds count order");
  }
  if (static_cast<int>(buckets_.size()) != order) {
    Fail(ErrorKind::kInvalidParameter, "need one bucket map per order");
  }
  uniform_ = 1.0 / static_cast<double>(table_->vocab_size() - 1);
  set_lambdas(std::move(lambdas));
}

void InterpolatedModel::set_lambdas(std::vector<std::vector<double>> lambdas) {
  if (static_cast<int>(lambdas.size()) != order_) {
    Fail(ErrorKind::kInvalidParameter, "need one lambda vector per order");
  }
  for (int j = 0; j < order_; ++j) {
    if (lambdas[j].size() != buckets_[j].num_buckets()) {
      Fail(ErrorKind::kInvalidParameter,
           "lambda count does not match bucket count at order " +
               std::to_string(j + 1));
    }
    for (double l : lambdas[j]) {
      if (!(l >= 0.0 && l <= 1.0)) {
        Fail(ErrorKind::kInvalidParameter, "lambda outside [0,1]");
      }
    }
  }
  lambdas_ = std::move(lambdas);
}

ParamMap InterpolatedModel::Params() const {
  return {{"c_min", buckets_.back().c_min()},
          {"c_top", buckets_.back().c_top()},
          {"average_count_key",
           buckets_.back().kind() == BucketKey::kAverageCount ? 1.0 : 0.0}};
}

int InterpolatedModel::BucketOf(int level, NodeId node) const {
  if (node == kNoNode) return -1;
  const auto &lv = table_->level(level - 1);
  if (lv.total[node] == 0) return -1;
  const BucketMap &map = buckets_[level - 1];
  return static_cast<int>(
      map.Lookup(HistoryKey(*table_, level - 1, node, map.kind())));
}

double InterpolatedModel::Lambda(int level, NodeId node) const {
  int b = BucketOf(level, node);
  return b < 0 ? 0.0 : lambdas_[level - 1][b];
}

double InterpolatedModel::Prob(std::span<const WordId> history,
                               WordId w) const {
  if (w <= kBos || static_cast<std::size_t>(w) >= vocab_size()) {
    Fail(ErrorKind::kInvalidParameter,
         "word id " + std::to_string(w) + " is not a predictable event");
  }
  return LevelProb(order_, Context(history), w);
}

double InterpolatedModel::LevelProb(int j, std::span<const WordId> context,
                                    WordId w) const {
  auto chain = SuffixChain(*table_, context);
  double p = uniform_;
  for (int i = 1; i <= j; ++i) {
    NodeId h = chain[i - 1];
    double lambda = Lambda(i, h);
    if (lambda == 0.0) continue;
    const auto &lv = table_->level(i - 1);
    NodeId child = table_->Child(i - 1, h, w);
    double c = child == kNoNode
                   ? 0.0
                   : static_cast<double>(table_->level(i).count[child]);
    p = (1.0 - lambda) * p + lambda / static_cast<double>(lv.total[h]) * c;
  }
  return p;
}

void InterpolatedModel::FillDistribution(std::span<const WordId> history,
                                         std::span<double> out) const {
  auto ctx = Context(history);
  auto chain = SuffixChain(*table_, ctx);
  std::fill(out.begin(), out.end(), uniform_);
  out[kBos] = 0.0;
  for (int j = 1; j <= order_; ++j) {
    NodeId h = chain[j - 1];
    double lambda = Lambda(j, h);
    if (lambda == 0.0) continue;
    if (lambda != 1.0) {
      for (double &v : out) v *= 1.0 - lambda;
    } else {
      std::fill(out.begin(), out.end(), 0.0);
    }
    const auto &lv = table_->level(j - 1);
    const auto &next = table_->level(j);
    double scale = lambda / static_cast<double>(lv.total[h]);
    for (NodeId c = lv.child_begin[h]; c < lv.child_end[h]; ++c) {
      out[next.word[c]] += scale * static_cast<double>(next.count[c]);
    }
  }
}

}  // namespace smoothlm
