// one_count.cc
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

#include "smoothlm/one_count.hpp"

#include <algorithm>
#include <cmath>

#include "smoothlm/error.hpp"

namespace smoothlm {

OneCountModel::OneCountModel(std::shared_ptr<const CountTable> table,
                             int order, OneCountParams params)
    : table_(std::move(table)), order_(order), params_(std::move(params)) {
  if (order < 1 || order > table_->order()) {
    Fail(ErrorKind::kInvalidParameter, "model order exceeds count order");
  }
  if (static_cast<int>(params_.beta.size()) != order ||
      static_cast<int>(params_.gamma.size()) != order) {
    Fail(ErrorKind::kInvalidParameter,
         "one-count needs beta and gamma for every order");
  }
  for (int j = 0; j < order; ++j) {
    if (!std::isfinite(params_.beta[j]) || !std::isfinite(params_.gamma[j]) ||
        params_.gamma[j] < 0.0) {
      Fail(ErrorKind::kInvalidParameter,
           "one-count gamma must be finite and >= 0 at order " +
               std::to_string(j + 1));
    }
  }
  // alpha >= 0 must hold for every possible n_1(h) >= 0.
  for (int j = 0; j < order; ++j) {
    if (params_.gamma[j] > 0.0 && params_.beta[j] < 0.0) {
      const auto &lv = table_->level(j);
      for (std::size_t h = 0; h < lv.size(); ++h) {
        if (Alpha(j + 1, static_cast<NodeId>(h)) < 0.0) {
          Fail(ErrorKind::kInvalidParameter,
               "one-count alpha is negative at order " + std::to_string(j + 1));
        }
      }
    }
  }
  uniform_ = 1.0 / static_cast<double>(table_->vocab_size() - 1);
}

ParamMap OneCountModel::Params() const {
  ParamMap p;
  for (int j = 1; j <= order_; ++j) {
    p["beta" + std::to_string(j)] = params_.beta[j - 1];
    p["gamma" + std::to_string(j)] = params_.gamma[j - 1];
  }
  return p;
}

double OneCountModel::Alpha(int j, NodeId node) const {
  double n1 = node == kNoNode
                  ? 0.0
                  : static_cast<double>(table_->level(j - 1).ones[node]);
  return params_.gamma[j - 1] * (n1 + params_.beta[j - 1]);
}

double OneCountModel::Backoff(int j, NodeId node) const {
  if (node == kNoNode) return 1.0;
  double n = static_cast<double>(table_->level(j - 1).total[node]);
  if (n == 0.0) return 1.0;
  double a = Alpha(j, node);
  return a / (n + a);
}

double OneCountModel::LevelProb(int j, std::span<const WordId> context,
                                WordId w) const {
  auto chain = SuffixChain(*table_, context);
  double p = uniform_;
  for (int i = 1; i <= j; ++i) {
    NodeId h = chain[i - 1];
    if (h == kNoNode) continue;
    double n = static_cast<double>(table_->level(i - 1).total[h]);
    if (n == 0.0) continue;
    double a = Alpha(i, h);
    NodeId child = table_->Child(i - 1, h, w);
    double c = child == kNoNode
                   ? 0.0
                   : static_cast<double>(table_->level(i).count[child]);
    p = c == 0.0 ? a * p / (n + a) : (c + a * p) / (n + a);
  }
  return p;
}

double OneCountModel::Prob(std::span<const WordId> history, WordId w) const {
  if (w <= kBos || static_cast<std::size_t>(w) >= vocab_size()) {
    Fail(ErrorKind::kInvalidParameter,
         "word id " + std::to_string(w) + " is not a predictable event");
  }
  return LevelProb(order_, Context(history), w);
}

void OneCountModel::FillDistribution(std::span<const WordId> history,
                                     std::span<double> out) const {
  auto chain = SuffixChain(*table_, Context(history));
  std::fill(out.begin(), out.end(), uniform_);
  out[kBos] = 0.0;
  std::vector<double> lower;
  for (int i = 1; i <= order_; ++i) {
    NodeId h = chain[i - 1];
    if (h == kNoNode) continue;
    const auto &lv = table_->level(i - 1);
    double n = static_cast<double>(lv.total[h]);
    if (n == 0.0) continue;
    double a = Alpha(i, h);
    double z = n + a;
    const auto &next = table_->level(i);
    lower.clear();
    for (NodeId c = lv.child_begin[h]; c < lv.child_end[h]; ++c) {
      lower.push_back(out[next.word[c]]);
    }
    for (double &v : out) v = a * v / z;
    for (NodeId c = lv.child_begin[h]; c < lv.child_end[h]; ++c) {
      if (next.count[c] == 0) continue;
      out[next.word[c]] = (static_cast<double>(next.count[c]) +
                           a * lower[c - lv.child_begin[h]]) /
                          z;
    }
  }
}

}  // namespace smoothlm
