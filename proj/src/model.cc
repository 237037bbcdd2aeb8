// model.cc
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

#include "smoothlm/model.hpp"

#include <algorithm>
#include <cmath>

#include "smoothlm/error.hpp"

namespace smoothlm {

namespace {

struct MethodEntry {
  Method method;
  std::string_view name;
};

constexpr MethodEntry kMethods[] = {
    {Method::kMl, "ml"},
    {Method::kPlusOne, "plus-one"},
    {Method::kPlusDelta, "plus-delta"},
    {Method::kKatz, "katz"},
    {Method::kChurchGale, "church-gale"},
    {Method::kInterpHeldOut, "interp-held-out"},
    {Method::kInterpDelInt, "interp-del-int"},
    {Method::kAvgCount, "new-avg-count"},
    {Method::kOneCount, "new-one-count"},
    {Method::kBaseline, "interp-baseline"},
};

}  // namespace

std::string_view MethodName(Method m) {
  for (const auto &e : kMethods) {
    if (e.method == m) return e.name;
  }
  return "unknown";
}

Method ParseMethod(std::string_view name) {
  for (const auto &e : kMethods) {
    if (e.name == name) return e.method;
  }
  Fail(ErrorKind::kInvalidParameter,
       "unknown method '" + std::string(name) + "'");
}

const std::vector<Method> &AllMethods() {
  static const std::vector<Method> all = [] {
    std::vector<Method> v;
    for (const auto &e : kMethods) v.push_back(e.method);
    return v;
  }();
  return all;
}

double LanguageModel::Log2Prob(std::span<const WordId> history,
                               WordId w) const {
  return std::log2(Prob(history, w));
}

void LanguageModel::FillDistribution(std::span<const WordId> history,
                                     std::span<double> out) const {
  out[kBos] = 0.0;
  for (std::size_t w = 1; w < out.size(); ++w) {
    out[w] = Prob(history, static_cast<WordId>(w));
  }
}

std::span<const WordId> LanguageModel::Context(
    std::span<const WordId> history) const {
  std::size_t need = static_cast<std::size_t>(order() - 1);
  if (history.size() < need) {
    Fail(ErrorKind::kInvalidParameter,
         "history of length " + std::to_string(history.size()) +
             " is too short for order " + std::to_string(order()));
  }
  return history.subspan(history.size() - need);
}

std::vector<NodeId> SuffixChain(const CountTable &table,
                                std::span<const WordId> context) {
  std::vector<NodeId> chain(context.size() + 1, kNoNode);
  chain[0] = 0;
  for (std::size_t j = 1; j <= context.size(); ++j) {
    chain[j] = table.Find(context.subspan(context.size() - j));
    // A longer suffix cannot exist when a shorter one is missing.
    if (chain[j] == kNoNode) break;
  }
  return chain;
}

namespace {

void CheckEvent(WordId w, std::size_t vocab_size) {
  if (w <= kBos || static_cast<std::size_t>(w) >= vocab_size) {
    Fail(ErrorKind::kInvalidParameter,
         "word id " + std::to_string(w) + " is not a predictable event");
  }
}

}  // namespace

MlModel::MlModel(std::shared_ptr<const CountTable> table, int order)
    : table_(std::move(table)), order_(order) {
  if (order < 1 || order > table_->order()) {
    Fail(ErrorKind::kInvalidParameter, "model order exceeds count order");
  }
}

double MlModel::Prob(std::span<const WordId> history, WordId w) const {
  CheckEvent(w, vocab_size());
  auto ctx = Context(history);
  NodeId h = table_->Find(ctx);
  int level = order_ - 1;
  if (h == kNoNode || table_->level(level).total[h] == 0) {
    Fail(ErrorKind::kUndefinedDistribution,
         "maximum likelihood estimate undefined for a history with no counts");
  }
  NodeId child = table_->Child(level, h, w);
  Count c = child == kNoNode ? 0 : table_->level(order_).count[child];
  return static_cast<double>(c) /
         static_cast<double>(table_->level(level).total[h]);
}

void MlModel::FillDistribution(std::span<const WordId> history,
                               std::span<double> out) const {
  auto ctx = Context(history);
  NodeId h = table_->Find(ctx);
  int level = order_ - 1;
  if (h == kNoNode || table_->level(level).total[h] == 0) {
    Fail(ErrorKind::kUndefinedDistribution,
         "maximum likelihood estimate undefined for a history with no counts");
  }
  std::fill(out.begin(), out.end(), 0.0);
  const auto &lv = table_->level(level);
  const auto &next = table_->level(order_);
  double n = static_cast<double>(lv.total[h]);
  for (NodeId c = lv.child_begin[h]; c < lv.child_end[h]; ++c) {
    out[next.word[c]] = static_cast<double>(next.count[c]) / n;
  }
}

AdditiveModel::AdditiveModel(std::shared_ptr<const CountTable> table,
                             int order, double delta,
                             AdditiveDenominator denom)
    : table_(std::move(table)), order_(order), delta_(delta), denom_(denom) {
  if (!(delta > 0.0) || !std::isfinite(delta)) {
    Fail(ErrorKind::kInvalidParameter, "additive delta must be > 0");
  }
  if (order < 1 || order > table_->order()) {
    Fail(ErrorKind::kInvalidParameter, "model order exceeds count order");
  }
  denom_size_ = denom == AdditiveDenominator::kPredictedEvents
                    ? static_cast<double>(table_->vocab_size() - 1)
                    : static_cast<double>(table_->vocab_size() - 3);
}

ParamMap AdditiveModel::Params() const {
  return {{"delta", delta_},
          {"content_words_denominator",
           denom_ == AdditiveDenominator::kContentWords ? 1.0 : 0.0}};
}

double AdditiveModel::Prob(std::span<const WordId> history, WordId w) const {
  CheckEvent(w, vocab_size());
  auto ctx = Context(history);
  NodeId h = table_->Find(ctx);
  int level = order_ - 1;
  Count n = 0, c = 0;
  if (h != kNoNode) {
    n = table_->level(level).total[h];
    NodeId child = table_->Child(level, h, w);
    if (child != kNoNode) c = table_->level(order_).count[child];
  }
  return (static_cast<double>(c) + delta_) /
         (static_cast<double>(n) + delta_ * denom_size_);
}

void AdditiveModel::FillDistribution(std::span<const WordId> history,
                                     std::span<double> out) const {
  auto ctx = Context(history);
  NodeId h = table_->Find(ctx);
  int level = order_ - 1;
  Count n = h == kNoNode ? 0 : table_->level(level).total[h];
  double z = static_cast<double>(n) + delta_ * denom_size_;
  std::fill(out.begin(), out.end(), delta_ / z);
  out[kBos] = 0.0;
  if (h == kNoNode) return;
  const auto &lv = table_->level(level);
  const auto &next = table_->level(order_);
  for (NodeId c = lv.child_begin[h]; c < lv.child_end[h]; ++c) {
    out[next.word[c]] = (static_cast<double>(next.count[c]) + delta_) / z;
  }
}

}  // namespace smoothlm
