// model.hpp
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
// Query interface shared by every smoothing method, plus the maximum
// likelihood and additive models.

#ifndef SMOOTHLM_MODEL_HPP_
#define SMOOTHLM_MODEL_HPP_

#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "smoothlm/counts.hpp"

namespace smoothlm {

enum class Method {
  kMl,
  kPlusOne,
  kPlusDelta,
  kKatz,
  kChurchGale,
  kInterpHeldOut,
  kInterpDelInt,
  kAvgCount,
  kOneCount,
  kBaseline,
};

std::string_view MethodName(Method m);
Method ParseMethod(std::string_view name);
const std::vector<Method> &AllMethods();

using ParamMap = std::map<std::string, double>;

// Conditional distribution p(w | h) over the predicted-event space (every id
// except the begin token).
class LanguageModel {
 public:
  virtual ~LanguageModel() = default;

  virtual Method method() const = 0;
  virtual int order() const = 0;
  virtual std::size_t vocab_size() const = 0;
  // Scalar parameters, as written to the model file header.
  virtual ParamMap Params() const = 0;

  // `history` holds at least order-1 ids; only the last order-1 are used.
  virtual double Prob(std::span<const WordId> history, WordId w) const = 0;
  double Log2Prob(std::span<const WordId> history, WordId w) const;
  // out has vocab_size() entries; out[kBos] is set to 0.
  virtual void FillDistribution(std::span<const WordId> history,
                                std::span<double> out) const;

 protected:
  // The trailing order-1 words of `history`; throws if it is too short.
  std::span<const WordId> Context(std::span<const WordId> history) const;
};

// chain[j] is the node for the last j words of `context` (kNoNode if absent),
// for j = 0..context.size().
std::vector<NodeId> SuffixChain(const CountTable &table,
                                std::span<const WordId> context);

class MlModel : public LanguageModel {
 public:
  MlModel(std::shared_ptr<const CountTable> table, int order);

  Method method() const override { return Method::kMl; }
  int order() const override { return order_; }
  std::size_t vocab_size() const override { return table_->vocab_size(); }
  ParamMap Params() const override { return {}; }
  // Throws kUndefinedDistribution when N(h) = 0.
  double Prob(std::span<const WordId> history, WordId w) const override;
  void FillDistribution(std::span<const WordId> history,
                        std::span<double> out) const override;

  const CountTable &table() const { return *table_; }

 private:
  std::shared_ptr<const CountTable> table_;
  int order_;
};

// Which event count multiplies delta in the additive denominator.
enum class AdditiveDenominator {
  kPredictedEvents,  // |V| - 1: normalized over content words, eos and unk
  kContentWords,     // content words only, as in the textbook bigram example
};

// p = (c + delta) / (N(h) + delta * D).
class AdditiveModel : public LanguageModel {
 public:
  AdditiveModel(std::shared_ptr<const CountTable> table, int order,
                double delta,
                AdditiveDenominator denom = AdditiveDenominator::kPredictedEvents);

  Method method() const override {
    return delta_ == 1.0 ? Method::kPlusOne : Method::kPlusDelta;
  }
  int order() const override { return order_; }
  std::size_t vocab_size() const override { return table_->vocab_size(); }
  ParamMap Params() const override;
  double Prob(std::span<const WordId> history, WordId w) const override;
  void FillDistribution(std::span<const WordId> history,
                        std::span<double> out) const override;

  double delta() const { return delta_; }
  double denominator_size() const { return denom_size_; }
  AdditiveDenominator denominator() const { return denom_; }
  const CountTable &table() const { return *table_; }

 private:
  std::shared_ptr<const CountTable> table_;
  int order_;
  double delta_;
  AdditiveDenominator denom_;
  double denom_size_;
};

}  // namespace smoothlm

#endif  // SMOOTHLM_MODEL_HPP_
