// build.hpp
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
// One entry point that builds any method from counts, training interpolation
// weights where the method has them.

#ifndef SMOOTHLM_BUILD_HPP_
#define SMOOTHLM_BUILD_HPP_

#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "smoothlm/baum_welch.hpp"
#include "smoothlm/church_gale.hpp"
#include "smoothlm/interpolated.hpp"
#include "smoothlm/model.hpp"
#include "smoothlm/one_count.hpp"

namespace smoothlm {

struct ModelSpec {
  Method method = Method::kBaseline;
  int order = 3;
  double delta = 1.0;  // additive constant; Katz unigram constant
  double beta = 1.0;   // Katz mass for histories with nothing to discount
  std::vector<Count> k;  // Katz k per order, indexed by order; 0 = largest
  double c_min = 100.0;
  double c_top = 100000.0;
  ChurchGaleOptions church_gale;
  // Empty means beta = 1, gamma = 1 at every order.
  OneCountParams one_count;
  BaumWelchOptions baum_welch;
  AdditiveDenominator additive_denominator =
      AdditiveDenominator::kPredictedEvents;
};

struct BuiltModel {
  std::unique_ptr<LanguageModel> model;
  // Set for the interpolated methods.
  std::optional<BaumWelchResult> lambda_training;
};

// `lambda_dev` feeds the held-out weight training and is ignored by the
// other methods. Sentences must be encoded for at least spec.order.
BuiltModel BuildModel(std::shared_ptr<const CountTable> table,
                      const ModelSpec &spec,
                      std::span<const std::vector<WordId>> lambda_dev = {});

// Interpolated skeleton with wall-of-bricks buckets over the key statistics
// of the weight-training events, then Baum-Welch.
std::unique_ptr<InterpolatedModel> BuildInterpolated(
    std::shared_ptr<const CountTable> table, int order, Method tag,
    BucketKey key, double c_min, double c_top,
    std::span<const std::vector<WordId>> lambda_dev,
    const BaumWelchOptions &options, BaumWelchResult *trace = nullptr);

// Methods whose lambdas are trained on held-out data.
bool UsesHeldOutLambdas(Method m);

}  // namespace smoothlm

#endif  // SMOOTHLM_BUILD_HPP_
