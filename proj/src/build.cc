// build.cc
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

#include "smoothlm/build.hpp"

#include "smoothlm/error.hpp"
#include "smoothlm/katz.hpp"

namespace smoothlm {

bool UsesHeldOutLambdas(Method m) {
  return m == Method::kBaseline || m == Method::kInterpHeldOut ||
         m == Method::kAvgCount;
}

std::unique_ptr<InterpolatedModel> BuildInterpolated(
    std::shared_ptr<const CountTable> table, int order, Method tag,
    BucketKey key, double c_min, double c_top,
    std::span<const std::vector<WordId>> lambda_dev,
    const BaumWelchOptions &options, BaumWelchResult *trace) {
  const bool deleted = tag == Method::kInterpDelInt;
  if (!deleted && lambda_dev.empty()) {
    Fail(ErrorKind::kInvalidParameter,
         "held-out lambda training needs a nonempty dev set");
  }
  auto histograms = deleted
                        ? DeletedKeyHistograms(*table, order, key)
                        : HeldOutKeyHistograms(*table, order, key, lambda_dev);
  auto buckets = BuildBucketMaps(histograms, c_min, c_top, key);
  std::vector<std::vector<double>> lambdas;
  for (const auto &b : buckets) {
    lambdas.emplace_back(b.num_buckets(), options.lambda0);
  }
  auto model = std::make_unique<InterpolatedModel>(
      std::move(table), order, tag, std::move(buckets), std::move(lambdas));
  BaumWelchResult result = deleted ? TrainDeleted(*model, options)
                                   : TrainHeldOut(*model, lambda_dev, options);
  if (trace != nullptr) *trace = std::move(result);
  return model;
}

BuiltModel BuildModel(std::shared_ptr<const CountTable> table,
                      const ModelSpec &spec,
                      std::span<const std::vector<WordId>> lambda_dev) {
  BuiltModel out;
  const int n = spec.order;
  switch (spec.method) {
    case Method::kMl:
      out.model = std::make_unique<MlModel>(table, n);
      break;
    case Method::kPlusOne:
      out.model = std::make_unique<AdditiveModel>(table, n, 1.0,
                                                  spec.additive_denominator);
      break;
    case Method::kPlusDelta:
      out.model = std::make_unique<AdditiveModel>(table, n, spec.delta,
                                                  spec.additive_denominator);
      break;
    case Method::kKatz: {
      KatzOptions opts;
      opts.k = spec.k;
      opts.delta = spec.delta;
      opts.beta = spec.beta;
      out.model = std::make_unique<KatzModel>(table, n, opts);
      break;
    }
    case Method::kChurchGale:
      out.model = std::make_unique<ChurchGaleModel>(table, n, spec.church_gale);
      break;
    case Method::kOneCount: {
      OneCountParams p = spec.one_count;
      if (p.beta.empty()) p.beta.assign(n, 1.0);
      if (p.gamma.empty()) p.gamma.assign(n, 1.0);
      out.model = std::make_unique<OneCountModel>(table, n, std::move(p));
      break;
    }
    case Method::kBaseline:
    case Method::kInterpHeldOut:
    case Method::kInterpDelInt:
    case Method::kAvgCount: {
      BucketKey key = BucketKey::kTotalCount;
      double c_min = spec.c_min;
      if (spec.method == Method::kBaseline) c_min = kInfiniteCmin;
      if (spec.method == Method::kAvgCount) key = BucketKey::kAverageCount;
      if (spec.method == Method::kInterpDelInt) {
        key = BucketKey::kCountBeforeDeletion;
      }
      BaumWelchResult trace;
      out.model = BuildInterpolated(table, n, spec.method, key, c_min,
                                    spec.c_top, lambda_dev, spec.baum_welch,
                                    &trace);
      out.lambda_training = std::move(trace);
      break;
    }
  }
  return out;
}

}  // namespace smoothlm
