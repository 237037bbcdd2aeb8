// baum_welch.hpp
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
// EM training of bucketed interpolation weights, on held-out text or by
// deleting one training word at a time.

#ifndef SMOOTHLM_BAUM_WELCH_HPP_
#define SMOOTHLM_BAUM_WELCH_HPP_

#include <span>
#include <vector>

#include "smoothlm/interpolated.hpp"

namespace smoothlm {

struct BaumWelchOptions {
  double lambda0 = 0.5;
  double delta_stop = 0.001;  // bits per word
  int max_iterations = 200;
};

struct BaumWelchResult {
  std::vector<std::vector<double>> lambdas;
  // Entropy of the lambda-training data before each update, and after the
  // last one.
  std::vector<double> entropy_trace;
  int iterations = 0;
  bool converged = false;
  // untrained[j][b]: bucket saw no training events and kept lambda0.
  std::vector<std::vector<bool>> untrained;
};

// Training events flattened as event-major arrays of `levels` entries.
struct InterpolationEvents {
  int levels = 0;
  std::vector<int> bucket;   // -1: weight forced to 0 at this level
  std::vector<double> ml;    // maximum likelihood estimate at this level
  std::vector<double> weight;
  double uniform = 0.0;

  std::size_t size() const { return weight.size(); }
};

// One event per predicted token of `dev` (sentences encoded for the model
// order or higher).
InterpolationEvents HeldOutEvents(const InterpolatedModel &skeleton,
                                  std::span<const std::vector<WordId>> dev);
// One event per distinct training n-gram, weighted by its count, with that
// occurrence removed from every order. Buckets use the pre-deletion counts.
InterpolationEvents DeletedEvents(const InterpolatedModel &skeleton);

// Histograms of history keys over the events, for wall-of-bricks bucketing.
std::vector<std::map<double, double>> HeldOutKeyHistograms(
    const CountTable &table, int order, BucketKey key,
    std::span<const std::vector<WordId>> dev);
std::vector<std::map<double, double>> DeletedKeyHistograms(
    const CountTable &table, int order, BucketKey key);

// Entropy in bits per weighted event under the given lambdas.
double InterpolationEntropy(const InterpolationEvents &events,
                            const std::vector<std::vector<double>> &lambdas);

BaumWelchResult RunBaumWelch(const InterpolationEvents &events,
                             const std::vector<std::size_t> &num_buckets,
                             const BaumWelchOptions &options);

// Trains the skeleton's lambdas in place and returns the trace. Throws
// kInvalidParameter when there are no events.
BaumWelchResult TrainHeldOut(InterpolatedModel &model,
                             std::span<const std::vector<WordId>> dev,
                             const BaumWelchOptions &options = {});
BaumWelchResult TrainDeleted(InterpolatedModel &model,
                             const BaumWelchOptions &options = {});

}  // namespace smoothlm

#endif  // SMOOTHLM_BAUM_WELCH_HPP_
