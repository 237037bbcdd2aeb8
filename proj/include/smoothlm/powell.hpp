// powell.hpp
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
// Derivative-free minimization: Powell's direction-set method with
// golden-section line searches inside box bounds, and a log-grid search for
// integer parameters.

#ifndef SMOOTHLM_POWELL_HPP_
#define SMOOTHLM_POWELL_HPP_

#include <functional>
#include <limits>
#include <span>
#include <vector>

namespace smoothlm {

struct Bounds {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
};

struct PowellOptions {
  // Stop when a full sweep lowers f by less than this fraction of |f|.
  double ftol = 1e-4;
  // Line search tolerance along a direction, in direction units.
  double xtol = 1e-7;
  int max_iterations = 100;
};

struct PowellResult {
  std::vector<double> x;
  double f = 0.0;
  int iterations = 0;
  int evaluations = 0;
  bool converged = false;
};

using Objective = std::function<double(std::span<const double>)>;

// `bounds` is empty or has one entry per coordinate; x0 must lie inside.
// Throws kNumericFailure naming the point if f is not finite.
PowellResult PowellMinimize(const Objective &f, std::vector<double> x0,
                            const std::vector<Bounds> &bounds = {},
                            const PowellOptions &options = {});

struct IntegerSearchResult {
  long long x = 0;
  double f = 0.0;
};

// Scans `per_decade` log-spaced integers in [lo, hi], then refines around
// the best with shrinking multiplicative steps down to +-1.
IntegerSearchResult IntegerLogSearch(const std::function<double(long long)> &f,
                                     long long lo, long long hi,
                                     int per_decade = 3);

}  // namespace smoothlm

#endif  // SMOOTHLM_POWELL_HPP_
