// good_turing.hpp
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
// Good-Turing adjusted counts and the Simple Good-Turing smoother for the
// count-of-counts.

#ifndef SMOOTHLM_GOOD_TURING_HPP_
#define SMOOTHLM_GOOD_TURING_HPP_

#include <map>

#include "smoothlm/counts.hpp"

namespace smoothlm {

// r* = (r+1) n_{r+1} / n_r from raw count-of-counts. For r = 0 the caller
// supplies n_0. Throws kUndefinedEstimate when n_r = 0.
double GtAdjustedCount(Count r, const std::map<Count, Count> &n,
                       Count n0 = 0);

// Probability mass the raw estimate leaves for unseen events: n_1 / N.
double GtZeroMass(const CountOfCounts &coc);

// Simple Good-Turing: averaging transform of n_r over gaps, least squares
// fit of log Z_r on log r, Turing estimates for small r until they stop
// differing significantly from the fitted ones.
class SimpleGoodTuring {
 public:
  // Confidence multiplier for the Turing/fitted switch.
  static constexpr double kSwitchZ = 1.65;
  // Count-of-counts at or above this are trusted as-is by Smoothed().
  static constexpr Count kLargeNr = 10;

  // Throws kCannotSmooth with fewer than two nonzero n_r.
  explicit SimpleGoodTuring(const std::map<Count, Count> &n);

  double intercept() const { return a_; }
  double slope() const { return b_; }
  // Fitted count-of-counts exp(a + b log r).
  double Fitted(double r) const;
  // Smoothed n_r: the raw value when n_r >= kLargeNr, else the fit.
  double Smoothed(Count r) const;
  // Unnormalized SGT estimate r* for r >= 1.
  double AdjustedCount(Count r) const;
  // First r that uses the fitted estimate.
  Count switch_point() const { return switch_r_; }
  Count max_r() const { return max_r_; }

 private:
  std::map<Count, Count> n_;
  double a_ = 0.0;
  double b_ = 0.0;
  Count switch_r_ = 1;
  Count max_r_ = 0;
};

}  // namespace smoothlm

#endif  // SMOOTHLM_GOOD_TURING_HPP_
