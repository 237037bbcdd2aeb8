// tune.hpp
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
// Parameter search with two dev sets: each candidate is scored by its
// cross-entropy on dev1, with interpolation weights refit on dev2 for the
// held-out methods.

#ifndef SMOOTHLM_TUNE_HPP_
#define SMOOTHLM_TUNE_HPP_

#include <iosfwd>
#include <memory>
#include <span>
#include <vector>

#include "smoothlm/build.hpp"
#include "smoothlm/powell.hpp"

namespace smoothlm {

struct TuneData {
  std::shared_ptr<const CountTable> train;
  std::span<const std::vector<WordId>> dev1;  // scores candidates
  std::span<const std::vector<WordId>> dev2;  // trains lambdas
};

struct TuneOptions {
  bool search = true;  // false applies the presets instead
  // About 1e-4 bits at desk-scale entropies.
  PowellOptions powell{1e-5, 1e-4, 100};
  int threads = 1;
  // Integer ranges for c_min and c_mb.
  long long c_min_max = 100000;
  long long c_mb_min = 10;
  long long c_mb_max = 100000;
  int church_gale_rounds = 2;
};

struct AuditEntry {
  ParamMap params;
  double dev1_bits = 0.0;
};

struct TuneResult {
  ModelSpec spec;
  double dev1_bits = 0.0;
  std::vector<AuditEntry> audit;  // one entry per objective evaluation
};

// Searches c_min for the interpolated methods, delta for Katz and
// plus-delta, beta and gamma per order for one-count, and c_min, c_mb and
// p_n1_n for the bucketed Good-Turing method. Other settings stay as given.
TuneResult TuneParameters(const ModelSpec &start, const TuneData &data,
                          const TuneOptions &options = {});

// Scores one spec: build on train (lambdas on dev2), entropy on dev1.
double DevEntropy(const ModelSpec &spec, const TuneData &data, int threads = 1);

// Katz unigram constant fitted to training size in sentences.
double KatzPresetDelta(double training_sentences);
// Fixed settings for large training sets; c_min follows the training size
// when `scale_c_min` is set.
ChurchGaleOptions ChurchGalePreset(double training_sentences,
                                   bool scale_c_min = false);

// One line per evaluation: tab-separated k=v parameters, then dev1 bits.
void WriteAudit(const std::vector<AuditEntry> &audit, std::ostream &out);

}  // namespace smoothlm

#endif  // SMOOTHLM_TUNE_HPP_
