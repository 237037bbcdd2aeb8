// church_gale.hpp
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
// Bucketed Good-Turing. Each order-j event (h, w) is keyed by
// p(h) * p_1(w), where p(h) comes from the corrected count of h at order j-1
// and p_1 is the Good-Turing unigram. Log-spaced minibuckets over the key are
// merged by wall of bricks, Good-Turing runs inside every bucket, and the
// corrected counts are renormalized per history.
//
// Histories sharing (order j-1 bucket, count) share a key, so bucket
// populations are computed per history class instead of per history.

#ifndef SMOOTHLM_CHURCH_GALE_HPP_
#define SMOOTHLM_CHURCH_GALE_HPP_

#include <map>
#include <memory>
#include <utility>
#include <vector>

#include "smoothlm/bucketing.hpp"
#include "smoothlm/model.hpp"

namespace smoothlm {

struct ChurchGaleOptions {
  double c_min = 500.0;  // nonzero n-grams per bucket; infinity = one bucket
  int c_mb = 100000;     // minibuckets over the key range
  double p_n1_0 = 0.01;  // zero-count mass when a bucket has no singletons
  double p_n1_n = 0.995; // zero-count mass when every count is a singleton
};

// Minibucket count giving `per_decade` bins per factor of ten of key range.
int MinibucketsPerDecade(double key_min, double key_max, int per_decade = 3);

struct CgBucket {
  Count population = 0;  // every possible event in the bucket
  Count n0 = 0;          // events with zero count
  Count total = 0;       // N_b
  std::map<Count, Count> n;
  double zero_mass = 0.0;
  double r0_star = 0.0;
  std::map<Count, double> r_star;

  double Corrected(Count r) const {
    return r == 0 ? r0_star : r_star.at(r);
  }
};

// Good-Turing inside one bucket with the degenerate-case masses.
void FinishBucket(CgBucket &bucket, double p_n1_0, double p_n1_n);

class ChurchGaleModel : public LanguageModel {
 public:
  struct Level {
    // History classes predicting this order. Class 0 is the all-begin
    // history; the others are (bucket, count) pairs of the order below.
    std::vector<double> class_key;
    std::vector<Count> class_mult;
    std::map<std::pair<int, Count>, int> class_index;
    // Bucket of every (history class, unigram count class) cell.
    std::vector<int> cell_bucket;
    std::vector<CgBucket> buckets;
    std::vector<double> class_base;
    std::vector<int> node_bucket;        // per event node of this order
    std::vector<double> node_corrected;  // per event node of this order
    std::vector<int> hist_class;         // per history node (order below)
    std::vector<double> hist_z;          // per history node (order below)
    double key_min = 0.0;
    double key_max = 0.0;
    BucketMap merge;
  };

  ChurchGaleModel(std::shared_ptr<const CountTable> table, int order,
                  const ChurchGaleOptions &options);

  Method method() const override { return Method::kChurchGale; }
  int order() const override { return order_; }
  std::size_t vocab_size() const override { return table_->vocab_size(); }
  ParamMap Params() const override;
  double Prob(std::span<const WordId> history, WordId w) const override;
  void FillDistribution(std::span<const WordId> history,
                        std::span<double> out) const override;

  const Level &level(int j) const { return levels_[j]; }
  const ChurchGaleOptions &options() const { return options_; }
  std::size_t num_unigram_classes() const { return r1_count_.size(); }
  Count unigram_class_count(std::size_t c) const { return r1_count_[c]; }
  Count unigram_class_size(std::size_t c) const { return r1_mult_[c]; }
  int UnigramClass(WordId w) const { return r1_class_[w]; }
  // Good-Turing unigram probability used in the keys.
  double UnigramProb(WordId w) const;
  // History class of a word sequence of length j-1 at order j.
  int ClassOf(int j, std::span<const WordId> history) const;
  // Bucket of the order-j event (history, w).
  int BucketOf(int j, std::span<const WordId> history, WordId w) const;
  const CountTable &table() const { return *table_; }

 private:
  int MinibucketOf(const Level &lv, double key) const;
  void BuildUnigrams();
  void BuildLevel(int j);
  double Normalizer(int j, int cls, NodeId hist) const;

  std::shared_ptr<const CountTable> table_;
  int order_;
  ChurchGaleOptions options_;
  double num_tokens_ = 0.0;
  std::vector<Count> r1_count_;
  std::vector<Count> r1_mult_;
  std::vector<double> r1_prob_;
  std::vector<int> r1_class_;
  std::vector<Level> levels_;  // indexed by order, entry 0 unused
};

}  // namespace smoothlm

#endif  // SMOOTHLM_CHURCH_GALE_HPP_
