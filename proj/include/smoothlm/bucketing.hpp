// bucketing.hpp
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
// Wall-of-bricks parameter tying: sorted key values are grouped into buckets
// holding at least c_min observations each.

#ifndef SMOOTHLM_BUCKETING_HPP_
#define SMOOTHLM_BUCKETING_HPP_

#include <cstddef>
#include <limits>
#include <map>
#include <string>
#include <vector>

namespace smoothlm {

enum class BucketKey {
  kTotalCount,     // N(h)
  kAverageCount,   // N(h) / distinct(h)
  kCountBeforeDeletion,
  kChurchGale,     // minibucket index
};

std::string BucketKeyName(BucketKey key);

inline constexpr double kInfiniteCmin = std::numeric_limits<double>::infinity();

class BucketMap {
 public:
  // A single bucket covering every key.
  BucketMap() = default;

  // `histogram` maps key value -> number of observations with that key.
  // Keys above c_top are counted as c_top.
  static BucketMap WallOfBricks(const std::map<double, double> &histogram,
                                double c_min, double c_top,
                                BucketKey kind = BucketKey::kTotalCount);

  std::size_t num_buckets() const { return upper_.size() + 1; }
  std::size_t Lookup(double key) const;
  BucketKey kind() const { return kind_; }
  double c_min() const { return c_min_; }
  double c_top() const { return c_top_; }
  // Bucket b holds keys in (upper[b-1], upper[b]]; the last bucket is open.
  const std::vector<double> &upper_bounds() const { return upper_; }

  static BucketMap FromBounds(std::vector<double> upper, double c_min,
                              double c_top, BucketKey kind);

 private:
  std::vector<double> upper_;
  double c_min_ = kInfiniteCmin;
  double c_top_ = std::numeric_limits<double>::infinity();
  BucketKey kind_ = BucketKey::kTotalCount;
};

}  // namespace smoothlm

#endif  // SMOOTHLM_BUCKETING_HPP_
