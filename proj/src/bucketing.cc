// bucketing.cc
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

#include "smoothlm/bucketing.hpp"

#include <algorithm>
#include <cmath>

#include "smoothlm/error.hpp"

namespace smoothlm {

std::string BucketKeyName(BucketKey key) {
  switch (key) {
    case BucketKey::kTotalCount: return "total-count";
    case BucketKey::kAverageCount: return "average-count";
    case BucketKey::kCountBeforeDeletion: return "count-before-deletion";
    case BucketKey::kChurchGale: return "cg-product";
  }
  return "unknown";
}

BucketMap BucketMap::WallOfBricks(const std::map<double, double> &histogram,
                                  double c_min, double c_top, BucketKey kind) {
  if (!(c_min >= 1.0)) {
    Fail(ErrorKind::kInvalidParameter, "c_min must be >= 1");
  }
  if (!(c_top >= 1.0)) {
    Fail(ErrorKind::kInvalidParameter, "c_top must be >= 1");
  }
  BucketMap map;
  map.c_min_ = c_min;
  map.c_top_ = c_top;
  map.kind_ = kind;
  if (std::isinf(c_min)) return map;

  // Fold everything above c_top onto c_top.
  std::map<double, double> clamped;
  for (const auto &[key, n] : histogram) {
    if (n > 0) clamped[std::min(key, c_top)] += n;
  }
  std::vector<double> upper;
  std::vector<double> fill;
  double acc = 0.0;
  double last_key = 0.0;
  for (const auto &[key, n] : clamped) {
    acc += n;
    last_key = key;
    if (acc >= c_min) {
      upper.push_back(key);
      fill.push_back(acc);
      acc = 0.0;
    }
  }
  if (acc > 0.0) {
    upper.push_back(last_key);
    fill.push_back(acc);
  }
  // An undersized final bucket joins the one before it.
  if (upper.size() >= 2 && fill.back() < c_min) {
    upper.erase(upper.end() - 2);
    fill[fill.size() - 2] += fill.back();
    fill.pop_back();
  }
  // The final bucket is open-ended, so its bound is not stored.
  if (!upper.empty()) upper.pop_back();
  map.upper_ = std::move(upper);
  return map;
}

BucketMap BucketMap::FromBounds(std::vector<double> upper, double c_min,
                                double c_top, BucketKey kind) {
  BucketMap map;
  map.upper_ = std::move(upper);
  map.c_min_ = c_min;
  map.c_top_ = c_top;
  map.kind_ = kind;
  if (!std::is_sorted(map.upper_.begin(), map.upper_.end())) {
    Fail(ErrorKind::kFormat, "bucket bounds are not sorted");
  }
  return map;
}

std::size_t BucketMap::Lookup(double key) const {
  key = std::min(key, c_top_);
  // Bucket b covers (upper[b-1], upper[b]].
  auto it = std::lower_bound(upper_.begin(), upper_.end(), key);
  return static_cast<std::size_t>(it - upper_.begin());
}

}  // namespace smoothlm
