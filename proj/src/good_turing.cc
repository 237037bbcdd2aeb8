// good_turing.cc
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

#include "smoothlm/good_turing.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "smoothlm/error.hpp"

namespace smoothlm {

double GtAdjustedCount(Count r, const std::map<Count, Count> &n, Count n0) {
  auto get = [&n, n0](Count k) -> Count {
    if (k == 0) return n0;
    auto it = n.find(k);
    return it == n.end() ? 0 : it->second;
  };
  Count nr = get(r);
  if (r < 0 || nr <= 0) {
    Fail(ErrorKind::kUndefinedEstimate,
         "adjusted count undefined at r=" + std::to_string(r) + ": n_" +
             std::to_string(r) + " = 0");
  }
  return static_cast<double>(r + 1) * static_cast<double>(get(r + 1)) /
         static_cast<double>(nr);
}

double GtZeroMass(const CountOfCounts &coc) {
  if (coc.total == 0) {
    Fail(ErrorKind::kUndefinedEstimate, "zero-count mass undefined for N = 0");
  }
  return static_cast<double>(coc[1]) / static_cast<double>(coc.total);
}

SimpleGoodTuring::SimpleGoodTuring(const std::map<Count, Count> &n) {
  for (const auto &[r, nr] : n) {
    if (r >= 1 && nr > 0) n_.emplace(r, nr);
  }
  if (n_.size() < 2) {
    Fail(ErrorKind::kCannotSmooth,
         "count-of-counts smoothing needs two nonzero n_r, got " +
             std::to_string(n_.size()));
  }
  max_r_ = n_.rbegin()->first;

  std::vector<double> lr, lz;
  std::vector<Count> rs;
  for (const auto &[r, nr] : n_) rs.push_back(r);
  for (std::size_t j = 0; j < rs.size(); ++j) {
    double q = j == 0 ? 0.0 : static_cast<double>(rs[j - 1]);
    double t = j + 1 < rs.size() ? static_cast<double>(rs[j + 1])
                                 : 2.0 * static_cast<double>(rs[j]) - q;
    double z = static_cast<double>(n_.at(rs[j])) / (0.5 * (t - q));
    lr.push_back(std::log(static_cast<double>(rs[j])));
    lz.push_back(std::log(z));
  }
  double mx = 0, my = 0;
  for (std::size_t j = 0; j < lr.size(); ++j) {
    mx += lr[j];
    my += lz[j];
  }
  mx /= lr.size();
  my /= lr.size();
  double sxy = 0, sxx = 0;
  for (std::size_t j = 0; j < lr.size(); ++j) {
    sxy += (lr[j] - mx) * (lz[j] - my);
    sxx += (lr[j] - mx) * (lr[j] - mx);
  }
  b_ = sxy / sxx;
  a_ = my - b_ * mx;

  // Turing estimates are kept while they differ significantly from the fit.
  switch_r_ = rs.front();
  for (Count r : rs) {
    if (r != switch_r_) break;
    auto next = n_.find(r + 1);
    if (next == n_.end()) break;
    double nr = static_cast<double>(n_.at(r));
    double n1 = static_cast<double>(next->second);
    double x = (r + 1) * n1 / nr;
    double y = (r + 1) * Fitted(r + 1) / Fitted(r);
    double se = std::sqrt((r + 1.0) * (r + 1.0) * n1 / (nr * nr) *
                          (1.0 + n1 / nr));
    if (std::fabs(x - y) <= kSwitchZ * se) break;
    switch_r_ = r + 1;
  }
}

double SimpleGoodTuring::Fitted(double r) const {
  return std::exp(a_ + b_ * std::log(r));
}

double SimpleGoodTuring::Smoothed(Count r) const {
  auto it = n_.find(r);
  if (it != n_.end() && it->second >= kLargeNr) {
    return static_cast<double>(it->second);
  }
  return Fitted(static_cast<double>(r));
}

double SimpleGoodTuring::AdjustedCount(Count r) const {
  if (r < 1) {
    Fail(ErrorKind::kInvalidParameter, "adjusted count needs r >= 1");
  }
  if (r < switch_r_) {
    auto it = n_.find(r);
    auto next = n_.find(r + 1);
    if (it != n_.end() && next != n_.end()) {
      return (r + 1) * static_cast<double>(next->second) /
             static_cast<double>(it->second);
    }
  }
  double rd = static_cast<double>(r);
  return (rd + 1.0) * Fitted(rd + 1.0) / Fitted(rd);
}

}  // namespace smoothlm
