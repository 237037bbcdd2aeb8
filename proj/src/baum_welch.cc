// baum_welch.cc
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

#include "smoothlm/baum_welch.hpp"

#include <algorithm>
#include <cmath>

#include "smoothlm/error.hpp"

namespace smoothlm {

namespace {

// Keeps every weight strictly below 1 so unseen words stay positive.
constexpr double kMaxLambda = 1.0 - 1e-9;

std::size_t FirstPredicted(const std::vector<WordId> &s, int order) {
  std::size_t first = 0;
  while (first < s.size() && s[first] == kBos) ++first;
  if (first + 1 < static_cast<std::size_t>(order)) {
    Fail(ErrorKind::kInvalidParameter,
         "held-out sentence is padded for a lower order");
  }
  return first;
}

template <typename Fn>
void ForEachHeldOutEvent(const CountTable &table, int order,
                         std::span<const std::vector<WordId>> dev, Fn &&fn) {
  for (const auto &s : dev) {
    std::size_t first = FirstPredicted(s, order);
    for (std::size_t i = first; i < s.size(); ++i) {
      std::span<const WordId> ctx(s.data() + i - (order - 1), order - 1);
      auto chain = SuffixChain(table, ctx);
      fn(chain, s[i]);
    }
  }
}

// Calls fn(level, history node, event node, weight) for every level of every
// distinct top-order training n-gram.
template <typename Fn>
void ForEachDeletedEvent(const CountTable &table, int order, Fn &&fn) {
  const auto &top = table.level(order);
  for (std::size_t g = 0; g < top.size(); ++g) {
    double weight = static_cast<double>(top.count[g]);
    if (weight == 0.0) continue;
    NodeId e = static_cast<NodeId>(g);
    for (int j = order; j >= 1; --j) {
      const auto &lv = table.level(j);
      fn(j, lv.parent[e], e, weight);
      e = lv.suffix[e];
    }
  }
}

}  // namespace

std::vector<std::map<double, double>> HeldOutKeyHistograms(
    const CountTable &table, int order, BucketKey key,
    std::span<const std::vector<WordId>> dev) {
  std::vector<std::map<double, double>> hist(order);
  ForEachHeldOutEvent(table, order, dev,
                      [&](const std::vector<NodeId> &chain, WordId) {
                        for (int j = 1; j <= order; ++j) {
                          NodeId h = chain[j - 1];
                          if (h == kNoNode || table.level(j - 1).total[h] == 0)
                            continue;
                          hist[j - 1][HistoryKey(table, j - 1, h, key)] += 1.0;
                        }
                      });
  return hist;
}

std::vector<std::map<double, double>> DeletedKeyHistograms(
    const CountTable &table, int order, BucketKey key) {
  std::vector<std::map<double, double>> hist(order);
  ForEachDeletedEvent(table, order,
                      [&](int j, NodeId h, NodeId, double weight) {
                        hist[j - 1][HistoryKey(table, j - 1, h, key)] += weight;
                      });
  return hist;
}

InterpolationEvents HeldOutEvents(const InterpolatedModel &skeleton,
                                  std::span<const std::vector<WordId>> dev) {
  const CountTable &table = skeleton.table();
  const int n = skeleton.order();
  InterpolationEvents ev;
  ev.levels = n;
  ev.uniform = skeleton.uniform();
  ForEachHeldOutEvent(
      table, n, dev, [&](const std::vector<NodeId> &chain, WordId w) {
        for (int j = 1; j <= n; ++j) {
          NodeId h = chain[j - 1];
          int b = skeleton.BucketOf(j, h);
          double q = 0.0;
          if (b >= 0) {
            NodeId child = table.Child(j - 1, h, w);
            if (child != kNoNode) {
              q = static_cast<double>(table.level(j).count[child]) /
                  static_cast<double>(table.level(j - 1).total[h]);
            }
          }
          ev.bucket.push_back(b);
          ev.ml.push_back(q);
        }
        ev.weight.push_back(1.0);
      });
  return ev;
}

InterpolationEvents DeletedEvents(const InterpolatedModel &skeleton) {
  const CountTable &table = skeleton.table();
  const int n = skeleton.order();
  InterpolationEvents ev;
  ev.levels = n;
  ev.uniform = skeleton.uniform();
  const auto &top = table.level(n);
  for (std::size_t g = 0; g < top.size(); ++g) {
    if (top.count[g] == 0) continue;
    std::size_t base = ev.bucket.size();
    ev.bucket.resize(base + n);
    ev.ml.resize(base + n);
    NodeId e = static_cast<NodeId>(g);
    for (int j = n; j >= 1; --j) {
      const auto &lv = table.level(j);
      NodeId h = lv.parent[e];
      Count total = table.level(j - 1).total[h];
      ev.bucket[base + j - 1] = skeleton.BucketOf(j, h);
      ev.ml[base + j - 1] =
          total > 1 ? static_cast<double>(lv.count[e] - 1) /
                          static_cast<double>(total - 1)
                    : 0.0;
      e = lv.suffix[e];
    }
    ev.weight.push_back(static_cast<double>(top.count[g]));
  }
  return ev;
}

namespace {

// Returns the entropy; accumulates expected counts when num/den are given.
double EStep(const InterpolationEvents &ev,
             const std::vector<std::vector<double>> &lambdas,
             std::vector<std::vector<double>> *num,
             std::vector<std::vector<double>> *den) {
  const int n = ev.levels;
  std::vector<double> p(n + 1);
  double log_sum = 0.0, total = 0.0;
  for (std::size_t e = 0; e < ev.size(); ++e) {
    const int *bucket = ev.bucket.data() + e * n;
    const double *ml = ev.ml.data() + e * n;
    p[0] = ev.uniform;
    for (int j = 1; j <= n; ++j) {
      int b = bucket[j - 1];
      if (b < 0) {
        p[j] = p[j - 1];
        continue;
      }
      double l = lambdas[j - 1][b];
      p[j] = (1.0 - l) * p[j - 1] + l * ml[j - 1];
    }
    double w = ev.weight[e];
    log_sum -= w * std::log2(p[n]);
    total += w;
    if (num == nullptr) continue;
    // Posterior that level j produced the word, given it was not produced
    // above j.
    double reach = 1.0;
    for (int j = n; j >= 1; --j) {
      int b = bucket[j - 1];
      if (b < 0) continue;
      double l = lambdas[j - 1][b];
      (*num)[j - 1][b] += w * reach * l * ml[j - 1] / p[j];
      (*den)[j - 1][b] += w * reach;
      reach *= (1.0 - l) * p[j - 1] / p[j];
    }
  }
  return total > 0.0 ? log_sum / total : 0.0;
}

}  // namespace

double InterpolationEntropy(const InterpolationEvents &events,
                            const std::vector<std::vector<double>> &lambdas) {
  return EStep(events, lambdas, nullptr, nullptr);
}

BaumWelchResult RunBaumWelch(const InterpolationEvents &events,
                             const std::vector<std::size_t> &num_buckets,
                             const BaumWelchOptions &options) {
  if (events.size() == 0) {
    Fail(ErrorKind::kInvalidParameter, "no events to train lambdas on");
  }
  if (!(options.lambda0 > 0.0 && options.lambda0 < 1.0)) {
    Fail(ErrorKind::kInvalidParameter, "lambda0 must be in (0,1)");
  }
  if (!(options.delta_stop > 0.0)) {
    Fail(ErrorKind::kInvalidParameter, "delta_stop must be > 0");
  }
  const int n = events.levels;
  BaumWelchResult res;
  res.lambdas.resize(n);
  res.untrained.resize(n);
  for (int j = 0; j < n; ++j) {
    res.lambdas[j].assign(num_buckets[j], options.lambda0);
    res.untrained[j].assign(num_buckets[j], true);
  }
  auto zero = [&] {
    std::vector<std::vector<double>> z(n);
    for (int j = 0; j < n; ++j) z[j].assign(num_buckets[j], 0.0);
    return z;
  };
  auto num = zero(), den = zero();
  double h = EStep(events, res.lambdas, &num, &den);
  res.entropy_trace.push_back(h);
  for (int j = 0; j < n; ++j) {
    for (std::size_t b = 0; b < num_buckets[j]; ++b) {
      res.untrained[j][b] = den[j][b] <= 0.0;
    }
  }
  while (res.iterations < options.max_iterations) {
    for (int j = 0; j < n; ++j) {
      for (std::size_t b = 0; b < num_buckets[j]; ++b) {
        if (den[j][b] > 0.0) {
          res.lambdas[j][b] = std::min(kMaxLambda, num[j][b] / den[j][b]);
        }
      }
    }
    ++res.iterations;
    num = zero();
    den = zero();
    double next = EStep(events, res.lambdas, &num, &den);
    res.entropy_trace.push_back(next);
    if (std::fabs(h - next) < options.delta_stop) {
      res.converged = true;
      break;
    }
    h = next;
  }
  return res;
}

namespace {

std::vector<std::size_t> BucketCounts(const InterpolatedModel &model) {
  std::vector<std::size_t> out;
  for (int j = 1; j <= model.order(); ++j) {
    out.push_back(model.buckets(j).num_buckets());
  }
  return out;
}

}  // namespace

BaumWelchResult TrainHeldOut(InterpolatedModel &model,
                             std::span<const std::vector<WordId>> dev,
                             const BaumWelchOptions &options) {
  if (dev.empty()) {
    Fail(ErrorKind::kInvalidParameter, "held-out data is empty");
  }
  auto events = HeldOutEvents(model, dev);
  auto res = RunBaumWelch(events, BucketCounts(model), options);
  model.set_lambdas(res.lambdas);
  return res;
}

BaumWelchResult TrainDeleted(InterpolatedModel &model,
                             const BaumWelchOptions &options) {
  auto events = DeletedEvents(model);
  auto res = RunBaumWelch(events, BucketCounts(model), options);
  model.set_lambdas(res.lambdas);
  return res;
}

}  // namespace smoothlm
