// katz.cc
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

#include "smoothlm/katz.hpp"

#include <algorithm>
#include <cmath>

#include "smoothlm/error.hpp"

namespace smoothlm {

KatzDiscounts ComputeKatzDiscounts(const CountOfCounts &coc, Count k) {
  const Count n1 = coc[1];
  if (n1 == 0) {
    Fail(ErrorKind::kUndefinedEstimate,
         "discounts undefined at order " + std::to_string(coc.order) +
             ": n_1 = 0");
  }
  Count max_r = coc.n.empty() ? 0 : coc.n.rbegin()->first;
  if (k <= 0) k = max_r;
  // Every n_r up to k+1 must be nonzero.
  Count gap = 1;
  while (coc[gap] > 0) ++gap;
  k = std::min(k, gap - 2);

  for (; k >= 1; --k) {
    double a = static_cast<double>(k + 1) * static_cast<double>(coc[k + 1]) /
               static_cast<double>(n1);
    if (a >= 1.0) continue;
    KatzDiscounts out;
    out.k = k;
    out.d.assign(static_cast<std::size_t>(k) + 1, 1.0);
    bool ok = true;
    for (Count r = 1; r <= k && ok; ++r) {
      double rstar = static_cast<double>(r + 1) *
                     static_cast<double>(coc[r + 1]) /
                     static_cast<double>(coc[r]);
      double d = (rstar / static_cast<double>(r) - a) / (1.0 - a);
      if (!(d > 0.0 && d <= 1.0)) ok = false;
      out.d[static_cast<std::size_t>(r)] = d;
    }
    if (ok) return out;
  }
  Fail(ErrorKind::kUndefinedEstimate,
       "no usable discount range at order " + std::to_string(coc.order));
}

KatzModel::KatzModel(std::shared_ptr<const CountTable> table, int order,
                     const KatzOptions &options)
    : table_(std::move(table)), order_(order), options_(options) {
  if (order < 1 || order > table_->order()) {
    Fail(ErrorKind::kInvalidParameter, "model order exceeds count order");
  }
  if (!(options.delta > 0.0) || !std::isfinite(options.delta)) {
    Fail(ErrorKind::kInvalidParameter, "unigram delta must be > 0");
  }
  if (!(options.beta > 0.0) || !std::isfinite(options.beta)) {
    Fail(ErrorKind::kInvalidParameter, "beta must be > 0");
  }
  num_events_ = static_cast<double>(table_->vocab_size() - 1);
  discounts_.resize(order + 1);
  katz_count_.resize(order + 1);
  z_.resize(order + 1);
  bow_.resize(order + 1);
  fallback_.resize(order + 1);

  for (int j = 2; j <= order; ++j) {
    Count requested =
        static_cast<std::size_t>(j) < options.k.size() ? options.k[j] : 0;
    discounts_[j] = ComputeKatzDiscounts(CountOfCountsAt(*table_, j), requested);
    options_.k.resize(std::max<std::size_t>(options_.k.size(), j + 1), 0);
    options_.k[j] = discounts_[j].k;

    const auto &ev = table_->level(j);
    const auto &hist = table_->level(j - 1);
    katz_count_[j].assign(ev.size(), 0.0);
    for (std::size_t i = 0; i < ev.size(); ++i) {
      Count c = ev.count[i];
      katz_count_[j][i] = discounts_[j].Ratio(c) * static_cast<double>(c);
    }
    z_[j].assign(hist.size(), 0.0);
    bow_[j].assign(hist.size(), 1.0);
    fallback_[j].assign(hist.size(), false);
    for (std::size_t h = 0; h < hist.size(); ++h) {
      if (hist.total[h] == 0) continue;
      double n = static_cast<double>(hist.total[h]);
      double discounted = 0.0, kept = 0.0, seen_lower = 0.0;
      for (NodeId c = hist.child_begin[h]; c < hist.child_end[h]; ++c) {
        if (ev.count[c] == 0) continue;
        discounted += static_cast<double>(ev.count[c]) - katz_count_[j][c];
        kept += katz_count_[j][c];
        if (j == 2) {
          seen_lower += UnigramProb(ev.word[c]);
        } else {
          NodeId s = ev.suffix[c];
          NodeId sh = table_->level(j - 1).parent[s];
          seen_lower += katz_count_[j - 1][s] / z_[j - 1][sh];
        }
      }
      double unseen_lower = 1.0 - seen_lower;
      bool all_seen = static_cast<double>(hist.distinct[h]) >= num_events_ ||
                      unseen_lower <= 0.0;
      if (all_seen) {
        z_[j][h] = kept;
        bow_[j][h] = 0.0;
      } else if (discounted > 0.0) {
        z_[j][h] = n;
        bow_[j][h] = discounted / n / unseen_lower;
      } else {
        fallback_[j][h] = true;
        z_[j][h] = n + options.beta;
        bow_[j][h] = options.beta / (n + options.beta) / unseen_lower;
      }
    }
  }
}

ParamMap KatzModel::Params() const {
  ParamMap p{{"delta", options_.delta}, {"beta", options_.beta}};
  for (int j = 2; j <= order_; ++j) {
    p["k" + std::to_string(j)] = static_cast<double>(discounts_[j].k);
  }
  return p;
}

double KatzModel::UnigramProb(WordId w) const {
  const auto &root = table_->level(0);
  NodeId node = table_->Child(0, 0, w);
  double c = node == kNoNode
                 ? 0.0
                 : static_cast<double>(table_->level(1).count[node]);
  return (c + options_.delta) /
         (static_cast<double>(root.total[0]) + options_.delta * num_events_);
}

double KatzModel::RootBackoff() const {
  double n = static_cast<double>(table_->level(0).total[0]);
  return options_.delta * num_events_ / (n + options_.delta * num_events_);
}

double KatzModel::ProbChain(int j, const std::vector<NodeId> &chain,
                            WordId w) const {
  if (j == 1) return UnigramProb(w);
  NodeId h = chain[j - 1];
  if (h == kNoNode || table_->level(j - 1).total[h] == 0) {
    return ProbChain(j - 1, chain, w);
  }
  NodeId child = table_->Child(j - 1, h, w);
  if (child != kNoNode && table_->level(j).count[child] > 0) {
    return katz_count_[j][child] / z_[j][h];
  }
  double bow = bow_[j][h];
  return bow == 0.0 ? 0.0 : bow * ProbChain(j - 1, chain, w);
}

double KatzModel::LevelProb(int j, std::span<const WordId> context,
                            WordId w) const {
  auto chain = SuffixChain(*table_, context);
  return ProbChain(j, chain, w);
}

double KatzModel::Prob(std::span<const WordId> history, WordId w) const {
  if (w <= kBos || static_cast<std::size_t>(w) >= vocab_size()) {
    Fail(ErrorKind::kInvalidParameter,
         "word id " + std::to_string(w) + " is not a predictable event");
  }
  return LevelProb(order_, Context(history), w);
}

void KatzModel::FillChain(int j, const std::vector<NodeId> &chain,
                          std::span<double> out) const {
  if (j == 1) {
    for (std::size_t w = 1; w < out.size(); ++w) {
      out[w] = UnigramProb(static_cast<WordId>(w));
    }
    out[kBos] = 0.0;
    return;
  }
  FillChain(j - 1, chain, out);
  NodeId h = chain[j - 1];
  if (h == kNoNode || table_->level(j - 1).total[h] == 0) return;
  double bow = bow_[j][h];
  for (double &v : out) v *= bow;
  const auto &hist = table_->level(j - 1);
  const auto &ev = table_->level(j);
  for (NodeId c = hist.child_begin[h]; c < hist.child_end[h]; ++c) {
    if (ev.count[c] > 0) out[ev.word[c]] = katz_count_[j][c] / z_[j][h];
  }
}

void KatzModel::FillDistribution(std::span<const WordId> history,
                                 std::span<double> out) const {
  auto chain = SuffixChain(*table_, Context(history));
  FillChain(order_, chain, out);
}

}  // namespace smoothlm
