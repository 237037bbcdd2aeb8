// church_gale.cc
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

#include "smoothlm/church_gale.hpp"

#include <algorithm>
#include <cmath>

#include "smoothlm/error.hpp"
#include "smoothlm/good_turing.hpp"

namespace smoothlm {

int MinibucketsPerDecade(double key_min, double key_max, int per_decade) {
  if (!(key_min > 0.0) || !(key_max >= key_min) || per_decade < 1) {
    Fail(ErrorKind::kInvalidParameter, "bad minibucket key range");
  }
  double decades = std::log10(key_max / key_min);
  return std::max(1, static_cast<int>(std::ceil(decades * per_decade)));
}

void FinishBucket(CgBucket &bucket, double p_n1_0, double p_n1_n) {
  Count seen = 0;
  bucket.total = 0;
  for (const auto &[r, nr] : bucket.n) {
    seen += nr;
    bucket.total += r * nr;
  }
  bucket.n0 = bucket.population - seen;
  if (bucket.n0 < 0) {
    Fail(ErrorKind::kNumericFailure,
         "bucket population is smaller than its seen events");
  }
  bucket.r_star.clear();
  if (bucket.total == 0) {
    bucket.zero_mass = 1.0;
    bucket.r0_star = 1.0;
    return;
  }
  const double total = static_cast<double>(bucket.total);
  auto it1 = bucket.n.find(1);
  const Count n1 = it1 == bucket.n.end() ? 0 : it1->second;
  double z;
  if (bucket.n0 == 0) {
    z = 0.0;
  } else if (n1 == bucket.total) {
    z = p_n1_n;
  } else if (n1 == 0) {
    z = p_n1_0;
  } else {
    z = static_cast<double>(n1) / total;
  }
  bucket.zero_mass = z;
  bucket.r0_star =
      bucket.n0 > 0 ? z * total / static_cast<double>(bucket.n0) : 0.0;

  std::map<Count, double> shape;
  if (bucket.n.size() >= 2) {
    SimpleGoodTuring sgt(bucket.n);
    for (const auto &[r, nr] : bucket.n) shape[r] = sgt.AdjustedCount(r);
  } else {
    for (const auto &[r, nr] : bucket.n) shape[r] = static_cast<double>(r);
  }
  double mass = 0.0;
  for (const auto &[r, nr] : bucket.n) {
    mass += static_cast<double>(nr) * shape[r];
  }
  double scale = (1.0 - z) * total / mass;
  for (const auto &[r, s] : shape) bucket.r_star[r] = s * scale;
}

ChurchGaleModel::ChurchGaleModel(std::shared_ptr<const CountTable> table,
                                 int order, const ChurchGaleOptions &options)
    : table_(std::move(table)), order_(order), options_(options) {
  if (order < 1 || order > table_->order()) {
    Fail(ErrorKind::kInvalidParameter, "model order exceeds count order");
  }
  if (options.c_mb < 1) {
    Fail(ErrorKind::kInvalidParameter, "c_mb must be >= 1");
  }
  if (!(options.c_min >= 1.0)) {
    Fail(ErrorKind::kInvalidParameter, "c_min must be >= 1");
  }
  if (!(options.p_n1_0 > 0.0 && options.p_n1_0 < 1.0) ||
      !(options.p_n1_n > 0.0 && options.p_n1_n < 1.0)) {
    Fail(ErrorKind::kInvalidParameter,
         "degenerate-bucket masses must lie in (0,1)");
  }
  num_tokens_ = static_cast<double>(table_->num_tokens());
  if (num_tokens_ == 0.0) {
    Fail(ErrorKind::kCannotSmooth, "no training tokens");
  }
  levels_.resize(order + 1);
  BuildUnigrams();
  for (int j = 2; j <= order; ++j) BuildLevel(j);
}

ParamMap ChurchGaleModel::Params() const {
  return {{"c_min", options_.c_min},
          {"c_mb", static_cast<double>(options_.c_mb)},
          {"p_n1_0", options_.p_n1_0},
          {"p_n1_n", options_.p_n1_n}};
}

void ChurchGaleModel::BuildUnigrams() {
  const std::size_t v = table_->vocab_size();
  std::vector<Count> count(v, 0);
  const auto &uni = table_->level(1);
  for (std::size_t i = 0; i < uni.size(); ++i) count[uni.word[i]] = uni.count[i];
  std::map<Count, Count> mult;
  for (std::size_t w = 1; w < v; ++w) ++mult[count[w]];
  r1_class_.assign(v, -1);
  for (const auto &[r, m] : mult) {
    r1_count_.push_back(r);
    r1_mult_.push_back(m);
  }
  for (std::size_t w = 1; w < v; ++w) {
    r1_class_[w] = static_cast<int>(
        std::lower_bound(r1_count_.begin(), r1_count_.end(), count[w]) -
        r1_count_.begin());
  }

  Level &lv = levels_[1];
  const std::size_t r = r1_count_.size();
  lv.class_key = {1.0};
  lv.class_mult = {1};
  lv.cell_bucket.assign(r, 0);
  lv.buckets.resize(1);
  CgBucket &b = lv.buckets[0];
  b.population = static_cast<Count>(v - 1);
  for (std::size_t c = 0; c < r; ++c) {
    if (r1_count_[c] > 0) b.n[r1_count_[c]] = r1_mult_[c];
  }
  FinishBucket(b, options_.p_n1_0, options_.p_n1_n);
  lv.node_bucket.assign(uni.size(), 0);
  lv.node_corrected.assign(uni.size(), 0.0);
  for (std::size_t i = 0; i < uni.size(); ++i) {
    if (uni.count[i] > 0) lv.node_corrected[i] = b.Corrected(uni.count[i]);
  }
  double base = 0.0;
  for (std::size_t c = 0; c < r; ++c) {
    base += static_cast<double>(r1_mult_[c]) * b.r0_star;
  }
  lv.class_base = {base};
  double z = base;
  for (std::size_t i = 0; i < uni.size(); ++i) {
    if (uni.count[i] > 0) z += lv.node_corrected[i] - b.r0_star;
  }
  lv.hist_class = {0};
  lv.hist_z = {z};
  r1_prob_.resize(r);
  for (std::size_t c = 0; c < r; ++c) {
    r1_prob_[c] = b.Corrected(r1_count_[c]) / z;
  }
}

int ChurchGaleModel::MinibucketOf(const Level &lv, double key) const {
  if (!(lv.key_max > lv.key_min) || !(key > lv.key_min)) return 0;
  double t = (std::log(key) - std::log(lv.key_min)) /
             (std::log(lv.key_max) - std::log(lv.key_min));
  int idx = static_cast<int>(std::floor(t * options_.c_mb));
  return std::clamp(idx, 0, options_.c_mb - 1);
}

void ChurchGaleModel::BuildLevel(int j) {
  Level &lv = levels_[j];
  const Level &prev = levels_[j - 1];
  const auto &hist_nodes = table_->level(j - 1);
  const auto &ev_nodes = table_->level(j);
  const std::size_t r = r1_count_.size();

  // History classes: the all-begin history, then (bucket, count) pairs of
  // the order below restricted to events that do not end the sentence.
  std::vector<WordId> bos(j - 1, kBos);
  NodeId bos_node = table_->Find(bos);
  double bos_total =
      bos_node == kNoNode ? 0.0
                          : static_cast<double>(hist_nodes.total[bos_node]);
  lv.class_key.push_back(std::max(bos_total, 1.0) / num_tokens_);
  lv.class_mult.push_back(1);

  std::map<std::pair<int, Count>, Count> mult;
  std::vector<Count> seen_eos(prev.buckets.size(), 0);
  for (std::size_t i = 0; i < hist_nodes.size(); ++i) {
    if (hist_nodes.count[i] == 0) continue;
    int b = prev.node_bucket[i];
    if (hist_nodes.word[i] == kEos) {
      ++seen_eos[b];
    } else {
      ++mult[{b, hist_nodes.count[i]}];
    }
  }
  std::vector<Count> unseen_eos(prev.buckets.size(), 0);
  const int eos_class = r1_class_[kEos];
  for (std::size_t c = 0; c < prev.class_mult.size(); ++c) {
    unseen_eos[prev.cell_bucket[c * r + eos_class]] += prev.class_mult[c];
  }
  for (std::size_t b = 0; b < prev.buckets.size(); ++b) {
    Count m = prev.buckets[b].n0 - (unseen_eos[b] - seen_eos[b]);
    if (m < 0) {
      Fail(ErrorKind::kNumericFailure, "negative history class population");
    }
    mult[{static_cast<int>(b), 0}] = m;
  }
  for (const auto &[key, m] : mult) {
    lv.class_index[key] = static_cast<int>(lv.class_key.size());
    lv.class_key.push_back(prev.buckets[key.first].Corrected(key.second) /
                           num_tokens_);
    lv.class_mult.push_back(m);
  }
  const std::size_t num_classes = lv.class_key.size();

  lv.hist_class.assign(hist_nodes.size(), -1);
  for (std::size_t i = 0; i < hist_nodes.size(); ++i) {
    if (hist_nodes.word[i] == kBos) {
      lv.hist_class[i] = 0;
    } else if (hist_nodes.count[i] > 0 && hist_nodes.word[i] != kEos) {
      lv.hist_class[i] =
          lv.class_index.at({prev.node_bucket[i], hist_nodes.count[i]});
    }
  }

  // Key range over every cell that holds at least one possible event.
  lv.key_min = std::numeric_limits<double>::infinity();
  lv.key_max = 0.0;
  for (std::size_t c = 0; c < num_classes; ++c) {
    if (lv.class_mult[c] == 0) continue;
    for (std::size_t u = 0; u < r; ++u) {
      double key = lv.class_key[c] * r1_prob_[u];
      if (!(key > 0.0)) continue;
      lv.key_min = std::min(lv.key_min, key);
      lv.key_max = std::max(lv.key_max, key);
    }
  }
  if (!(lv.key_max > 0.0)) lv.key_min = lv.key_max = 1.0;

  // Nonzero n-grams per minibucket, then wall of bricks.
  std::map<double, double> filled;
  for (std::size_t e = 0; e < ev_nodes.size(); ++e) {
    if (ev_nodes.count[e] == 0) continue;
    int c = lv.hist_class[ev_nodes.parent[e]];
    double key = lv.class_key[c] * r1_prob_[r1_class_[ev_nodes.word[e]]];
    filled[MinibucketOf(lv, key)] += 1.0;
  }
  lv.merge = BucketMap::WallOfBricks(filled, options_.c_min,
                                     static_cast<double>(options_.c_mb),
                                     BucketKey::kChurchGale);
  lv.buckets.assign(lv.merge.num_buckets(), CgBucket{});
  lv.cell_bucket.assign(num_classes * r, 0);
  for (std::size_t c = 0; c < num_classes; ++c) {
    for (std::size_t u = 0; u < r; ++u) {
      double key = lv.class_key[c] * r1_prob_[u];
      int b = static_cast<int>(lv.merge.Lookup(MinibucketOf(lv, key)));
      lv.cell_bucket[c * r + u] = b;
      Count pop = 0;
      if (__builtin_mul_overflow(lv.class_mult[c], r1_mult_[u], &pop) ||
          __builtin_add_overflow(lv.buckets[b].population, pop,
                                 &lv.buckets[b].population)) {
        Fail(ErrorKind::kNumericFailure, "bucket population overflows");
      }
    }
  }

  lv.node_bucket.assign(ev_nodes.size(), 0);
  for (std::size_t e = 0; e < ev_nodes.size(); ++e) {
    if (ev_nodes.count[e] == 0) continue;
    int c = lv.hist_class[ev_nodes.parent[e]];
    int b = lv.cell_bucket[c * r + r1_class_[ev_nodes.word[e]]];
    lv.node_bucket[e] = b;
    ++lv.buckets[b].n[ev_nodes.count[e]];
  }
  for (auto &b : lv.buckets) {
    FinishBucket(b, options_.p_n1_0, options_.p_n1_n);
  }
  lv.node_corrected.assign(ev_nodes.size(), 0.0);
  for (std::size_t e = 0; e < ev_nodes.size(); ++e) {
    if (ev_nodes.count[e] == 0) continue;
    lv.node_corrected[e] =
        lv.buckets[lv.node_bucket[e]].Corrected(ev_nodes.count[e]);
  }

  lv.class_base.assign(num_classes, 0.0);
  for (std::size_t c = 0; c < num_classes; ++c) {
    double base = 0.0;
    for (std::size_t u = 0; u < r; ++u) {
      base += static_cast<double>(r1_mult_[u]) *
              lv.buckets[lv.cell_bucket[c * r + u]].r0_star;
    }
    lv.class_base[c] = base;
  }
  lv.hist_z.assign(hist_nodes.size(), 0.0);
  for (std::size_t h = 0; h < hist_nodes.size(); ++h) {
    int c = lv.hist_class[h];
    if (c < 0) continue;
    double z = lv.class_base[c];
    for (NodeId e = hist_nodes.child_begin[h]; e < hist_nodes.child_end[h];
         ++e) {
      if (ev_nodes.count[e] == 0) continue;
      z += lv.node_corrected[e] - lv.buckets[lv.node_bucket[e]].r0_star;
    }
    lv.hist_z[h] = z;
  }
}

double ChurchGaleModel::UnigramProb(WordId w) const {
  return r1_prob_[r1_class_[w]];
}

int ChurchGaleModel::ClassOf(int j, std::span<const WordId> history) const {
  if (j == 1) return 0;
  if (history.back() == kBos) {
    for (WordId w : history) {
      if (w != kBos) {
        Fail(ErrorKind::kInvalidParameter,
             "begin token inside a history");
      }
    }
    return 0;
  }
  if (history.back() == kEos) {
    Fail(ErrorKind::kInvalidParameter, "history ends with the end token");
  }
  const Level &lv = levels_[j];
  const Level &prev = levels_[j - 1];
  NodeId node = table_->Find(history);
  if (node != kNoNode && table_->level(j - 1).count[node] > 0) {
    return lv.class_index.at({prev.node_bucket[node],
                              table_->level(j - 1).count[node]});
  }
  int c = ClassOf(j - 1, history.first(history.size() - 1));
  int b = prev.cell_bucket[c * r1_count_.size() + r1_class_[history.back()]];
  return lv.class_index.at({b, 0});
}

int ChurchGaleModel::BucketOf(int j, std::span<const WordId> history,
                              WordId w) const {
  int c = ClassOf(j, history);
  return levels_[j].cell_bucket[c * r1_count_.size() + r1_class_[w]];
}

double ChurchGaleModel::Normalizer(int j, int cls, NodeId hist) const {
  const Level &lv = levels_[j];
  if (hist != kNoNode && lv.hist_class[hist] >= 0) return lv.hist_z[hist];
  return lv.class_base[cls];
}

double ChurchGaleModel::Prob(std::span<const WordId> history, WordId w) const {
  if (w <= kBos || static_cast<std::size_t>(w) >= vocab_size()) {
    Fail(ErrorKind::kInvalidParameter,
         "word id " + std::to_string(w) + " is not a predictable event");
  }
  auto ctx = Context(history);
  const Level &lv = levels_[order_];
  NodeId h = table_->Find(ctx);
  int cls = h != kNoNode && lv.hist_class[h] >= 0 ? lv.hist_class[h]
                                                  : ClassOf(order_, ctx);
  double z = Normalizer(order_, cls, h);
  if (h != kNoNode) {
    NodeId e = table_->Child(order_ - 1, h, w);
    if (e != kNoNode && table_->level(order_).count[e] > 0) {
      return lv.node_corrected[e] / z;
    }
  }
  int b = lv.cell_bucket[cls * r1_count_.size() + r1_class_[w]];
  return lv.buckets[b].r0_star / z;
}

void ChurchGaleModel::FillDistribution(std::span<const WordId> history,
                                       std::span<double> out) const {
  auto ctx = Context(history);
  const Level &lv = levels_[order_];
  NodeId h = table_->Find(ctx);
  int cls = h != kNoNode && lv.hist_class[h] >= 0 ? lv.hist_class[h]
                                                  : ClassOf(order_, ctx);
  double z = Normalizer(order_, cls, h);
  const std::size_t r = r1_count_.size();
  out[kBos] = 0.0;
  for (std::size_t w = 1; w < out.size(); ++w) {
    int b = lv.cell_bucket[cls * r + r1_class_[w]];
    out[w] = lv.buckets[b].r0_star / z;
  }
  if (h == kNoNode) return;
  const auto &hist = table_->level(order_ - 1);
  const auto &ev = table_->level(order_);
  for (NodeId e = hist.child_begin[h]; e < hist.child_end[h]; ++e) {
    if (ev.count[e] > 0) out[ev.word[e]] = lv.node_corrected[e] / z;
  }
}

}  // namespace smoothlm
