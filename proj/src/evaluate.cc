// evaluate.cc
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

#include "smoothlm/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <map>
#include <thread>
#include <unordered_map>

#include "smoothlm/error.hpp"

namespace smoothlm {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string DescribeEvent(std::span<const WordId> context, WordId w,
                          const Vocabulary *vocab) {
  std::string out;
  auto word = [&](WordId id) {
    return vocab != nullptr ? vocab->Word(id) : "#" + std::to_string(id);
  };
  for (WordId h : context) out += word(h) + " ";
  return out + word(w);
}

std::span<const WordId> LastWords(std::span<const WordId> history, int n) {
  if (static_cast<int>(history.size()) < n) {
    Fail(ErrorKind::kInvalidParameter,
         "test sentence is padded for a lower order");
  }
  return history.last(static_cast<std::size_t>(n));
}

}  // namespace

void ForEachEvent(
    std::span<const std::vector<WordId>> sentences,
    const std::function<void(std::span<const WordId>, WordId)> &fn) {
  for (const auto &s : sentences) {
    std::span<const WordId> ids(s);
    std::size_t i = 0;
    while (i < ids.size() && ids[i] == kBos) ++i;
    for (; i < ids.size(); ++i) fn(ids.first(i), ids[i]);
  }
}

EvalResult CrossEntropy(const LanguageModel &model,
                        std::span<const std::vector<WordId>> test,
                        const EvalOptions &options) {
  const std::size_t num = test.size();
  std::vector<double> log2p(num, 0.0);
  std::vector<Count> tokens(num, 0);
  auto score = [&](std::size_t lo, std::size_t hi) {
    for (std::size_t s = lo; s < hi; ++s) {
      double lp = 0.0;
      Count t = 0;
      ForEachEvent(test.subspan(s, 1),
                   [&](std::span<const WordId> history, WordId w) {
                     double p = model.Prob(history, w);
                     if (!(p > 0.0)) {
                       auto ctx = history.last(std::min<std::size_t>(
                           history.size(), model.order() - 1));
                       Fail(ErrorKind::kInfiniteEntropy,
                            "zero probability for n-gram '" +
                                DescribeEvent(ctx, w, options.vocab) + "'");
                     }
                     lp += std::log2(p);
                     if (w != kEos || options.count_eos) ++t;
                   });
      log2p[s] = lp;
      tokens[s] = t;
    }
  };
  const std::size_t threads = std::clamp<std::size_t>(
      static_cast<std::size_t>(std::max(1, options.threads)), 1,
      std::max<std::size_t>(num, 1));
  if (threads == 1) {
    score(0, num);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(threads);
    for (std::size_t t = 0; t < threads; ++t) {
      std::size_t lo = num * t / threads, hi = num * (t + 1) / threads;
      pool.emplace_back([&, t, lo, hi] {
        try {
          score(lo, hi);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
    for (auto &th : pool) th.join();
    for (auto &e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  EvalResult out;
  out.sentences = static_cast<Count>(num);
  for (std::size_t s = 0; s < num; ++s) {
    out.neg_log2 -= log2p[s];
    out.tokens += tokens[s];
  }
  if (out.tokens == 0) {
    Fail(ErrorKind::kInvalidParameter, "test set has no scored tokens");
  }
  out.bits = out.neg_log2 / static_cast<double>(out.tokens);
  out.perplexity = Perplexity(out.bits);
  out.sentence_log2 = std::move(log2p);
  return out;
}

double Perplexity(double bits) { return std::exp2(bits); }

double CountRow::Ideal() const {
  return weight > 0.0 ? static_cast<double>(actual) / weight : kNaN;
}

CountAnalysis AnalyzeCounts(const CountTable &train, int order,
                            std::span<const std::vector<WordId>> test,
                            Count tail) {
  if (order < 1 || order > train.order()) {
    Fail(ErrorKind::kInvalidParameter, "analysis order exceeds count order");
  }
  if (tail < 1) Fail(ErrorKind::kInvalidParameter, "tail row must be >= 1");
  CountAnalysis out;
  out.order = order;
  out.tail = tail;
  out.rows.resize(static_cast<std::size_t>(tail) + 1);
  for (Count r = 0; r <= tail; ++r) out.rows[r].r = r;
  const auto &hist = train.level(order - 1);
  const auto &ev = train.level(order);

  std::unordered_map<NodeId, Count> seen;
  ForEachEvent(test, [&](std::span<const WordId> history, WordId w) {
    ++out.events;
    NodeId h = train.Find(LastWords(history, order - 1));
    if (h == kNoNode || hist.total[h] == 0) {
      ++out.zero_history;
      return;
    }
    ++seen[h];
    NodeId e = train.Child(order - 1, h, w);
    Count c = e == kNoNode ? 0 : ev.count[e];
    ++out.rows[std::min(c, tail)].actual;
  });
  out.histories.assign(seen.begin(), seen.end());
  std::sort(out.histories.begin(), out.histories.end());

  const Count events = static_cast<Count>(train.vocab_size()) - 1;
  std::vector<Count> n(out.rows.size()), mass(out.rows.size());
  for (const auto &[h, m] : out.histories) {
    std::fill(n.begin(), n.end(), 0);
    std::fill(mass.begin(), mass.end(), 0);
    for (NodeId e = hist.child_begin[h]; e < hist.child_end[h]; ++e) {
      if (ev.count[e] == 0) continue;
      std::size_t row = static_cast<std::size_t>(std::min(ev.count[e], tail));
      ++n[row];
      mass[row] += ev.count[e];
    }
    n[0] = events - hist.distinct[h];
    const double total = static_cast<double>(hist.total[h]);
    const double md = static_cast<double>(m);
    for (std::size_t r = 0; r < n.size(); ++r) {
      if (n[r] == 0) continue;
      out.rows[r].weight += md * static_cast<double>(n[r]) / total;
      out.rows[r].ml_expected += md * static_cast<double>(mass[r]) / total;
    }
  }
  return out;
}

ModelCountStats AnalyzeModel(const LanguageModel &model,
                             const CountTable &train,
                             const CountAnalysis &analysis,
                             std::span<const std::vector<WordId>> test) {
  const int order = analysis.order;
  const Count tail = analysis.tail;
  const auto &hist = train.level(order - 1);
  const auto &ev = train.level(order);
  ModelCountStats out;
  out.expected.assign(analysis.rows.size(), 0.0);
  out.log2_sum.assign(analysis.rows.size(), 0.0);

  std::vector<double> dist(model.vocab_size());
  std::vector<double> mass(analysis.rows.size());
  for (const auto &[h, m] : analysis.histories) {
    auto ctx = train.Ngram(order - 1, h);
    model.FillDistribution(ctx, dist);
    double total = 0.0;
    for (std::size_t w = 1; w < dist.size(); ++w) total += dist[w];
    std::fill(mass.begin(), mass.end(), 0.0);
    double seen = 0.0;
    for (NodeId e = hist.child_begin[h]; e < hist.child_end[h]; ++e) {
      if (ev.count[e] == 0) continue;
      double p = dist[ev.word[e]];
      mass[static_cast<std::size_t>(std::min(ev.count[e], tail))] += p;
      seen += p;
    }
    mass[0] = total - seen;
    for (std::size_t r = 0; r < mass.size(); ++r) {
      out.expected[r] += static_cast<double>(m) * mass[r];
    }
  }

  ForEachEvent(test, [&](std::span<const WordId> history, WordId w) {
    double lp = std::log2(model.Prob(history, w));
    NodeId h = train.Find(LastWords(history, order - 1));
    if (h == kNoNode || hist.total[h] == 0) {
      out.zero_history_log2 += lp;
      return;
    }
    NodeId e = train.Child(order - 1, h, w);
    Count c = e == kNoNode ? 0 : ev.count[e];
    out.log2_sum[static_cast<std::size_t>(std::min(c, tail))] += lp;
  });
  return out;
}

std::vector<double> ExpectedOverActual(const CountAnalysis &analysis,
                                       const ModelCountStats &stats) {
  std::vector<double> out(analysis.rows.size(), kNaN);
  for (std::size_t r = 0; r < out.size(); ++r) {
    Count actual = analysis.rows[r].actual;
    if (actual > 0) out[r] = stats.expected[r] / static_cast<double>(actual);
  }
  return out;
}

std::vector<double> BangForTheBuck(const CountAnalysis &analysis,
                                   const ModelCountStats &stats) {
  std::vector<double> out(analysis.rows.size(), kNaN);
  for (std::size_t r = 0; r < out.size(); ++r) {
    double actual = static_cast<double>(analysis.rows[r].actual);
    if (actual == 0.0) continue;
    double scale = actual / stats.expected[r];
    out[r] = -std::log2(scale) - stats.log2_sum[r] / actual;
  }
  return out;
}

double EntropyFractions::Cumulative(Count k) const {
  double sum = 0.0;
  for (std::size_t r = 0; r < row.size() && static_cast<Count>(r) <= k; ++r) {
    sum += row[r];
  }
  return sum;
}

EntropyFractions EntropyFractionsByCount(const CountAnalysis &analysis,
                                         const ModelCountStats &stats) {
  EntropyFractions out;
  out.total_bits = -stats.zero_history_log2;
  for (double s : stats.log2_sum) out.total_bits -= s;
  out.row.assign(analysis.rows.size(), 0.0);
  if (!(out.total_bits > 0.0)) return out;
  for (std::size_t r = 0; r < out.row.size(); ++r) {
    out.row[r] = -stats.log2_sum[r] / out.total_bits;
  }
  out.zero_history = -stats.zero_history_log2 / out.total_bits;
  return out;
}

std::vector<ZeroCountBand> GtZeroCountStudy(
    const CountTable &train, int order,
    std::span<const std::vector<WordId>> test,
    const std::vector<Count> &n1_values) {
  if (order < 1 || order > train.order()) {
    Fail(ErrorKind::kInvalidParameter, "analysis order exceeds count order");
  }
  const auto &hist = train.level(order - 1);
  const auto &ev = train.level(order);
  struct PerHistory {
    Count tokens = 0;
    Count zeros = 0;
  };
  std::map<NodeId, PerHistory> per;
  ForEachEvent(test, [&](std::span<const WordId> history, WordId w) {
    NodeId h = train.Find(LastWords(history, order - 1));
    if (h == kNoNode || hist.total[h] == 0) return;
    PerHistory &ph = per[h];
    ++ph.tokens;
    NodeId e = train.Child(order - 1, h, w);
    if (e == kNoNode || ev.count[e] == 0) ++ph.zeros;
  });

  struct Acc {
    ZeroCountBand band;
    double inverse = 0.0;  // sum over tokens of 1 / N(h)
  };
  std::map<std::pair<Count, int>, Acc> bands;
  for (const auto &[h, ph] : per) {
    Count n1 = hist.ones[h];
    if (std::find(n1_values.begin(), n1_values.end(), n1) == n1_values.end()) {
      continue;
    }
    Count total = hist.total[h];
    int b = 0;
    while ((Count{2} << b) <= total) ++b;
    Acc &acc = bands[{n1, b}];
    acc.band.n1 = n1;
    acc.band.total_lo = Count{1} << b;
    acc.band.total_hi = Count{2} << b;
    ++acc.band.histories;
    acc.band.tokens += ph.tokens;
    acc.band.zero_tokens += ph.zeros;
    acc.inverse += static_cast<double>(ph.tokens) / static_cast<double>(total);
  }
  std::vector<ZeroCountBand> out;
  for (auto &[key, acc] : bands) {
    acc.band.desired = static_cast<double>(acc.band.zero_tokens) / acc.inverse;
    out.push_back(acc.band);
  }
  return out;
}

}  // namespace smoothlm
