// model_io.cc
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

#include "smoothlm/model_io.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "smoothlm/church_gale.hpp"
#include "smoothlm/error.hpp"
#include "smoothlm/interpolated.hpp"
#include "smoothlm/katz.hpp"
#include "smoothlm/one_count.hpp"
#include "smoothlm/text_format.hpp"

namespace smoothlm {

BackoffModel::BackoffModel(Method tag, int order, std::size_t vocab_size,
                           ParamMap params, double root_bow,
                           std::vector<Table> levels, bool strict_top)
    : tag_(tag),
      order_(order),
      vocab_size_(vocab_size),
      params_(std::move(params)),
      root_bow_(root_bow),
      levels_(std::move(levels)),
      strict_top_(strict_top) {
  if (order < 1 || static_cast<int>(levels_.size()) != order) {
    Fail(ErrorKind::kFormat, "model has the wrong number of n-gram blocks");
  }
  if (vocab_size_ < 2) Fail(ErrorKind::kFormat, "empty vocabulary");
  uniform_ = 1.0 / static_cast<double>(vocab_size_ - 1);
}

double BackoffModel::LevelProb(int j, std::span<const WordId> context,
                               WordId w, std::vector<WordId> &key) const {
  if (j == 0) return uniform_;
  auto h = context.last(static_cast<std::size_t>(j - 1));
  key.assign(h.begin(), h.end());
  key.push_back(w);
  const Table &table = levels_[j - 1];
  auto it = table.find(key);
  if (it != table.end() && it->second.prob >= 0.0) return it->second.prob;
  double bow = root_bow_;
  if (j > 1) {
    key.pop_back();
    auto hit = levels_[j - 2].find(key);
    if (hit == levels_[j - 2].end()) {
      if (strict_top_ && j == order_) {
        Fail(ErrorKind::kUndefinedDistribution,
             "history has no counts; maximum likelihood is undefined");
      }
      bow = 1.0;
    } else {
      bow = hit->second.bow;
    }
  }
  if (bow == 0.0) return 0.0;
  return bow * LevelProb(j - 1, context, w, key);
}

double BackoffModel::Prob(std::span<const WordId> history, WordId w) const {
  if (w <= kBos || static_cast<std::size_t>(w) >= vocab_size()) {
    Fail(ErrorKind::kInvalidParameter,
         "word id " + std::to_string(w) + " is not a predictable event");
  }
  std::vector<WordId> key;
  key.reserve(order_);
  return LevelProb(order_, Context(history), w, key);
}

namespace {

// How a trained model maps onto the back-off form.
struct Export {
  // Levels below this one are not written.
  int first_level = 1;
  // Only the top order carries probabilities.
  bool sparse = false;
  bool strict_top = false;
  double root_bow = 1.0;
  // Probability of the event at (level, node), for nodes with count > 0.
  std::function<double(int, NodeId, std::span<const WordId>)> prob;
  // Back-off weight of history node `node` (trie level j-1) at level j.
  std::function<double(int, NodeId)> bow;
};

std::string Log10(double x) { return FormatDouble(std::log10(x)); }

void WriteHeader(const LanguageModel &model, const Vocabulary &vocab,
                 double root_bow, std::ostream &out) {
  out << "#method " << MethodName(model.method()) << " #order "
      << model.order() << " #params";
  for (const auto &[k, v] : model.Params()) out << ' ' << k << '=' << FormatDouble(v);
  out << " #vocab " << vocab.HashString() << " #events " << vocab.num_events()
      << " #root-backoff " << Log10(root_bow) << '\n';
}

void WriteNgrams(const CountTable &table, const Vocabulary &vocab, int order,
                 const Export &ex, std::ostream &out) {
  for (int j = 1; j <= order; ++j) {
    out << '\\' << j << "-grams:\n";
    if (j < ex.first_level) continue;
    const auto &lv = table.level(j);
    const bool top = j == order;
    for (std::size_t i = 0; i < lv.size(); ++i) {
      const NodeId node = static_cast<NodeId>(i);
      if (!top && ex.strict_top && lv.total[i] == 0) continue;
      std::vector<WordId> ngram = table.Ngram(j, node);
      double p = -1.0;
      if (lv.count[i] > 0 && (top || !ex.sparse)) p = ex.prob(j, node, ngram);
      double bow = top || lv.total[i] == 0 ? 1.0 : ex.bow(j + 1, node);
      if (p < 0.0 && bow == 1.0) continue;
      out << (p < 0.0 ? std::string("-inf") : Log10(p)) << '\t';
      for (std::size_t k = 0; k < ngram.size(); ++k) {
        if (k > 0) out << ' ';
        out << vocab.Word(ngram[k]);
      }
      if (!top) out << '\t' << Log10(bow);
      out << '\n';
    }
  }
  out << "\\end\\\n";
}

Export ExportFor(const LanguageModel &model, const CountTable **table) {
  Export ex;
  if (auto *m = dynamic_cast<const InterpolatedModel *>(&model)) {
    *table = &m->table();
    ex.root_bow = 1.0 - m->Lambda(1, 0);
    ex.prob = [m](int j, NodeId, std::span<const WordId> ngram) {
      return m->LevelProb(j, ngram.first(ngram.size() - 1), ngram.back());
    };
    ex.bow = [m](int j, NodeId node) { return 1.0 - m->Lambda(j, node); };
    return ex;
  }
  if (auto *m = dynamic_cast<const KatzModel *>(&model)) {
    *table = &m->table();
    ex.root_bow = m->RootBackoff();
    ex.prob = [m](int j, NodeId, std::span<const WordId> ngram) {
      return m->LevelProb(j, ngram.first(ngram.size() - 1), ngram.back());
    };
    ex.bow = [m](int j, NodeId node) { return m->Backoff(j, node); };
    return ex;
  }
  if (auto *m = dynamic_cast<const OneCountModel *>(&model)) {
    *table = &m->table();
    ex.root_bow = m->Backoff(1, 0);
    ex.prob = [m](int j, NodeId, std::span<const WordId> ngram) {
      return m->LevelProb(j, ngram.first(ngram.size() - 1), ngram.back());
    };
    ex.bow = [m](int j, NodeId node) { return m->Backoff(j, node); };
    return ex;
  }
  if (auto *m = dynamic_cast<const AdditiveModel *>(&model)) {
    const CountTable *t = &m->table();
    *table = t;
    const int n = m->order();
    const double delta = m->delta();
    const double d = m->denominator_size();
    const double events = static_cast<double>(t->vocab_size() - 1);
    ex.first_level = std::max(1, n - 1);
    ex.sparse = true;
    ex.root_bow = n == 1 ? delta * events /
                               (static_cast<double>(t->num_tokens()) + delta * d)
                         : events / d;
    ex.prob = [t, delta, d](int j, NodeId node, std::span<const WordId>) {
      const auto &lv = t->level(j);
      double c = static_cast<double>(lv.count[node]);
      double total = static_cast<double>(t->level(j - 1).total[lv.parent[node]]);
      return (c + delta) / (total + delta * d);
    };
    ex.bow = [t, delta, d](int j, NodeId node) {
      double total = static_cast<double>(t->level(j - 1).total[node]);
      return delta * d / (total + delta * d);
    };
    return ex;
  }
  if (auto *m = dynamic_cast<const MlModel *>(&model)) {
    const CountTable *t = &m->table();
    *table = t;
    ex.first_level = std::max(1, m->order() - 1);
    ex.sparse = true;
    ex.strict_top = true;
    ex.root_bow = m->order() == 1 ? 0.0 : 1.0;
    ex.prob = [t](int j, NodeId node, std::span<const WordId>) {
      const auto &lv = t->level(j);
      return static_cast<double>(lv.count[node]) /
             static_cast<double>(t->level(j - 1).total[lv.parent[node]]);
    };
    ex.bow = [](int, NodeId) { return 0.0; };
    return ex;
  }
  Fail(ErrorKind::kInvalidParameter,
       "model type cannot be written in back-off form");
}

}  // namespace

void WriteModel(const LanguageModel &model, const Vocabulary &vocab,
                std::ostream &out) {
  if (vocab.size() != model.vocab_size()) {
    Fail(ErrorKind::kVocabMismatch, "vocabulary " + vocab.HashString() +
                                        " does not match the model");
  }
  if (auto *cg = dynamic_cast<const ChurchGaleModel *>(&model)) {
    WriteHeader(model, vocab, 1.0, out);
    out << "\\counts:\n";
    WriteCounts(cg->table(), vocab, out);
    out << "\\end\\\n";
    return;
  }
  if (auto *bo = dynamic_cast<const BackoffModel *>(&model)) {
    WriteHeader(model, vocab, bo->root_backoff(), out);
    for (int j = 1; j <= bo->order(); ++j) {
      out << '\\' << j << "-grams:\n";
      std::map<std::vector<WordId>, BackoffModel::Entry> sorted(
          bo->entries(j).begin(), bo->entries(j).end());
      for (const auto &[ngram, e] : sorted) {
        out << (e.prob < 0.0 ? std::string("-inf") : Log10(e.prob)) << '\t';
        for (std::size_t k = 0; k < ngram.size(); ++k) {
          if (k > 0) out << ' ';
          out << vocab.Word(ngram[k]);
        }
        if (j < bo->order()) out << '\t' << Log10(e.bow);
        out << '\n';
      }
    }
    out << "\\end\\\n";
    return;
  }
  const CountTable *table = nullptr;
  Export ex = ExportFor(model, &table);
  WriteHeader(model, vocab, ex.root_bow, out);
  WriteNgrams(*table, vocab, model.order(), ex, out);
}

void WriteModelFile(const LanguageModel &model, const Vocabulary &vocab,
                    const std::string &path) {
  std::ofstream out(path);
  if (!out) Fail(ErrorKind::kIo, "cannot write " + path);
  WriteModel(model, vocab, out);
  if (!out.flush()) Fail(ErrorKind::kIo, "write failed: " + path);
}

std::unique_ptr<LanguageModel> ReadModel(std::istream &in,
                                         const Vocabulary &vocab) {
  std::string line;
  if (!std::getline(in, line)) Fail(ErrorKind::kFormat, "empty model file");
  auto tokens = SplitWhitespace(line);
  std::string method_name, hash;
  long long order = 0, events = -1;
  double root_log = 0.0;
  ParamMap params;
  bool have_method = false, have_order = false, have_vocab = false;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    std::string_view t = tokens[i];
    auto next = [&]() -> std::string_view {
      if (i + 1 >= tokens.size()) {
        Fail(ErrorKind::kFormat, "missing value after " + std::string(t));
      }
      return tokens[++i];
    };
    if (t == "#method") {
      method_name = next();
      have_method = true;
    } else if (t == "#order") {
      order = ParseInteger(next(), "#order");
      have_order = true;
    } else if (t == "#vocab") {
      hash = next();
      have_vocab = true;
    } else if (t == "#events") {
      events = ParseInteger(next(), "#events");
    } else if (t == "#root-backoff") {
      root_log = ParseDouble(next(), "#root-backoff");
    } else if (t == "#params") {
      while (i + 1 < tokens.size() && tokens[i + 1].front() != '#') {
        std::string_view kv = tokens[++i];
        auto eq = kv.find('=');
        if (eq == std::string_view::npos) {
          Fail(ErrorKind::kFormat, "bad parameter " + std::string(kv));
        }
        params[std::string(kv.substr(0, eq))] =
            ParseDouble(kv.substr(eq + 1), kv.substr(0, eq));
      }
    } else {
      Fail(ErrorKind::kFormat, "unknown header field " + std::string(t));
    }
  }
  if (!have_method || !have_order || !have_vocab) {
    Fail(ErrorKind::kFormat, "model header needs #method, #order and #vocab");
  }
  if (hash != vocab.HashString() ||
      (events >= 0 && static_cast<std::size_t>(events) != vocab.num_events())) {
    Fail(ErrorKind::kVocabMismatch, "model was written with vocabulary " +
                                        hash + ", got " + vocab.HashString());
  }
  Method method = ParseMethod(method_name);
  if (order < 1 || order > 64) Fail(ErrorKind::kFormat, "bad model order");
  const int n = static_cast<int>(order);

  if (method == Method::kChurchGale) {
    if (!std::getline(in, line) || line != "\\counts:") {
      Fail(ErrorKind::kFormat, "expected \\counts: block");
    }
    std::stringstream counts;
    bool ended = false;
    while (std::getline(in, line)) {
      if (line == "\\end\\") {
        ended = true;
        break;
      }
      counts << line << '\n';
    }
    if (!ended) Fail(ErrorKind::kFormat, "missing \\end\\");
    auto table = std::make_shared<const CountTable>(ReadCounts(counts, vocab));
    ChurchGaleOptions opts;
    auto get = [&](const char *k, double def) {
      auto it = params.find(k);
      return it == params.end() ? def : it->second;
    };
    opts.c_min = get("c_min", opts.c_min);
    opts.c_mb = static_cast<int>(get("c_mb", opts.c_mb));
    opts.p_n1_0 = get("p_n1_0", opts.p_n1_0);
    opts.p_n1_n = get("p_n1_n", opts.p_n1_n);
    return std::make_unique<ChurchGaleModel>(table, n, opts);
  }

  std::vector<BackoffModel::Table> levels(n);
  int current = 0;
  bool ended = false;
  std::vector<WordId> key;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line == "\\end\\") {
      ended = true;
      break;
    }
    if (line.front() == '\\') {
      std::string expect = "\\" + std::to_string(current + 1) + "-grams:";
      if (line != expect) Fail(ErrorKind::kFormat, "expected " + expect);
      ++current;
      if (current > n) Fail(ErrorKind::kFormat, "too many n-gram blocks");
      continue;
    }
    if (current == 0) Fail(ErrorKind::kFormat, "entry before the first block");
    auto fields = SplitFields(line, '\t');
    const bool top = current == n;
    if (fields.size() != (top ? 2u : 3u)) {
      Fail(ErrorKind::kFormat, "bad field count in line: " + line);
    }
    auto words = SplitWhitespace(fields[1]);
    if (static_cast<int>(words.size()) != current) {
      Fail(ErrorKind::kFormat, "wrong n-gram length in line: " + line);
    }
    key.clear();
    for (auto w : words) {
      auto id = vocab.Find(w);
      if (!id) {
        Fail(ErrorKind::kVocabMismatch,
             "token '" + std::string(w) + "' is not in vocabulary " +
                 vocab.HashString());
      }
      key.push_back(*id);
    }
    BackoffModel::Entry e;
    double lp = ParseDouble(fields[0], "log10 probability");
    e.prob = std::isinf(lp) && lp < 0 ? -1.0 : std::pow(10.0, lp);
    if (!top) e.bow = std::pow(10.0, ParseDouble(fields[2], "log10 back-off"));
    levels[current - 1][key] = e;
  }
  if (!ended || current != n) {
    Fail(ErrorKind::kFormat, "truncated model file");
  }
  return std::make_unique<BackoffModel>(method, n, vocab.size(),
                                        std::move(params),
                                        std::pow(10.0, root_log),
                                        std::move(levels),
                                        method == Method::kMl);
}

std::unique_ptr<LanguageModel> ReadModelFile(const std::string &path,
                                             const Vocabulary &vocab) {
  std::ifstream in(path);
  if (!in) Fail(ErrorKind::kIo, "cannot read " + path);
  return ReadModel(in, vocab);
}

}  // namespace smoothlm
