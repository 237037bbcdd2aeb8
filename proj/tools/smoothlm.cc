// smoothlm.cc
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
// Command-line driver: count, train, tune, eval, analyze, compare.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "smoothlm/build.hpp"
#include "smoothlm/config.hpp"
#include "smoothlm/error.hpp"
#include "smoothlm/evaluate.hpp"
#include "smoothlm/model_io.hpp"
#include "smoothlm/text_format.hpp"
#include "smoothlm/tune.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace smoothlm;

namespace {

struct Common {
  bool dry_run = false;
  int threads = 1;
};

using Encoded = std::vector<std::vector<WordId>>;

std::shared_ptr<const CountTable> CountTrain(const Encoded &train, int order,
                                             const Vocabulary &vocab,
                                             int threads) {
  return std::make_shared<const CountTable>(
      CountNgrams(train, order, vocab.size(), threads));
}

void EnsureDir(const std::string &dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) Fail(ErrorKind::kIo, "cannot create " + dir + ": " + ec.message());
}

std::ofstream OpenOut(const std::string &path) {
  std::ofstream out(path);
  if (!out) Fail(ErrorKind::kIo, "cannot write " + path);
  return out;
}

void WriteJson(const json &j, const std::string &path) {
  auto out = OpenOut(path);
  out << j.dump(2) << '\n';
}

void DryRun(const std::vector<std::string> &outputs) {
  json j{{"dry_run", true}, {"would_write", outputs}};
  std::cout << j.dump() << '\n';
}

json TrainingJson(const BaumWelchResult &r) {
  json j;
  j["iterations"] = r.iterations;
  j["converged"] = r.converged;
  j["entropy_trace"] = r.entropy_trace;
  j["lambdas"] = r.lambdas;
  j["untrained"] = r.untrained;
  return j;
}

json ParamsJson(const ParamMap &p) {
  json j = json::object();
  for (const auto &[k, v] : p) j[k] = std::isinf(v) ? json(FormatDouble(v)) : json(v);
  return j;
}

// Model-parameter flags shared by train and tune; each overrides the config.
struct SpecFlags {
  std::optional<std::string> method;
  std::optional<int> order;
  std::optional<double> delta;
  std::vector<double> beta;
  std::vector<double> gamma;
  std::vector<long long> k;
  std::optional<double> c_min;
  std::optional<double> c_top;
  std::optional<int> c_mb;
  std::optional<double> p_n1_0;
  std::optional<double> p_n1_n;
  std::optional<double> lambda0;
  std::optional<double> delta_stop;
  std::optional<std::string> denominator;

  void Add(CLI::App *app) {
    app->add_option("--method", method, "Smoothing method tag");
    app->add_option("--order", order, "n-gram order");
    app->add_option("--delta", delta, "Additive constant (plus-delta, Katz unigram)");
    app->add_option("--beta", beta,
                    "Katz zero-row mass, or one-count beta per order");
    app->add_option("--gamma", gamma, "One-count gamma per order");
    app->add_option("--k", k, "Katz k per order 2..n (0 = largest)");
    app->add_option("--c-min", c_min, "Minimum n-grams per bucket");
    app->add_option("--c-top", c_top, "Bucket key clamp");
    app->add_option("--c-mb", c_mb, "Minibuckets (church-gale)");
    app->add_option("--p-n1-0", p_n1_0, "Zero-count mass when n1 = 0");
    app->add_option("--p-n1-n", p_n1_n, "Zero-count mass when n1 = N");
    app->add_option("--lambda0", lambda0, "Initial interpolation weight");
    app->add_option("--delta-stop", delta_stop, "Baum-Welch stop, bits");
    app->add_option("--additive-denominator", denominator,
                    "Additive normalizer: predicted-events or content-words")
        ->check(CLI::IsMember({"predicted-events", "content-words"}));
  }

  void Apply(ModelSpec &s) const {
    if (method) s.method = ParseMethod(*method);
    if (order) s.order = *order;
    if (delta) s.delta = *delta;
    auto per_order = [&](const std::vector<double> &v) {
      std::vector<double> out(s.order, v.front());
      if (v.size() == static_cast<std::size_t>(s.order)) out = v;
      else if (v.size() != 1) {
        Fail(ErrorKind::kInvalidParameter,
             "give one value or one per order");
      }
      return out;
    };
    if (!beta.empty()) {
      s.beta = beta.front();
      if (s.method == Method::kOneCount) s.one_count.beta = per_order(beta);
    }
    if (!gamma.empty()) s.one_count.gamma = per_order(gamma);
    if (!k.empty()) {
      s.k.assign(2, 0);
      for (long long v : k) s.k.push_back(v);
    }
    if (c_min) {
      s.c_min = *c_min;
      s.church_gale.c_min = *c_min;
    }
    if (c_top) s.c_top = *c_top;
    if (c_mb) s.church_gale.c_mb = *c_mb;
    if (p_n1_0) s.church_gale.p_n1_0 = *p_n1_0;
    if (p_n1_n) s.church_gale.p_n1_n = *p_n1_n;
    if (lambda0) s.baum_welch.lambda0 = *lambda0;
    if (delta_stop) s.baum_welch.delta_stop = *delta_stop;
    if (denominator) {
      s.additive_denominator = *denominator == "content-words"
                                   ? AdditiveDenominator::kContentWords
                                   : AdditiveDenominator::kPredictedEvents;
    }
  }
};

struct ConfigFlags {
  std::string config_path;
  std::string corpus;
  std::string out_dir;
  std::optional<int> min_count;
  SpecFlags spec;

  void Add(CLI::App *app, bool with_spec) {
    app->add_option("--config", config_path, "Experiment config (JSON)")
        ->check(CLI::ExistingFile);
    app->add_option("--corpus", corpus, "Corpus, one sentence per line");
    app->add_option("--min-count", min_count, "Vocabulary count cutoff");
    app->add_option("--out-dir", out_dir, "Output directory");
    if (with_spec) spec.Add(app);
  }

  ExperimentConfig Resolve(const Common &common) const {
    ExperimentConfig c;
    if (!config_path.empty()) {
      c = ReadConfigFile(config_path);
    } else if (corpus.empty()) {
      Fail(ErrorKind::kInvalidParameter, "need --config or --corpus");
    }
    if (!corpus.empty()) c.corpus = corpus;
    if (min_count) c.min_count = *min_count;
    if (!out_dir.empty()) c.output_dir = out_dir;
    c.threads = common.threads;
    spec.Apply(c.model);
    return c;
  }
};

struct Trained {
  BuiltModel built;
  std::optional<TuneResult> tuning;
  Count train_tokens = 0;
};

Trained TrainFromConfig(ExperimentConfig &config, const PreparedData &data) {
  const int n = config.model.order;
  Encoded train = EncodeCorpus(data.train, data.vocab, n);
  Encoded dev1 = EncodeCorpus(data.dev1, data.vocab, n);
  Encoded dev2 = EncodeCorpus(data.dev2, data.vocab, n);
  Trained out;
  auto table = CountTrain(train, n, data.vocab, config.threads);
  out.train_tokens = table->num_tokens();
  if (config.tune) {
    TuneOptions opts;
    opts.threads = config.threads;
    out.tuning = TuneParameters(config.model, {table, dev1, dev2}, opts);
    config.model = out.tuning->spec;
  }
  out.built = BuildModel(table, config.model, dev2);
  return out;
}

int CmdCount(const Common &common, const std::string &corpus, int order,
             int min_count, const std::string &vocab_in, bool lowercase,
             const std::string &out_path, std::string vocab_out) {
  auto sentences = ReadSentencesFile(corpus, lowercase);
  Vocabulary vocab = vocab_in.empty() ? BuildVocabulary(sentences, min_count)
                                      : ReadVocabularyFile(vocab_in);
  if (vocab_out.empty() && vocab_in.empty()) vocab_out = out_path + ".vocab";
  std::vector<std::string> outputs{out_path};
  if (!vocab_out.empty()) outputs.push_back(vocab_out);
  if (order < 1) Fail(ErrorKind::kInvalidParameter, "order must be >= 1");
  if (common.dry_run) {
    DryRun(outputs);
    return 0;
  }
  auto table = CountTrain(EncodeCorpus(sentences, vocab, order), order, vocab,
                          common.threads);
  WriteCountsFile(*table, vocab, out_path);
  if (!vocab_out.empty()) WriteVocabularyFile(vocab, vocab_out);
  return 0;
}

int CmdTrain(const Common &common, const ConfigFlags &flags) {
  ExperimentConfig config = flags.Resolve(common);
  PreparedData data = PrepareData(config);
  const std::string dir = config.output_dir;
  std::vector<std::string> outputs{dir + "/vocab.txt", dir + "/model.txt",
                                   dir + "/config.json",
                                   dir + "/train_report.json"};
  if (UsesHeldOutLambdas(config.model.method) && data.dev2.empty()) {
    Fail(ErrorKind::kInvalidParameter,
         "method " + std::string(MethodName(config.model.method)) +
             " trains lambdas on dev2, which is empty");
  }
  if (common.dry_run) {
    DryRun(outputs);
    return 0;
  }
  Trained t = TrainFromConfig(config, data);
  EnsureDir(dir);
  WriteVocabularyFile(data.vocab, outputs[0]);
  WriteModelFile(*t.built.model, data.vocab, outputs[1]);
  ExperimentConfig resolved = config;
  resolved.tune = false;
  WriteConfigFile(resolved, outputs[2]);
  json report;
  report["method"] = std::string(MethodName(t.built.model->method()));
  report["order"] = t.built.model->order();
  report["params"] = ParamsJson(t.built.model->Params());
  report["vocab"] = data.vocab.HashString();
  report["train_sentences"] = data.train.size();
  report["train_tokens"] = t.train_tokens;
  if (t.built.lambda_training) {
    report["lambda_training"] = TrainingJson(*t.built.lambda_training);
  }
  if (t.tuning) report["dev1_bits"] = t.tuning->dev1_bits;
  WriteJson(report, outputs[3]);
  return 0;
}

int CmdTune(const Common &common, const ConfigFlags &flags, bool no_search) {
  ExperimentConfig config = flags.Resolve(common);
  PreparedData data = PrepareData(config);
  if (data.dev1.empty()) {
    Fail(ErrorKind::kInvalidParameter, "tuning needs a nonempty dev1 split");
  }
  const std::string dir = config.output_dir;
  std::vector<std::string> outputs{dir + "/tuned_config.json",
                                   dir + "/audit.tsv",
                                   dir + "/tune_report.json"};
  if (common.dry_run) {
    DryRun(outputs);
    return 0;
  }
  const int n = config.model.order;
  Encoded train = EncodeCorpus(data.train, data.vocab, n);
  Encoded dev1 = EncodeCorpus(data.dev1, data.vocab, n);
  Encoded dev2 = EncodeCorpus(data.dev2, data.vocab, n);
  auto table = CountTrain(train, n, data.vocab, config.threads);
  TuneOptions opts;
  opts.threads = config.threads;
  opts.search = !no_search;
  TuneResult r = TuneParameters(config.model, {table, dev1, dev2}, opts);
  EnsureDir(dir);
  ExperimentConfig tuned = config;
  tuned.model = r.spec;
  tuned.tune = false;
  WriteConfigFile(tuned, outputs[0]);
  {
    auto out = OpenOut(outputs[1]);
    WriteAudit(r.audit, out);
  }
  WriteJson({{"method", std::string(MethodName(r.spec.method))},
             {"dev1_bits", r.dev1_bits},
             {"evaluations", r.audit.size()},
             {"model", ModelSpecToJson(r.spec)}},
            outputs[2]);
  return 0;
}

std::string Joined(const Sentence &s) {
  std::string out;
  for (const auto &w : s) out += (out.empty() ? "" : " ") + w;
  return out;
}

int CmdEval(const Common &common, const std::string &model_path,
            const std::string &vocab_path, const std::string &test_path,
            bool lowercase, bool count_eos, const std::string &dir) {
  Vocabulary vocab = ReadVocabularyFile(vocab_path);
  auto model = ReadModelFile(model_path, vocab);
  auto sentences = ReadSentencesFile(test_path, lowercase);
  std::vector<std::string> outputs;
  if (!dir.empty()) outputs = {dir + "/report.txt", dir + "/report.tsv"};
  if (common.dry_run) {
    DryRun(outputs);
    return 0;
  }
  Encoded test = EncodeCorpus(sentences, vocab, model->order());
  EvalOptions eo;
  eo.count_eos = count_eos;
  eo.threads = common.threads;
  eo.vocab = &vocab;
  EvalResult r = CrossEntropy(*model, test, eo);

  std::ostringstream text, tsv;
  text << "method      " << MethodName(model->method()) << '\n'
       << "order       " << model->order() << '\n'
       << "sentences   " << r.sentences << '\n'
       << "tokens      " << r.tokens << '\n'
       << "bits/word   " << FormatDouble(r.bits) << '\n'
       << "perplexity  " << FormatDouble(r.perplexity) << '\n'
       << "\nprobability\tsentence\n";
  tsv << "# method=" << MethodName(model->method())
      << "\tsentences=" << r.sentences << "\ttokens=" << r.tokens
      << "\tbits=" << FormatDouble(r.bits)
      << "\tperplexity=" << FormatDouble(r.perplexity) << '\n'
      << "index\tlog2prob\tprob\tsentence\n";
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    double lp = r.sentence_log2[i];
    text << FormatDouble(std::exp2(lp)) << '\t' << Joined(sentences[i]) << '\n';
    tsv << i << '\t' << FormatDouble(lp) << '\t' << FormatDouble(std::exp2(lp))
        << '\t' << Joined(sentences[i]) << '\n';
  }
  if (dir.empty()) {
    std::cout << text.str();
    return 0;
  }
  EnsureDir(dir);
  OpenOut(outputs[0]) << text.str();
  OpenOut(outputs[1]) << tsv.str();
  return 0;
}

int CmdAnalyze(const Common &common, const std::string &model_path,
               const std::string &vocab_path, const std::string &counts_path,
               const std::string &test_path, bool lowercase, int order,
               Count tail, const std::string &dir) {
  Vocabulary vocab = ReadVocabularyFile(vocab_path);
  auto model = ReadModelFile(model_path, vocab);
  CountTable train = ReadCountsFile(counts_path, vocab);
  auto sentences = ReadSentencesFile(test_path, lowercase);
  if (order == 0) order = model->order();
  if (order > train.order()) {
    Fail(ErrorKind::kInvalidParameter, "counts file holds fewer orders");
  }
  std::vector<std::string> outputs;
  if (!dir.empty()) {
    outputs = {dir + "/analysis.txt", dir + "/analysis.tsv",
               dir + "/gt_zero.tsv"};
  }
  if (common.dry_run) {
    DryRun(outputs);
    return 0;
  }
  Encoded test =
      EncodeCorpus(sentences, vocab, std::max(order, model->order()));
  CountAnalysis a = AnalyzeCounts(train, order, test, tail);
  ModelCountStats s = AnalyzeModel(*model, train, a, test);
  auto ratio = ExpectedOverActual(a, s);
  auto bang = BangForTheBuck(a, s);
  EntropyFractions frac = EntropyFractionsByCount(a, s);
  auto bands = GtZeroCountStudy(train, order, test);

  std::ostringstream text, tsv, gt;
  tsv << "r\tactual\tideal_r0\tml_expected\tmodel_expected\t"
         "expected_over_actual\tbang_for_the_buck\tentropy_fraction\t"
         "cumulative_fraction\n";
  text << "order " << order << ", " << a.events << " test tokens, "
       << a.zero_history << " with an unseen history\n\n"
       << std::left << std::setw(6) << "r" << std::setw(10) << "actual"
       << std::setw(14) << "ideal r0*" << std::setw(14) << "exp/actual"
       << std::setw(14) << "bang" << "entropy frac\n";
  for (std::size_t r = 0; r < a.rows.size(); ++r) {
    const CountRow &row = a.rows[r];
    std::string label =
        std::to_string(r) + (static_cast<Count>(r) == tail ? "+" : "");
    tsv << label << '\t' << row.actual << '\t' << FormatDouble(row.Ideal())
        << '\t' << FormatDouble(row.ml_expected) << '\t'
        << FormatDouble(s.expected[r]) << '\t' << FormatDouble(ratio[r])
        << '\t' << FormatDouble(bang[r]) << '\t' << FormatDouble(frac.row[r])
        << '\t' << FormatDouble(frac.Cumulative(static_cast<Count>(r)))
        << '\n';
    if (row.actual == 0) continue;
    std::ostringstream ideal, rat, bb, fr;
    ideal << std::setprecision(6) << row.Ideal();
    rat << std::setprecision(6) << ratio[r];
    bb << std::setprecision(6) << bang[r];
    fr << std::setprecision(6) << frac.row[r];
    text << std::setw(6) << label << std::setw(10) << row.actual
         << std::setw(14) << ideal.str() << std::setw(14) << rat.str()
         << std::setw(14) << bb.str() << fr.str() << '\n';
  }
  tsv << "zero-history\t" << a.zero_history << "\tnan\tnan\tnan\tnan\tnan\t"
      << FormatDouble(frac.zero_history) << "\t1\n";
  text << "\nzero-history share of entropy: " << frac.zero_history << '\n'
       << "total bits: " << FormatDouble(frac.total_bits) << '\n';
  gt << "n1\tN_lo\tN_hi\thistories\ttokens\tzero_tokens\tdesired\tgt_predicted\n";
  text << "\nzero-count study (desired total count for zero counts)\n";
  for (const auto &b : bands) {
    gt << b.n1 << '\t' << b.total_lo << '\t' << b.total_hi << '\t'
       << b.histories << '\t' << b.tokens << '\t' << b.zero_tokens << '\t'
       << FormatDouble(b.desired) << '\t' << b.n1 << '\n';
    text << "n1=" << b.n1 << " N in [" << b.total_lo << "," << b.total_hi
         << "): desired " << b.desired << " over " << b.tokens << " tokens\n";
  }
  if (dir.empty()) {
    std::cout << text.str();
    return 0;
  }
  EnsureDir(dir);
  OpenOut(outputs[0]) << text.str();
  OpenOut(outputs[1]) << tsv.str();
  OpenOut(outputs[2]) << gt.str();
  return 0;
}

// Data settings every compared config must share.
json DataKey(const ExperimentConfig &c) {
  json j = ConfigToJson(c);
  for (const char *k : {"model", "tune", "output_dir", "threads"}) j.erase(k);
  return j;
}

int CmdCompare(const Common &common, const std::vector<std::string> &paths,
               const std::string &dir) {
  std::vector<ExperimentConfig> configs;
  for (const auto &p : paths) {
    configs.push_back(ReadConfigFile(p));
    configs.back().threads = common.threads;
    if (DataKey(configs.back()) != DataKey(configs.front())) {
      Fail(ErrorKind::kInvalidParameter,
           p + " does not share the data settings of " + paths.front());
    }
  }
  PreparedData data = PrepareData(configs.front());
  if (data.test.empty()) Fail(ErrorKind::kInvalidParameter, "empty test split");
  std::vector<std::string> outputs;
  if (!dir.empty()) outputs = {dir + "/compare.tsv"};
  if (common.dry_run) {
    DryRun(outputs);
    return 0;
  }
  struct Row {
    std::string method;
    int order;
    double bits;
  };
  std::vector<Row> rows;
  for (auto &c : configs) {
    Trained t = TrainFromConfig(c, data);
    Encoded test = EncodeCorpus(data.test, data.vocab, c.model.order);
    EvalOptions eo;
    eo.count_eos = c.count_eos;
    eo.threads = c.threads;
    eo.vocab = &data.vocab;
    rows.push_back({std::string(MethodName(c.model.method)), c.model.order,
                    CrossEntropy(*t.built.model, test, eo).bits});
  }
  double reference = rows.front().bits;
  for (const auto &r : rows) {
    if (r.method == MethodName(Method::kBaseline)) {
      reference = r.bits;
      break;
    }
  }
  std::ostringstream tsv;
  tsv << "method\torder\tbits\tperplexity\tdiff_vs_baseline\n";
  for (const auto &r : rows) {
    tsv << r.method << '\t' << r.order << '\t' << FormatDouble(r.bits) << '\t'
        << FormatDouble(Perplexity(r.bits)) << '\t'
        << FormatDouble(r.bits - reference) << '\n';
  }
  std::cout << tsv.str();
  if (!dir.empty()) {
    EnsureDir(dir);
    OpenOut(outputs[0]) << tsv.str();
  }
  return 0;
}

int ReportError(ErrorKind kind, const std::string &message) {
  int code = ExitCodeFor(kind);
  json j{{"error",
          {{"kind", std::string(ErrorKindName(kind))},
           {"message", message},
           {"exit_code", code}}}};
  std::cerr << j.dump() << '\n';
  return code;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"n-gram language model smoothing toolkit"};
  app.require_subcommand(1);
  Common common;
  app.add_flag("--dry-run", common.dry_run,
               "Validate inputs and write nothing");
  app.add_option("--threads", common.threads, "Worker threads")
      ->check(CLI::PositiveNumber);

  auto *count = app.add_subcommand("count", "Count n-grams in a corpus");
  std::string c_corpus, c_vocab, c_out, c_vocab_out;
  int c_order = 3, c_min_count = 1;
  bool c_lower = false;
  count->add_option("--corpus", c_corpus, "Corpus file")->required();
  count->add_option("--order", c_order, "Highest order");
  count->add_option("--min-count", c_min_count, "Vocabulary count cutoff");
  count->add_option("--vocab", c_vocab, "Existing vocabulary file");
  count->add_flag("--lowercase", c_lower, "Fold case");
  count->add_option("--out", c_out, "Count file")->required();
  count->add_option("--vocab-out", c_vocab_out, "Vocabulary file to write");

  auto *train = app.add_subcommand("train", "Train a model");
  ConfigFlags train_flags;
  train_flags.Add(train, true);

  auto *tune = app.add_subcommand("tune", "Search method parameters");
  ConfigFlags tune_flags;
  bool no_search = false;
  tune_flags.Add(tune, true);
  tune->add_flag("--no-search", no_search, "Apply presets instead");

  auto *eval = app.add_subcommand("eval", "Cross-entropy of a test set");
  std::string e_model, e_vocab, e_test, e_dir;
  bool e_lower = false, e_count_eos = true;
  eval->add_option("--model", e_model, "Model file")->required();
  eval->add_option("--vocab", e_vocab, "Vocabulary file")->required();
  eval->add_option("--test", e_test, "Test sentences")->required();
  eval->add_flag("--lowercase", e_lower, "Fold case");
  eval->add_option("--count-eos", e_count_eos,
                   "Count end-of-sentence predictions in N_T");
  eval->add_option("--out-dir", e_dir, "Report directory (default stdout)");

  auto *analyze = app.add_subcommand("analyze", "Per-count diagnostics");
  std::string a_model, a_vocab, a_counts, a_test, a_dir;
  bool a_lower = false;
  int a_order = 0;
  long long a_tail = 40;
  analyze->add_option("--model", a_model, "Model file")->required();
  analyze->add_option("--vocab", a_vocab, "Vocabulary file")->required();
  analyze->add_option("--counts", a_counts, "Training count file")->required();
  analyze->add_option("--test", a_test, "Test sentences")->required();
  analyze->add_flag("--lowercase", a_lower, "Fold case");
  analyze->add_option("--order", a_order, "Analysis order (default model's)");
  analyze->add_option("--tail", a_tail, "Last count row, holds higher counts");
  analyze->add_option("--out-dir", a_dir, "Report directory (default stdout)");

  auto *compare = app.add_subcommand("compare", "Test entropy across configs");
  std::vector<std::string> m_configs;
  std::string m_dir;
  compare->add_option("--config", m_configs, "Experiment configs")
      ->required()
      ->check(CLI::ExistingFile);
  compare->add_option("--out-dir", m_dir, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    return ReportError(ErrorKind::kInvalidParameter, e.what());
  }

  try {
    if (*count) {
      return CmdCount(common, c_corpus, c_order, c_min_count, c_vocab, c_lower,
                      c_out, c_vocab_out);
    }
    if (*train) return CmdTrain(common, train_flags);
    if (*tune) return CmdTune(common, tune_flags, no_search);
    if (*eval) {
      return CmdEval(common, e_model, e_vocab, e_test, e_lower, e_count_eos,
                     e_dir);
    }
    if (*analyze) {
      return CmdAnalyze(common, a_model, a_vocab, a_counts, a_test, a_lower,
                        a_order, a_tail, a_dir);
    }
    if (*compare) return CmdCompare(common, m_configs, m_dir);
  } catch (const Error &e) {
    return ReportError(e.kind(), e.what());
  } catch (const std::exception &e) {
    return ReportError(ErrorKind::kNumericFailure, e.what());
  }
  return 0;
}
