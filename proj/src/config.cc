// config.cc
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

#include "smoothlm/config.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <set>

#include "smoothlm/error.hpp"

namespace smoothlm {

using nlohmann::json;

namespace {

void CheckKeys(const json &j, const std::set<std::string> &allowed,
               const std::string &where) {
  if (!j.is_object()) Fail(ErrorKind::kFormat, where + " must be an object");
  for (const auto &[k, v] : j.items()) {
    if (!allowed.count(k)) {
      Fail(ErrorKind::kFormat, "unknown key '" + k + "' in " + where);
    }
  }
}

template <typename T>
void Get(const json &j, const char *key, T &out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception &e) {
    Fail(ErrorKind::kFormat, std::string("bad value for '") + key +
                                 "': " + e.what());
  }
}

// JSON has no infinity; null stands for it.
json Number(double x) { return std::isinf(x) ? json(nullptr) : json(x); }

void GetNumber(const json &j, const char *key, double &out) {
  if (j.contains(key) && j.at(key).is_null()) {
    out = HUGE_VAL;
    return;
  }
  Get(j, key, out);
}

}  // namespace

json ModelSpecToJson(const ModelSpec &spec) {
  json p;
  p["delta"] = spec.delta;
  p["beta"] = spec.beta;
  p["k"] = spec.k;
  p["c_min"] = Number(spec.c_min);
  p["c_top"] = Number(spec.c_top);
  p["c_mb"] = spec.church_gale.c_mb;
  p["cg_c_min"] = Number(spec.church_gale.c_min);
  p["p_n1_0"] = spec.church_gale.p_n1_0;
  p["p_n1_n"] = spec.church_gale.p_n1_n;
  p["one_count_beta"] = spec.one_count.beta;
  p["one_count_gamma"] = spec.one_count.gamma;
  p["lambda0"] = spec.baum_welch.lambda0;
  p["delta_stop"] = spec.baum_welch.delta_stop;
  p["max_iterations"] = spec.baum_welch.max_iterations;
  p["additive_denominator"] =
      spec.additive_denominator == AdditiveDenominator::kContentWords
          ? "content-words"
          : "predicted-events";
  return json{{"method", std::string(MethodName(spec.method))},
              {"order", spec.order},
              {"params", p}};
}

ModelSpec ModelSpecFromJson(const json &j) {
  CheckKeys(j, {"method", "order", "params"}, "model");
  ModelSpec spec;
  std::string method = std::string(MethodName(spec.method));
  Get(j, "method", method);
  spec.method = ParseMethod(method);
  Get(j, "order", spec.order);
  if (spec.order < 1) Fail(ErrorKind::kInvalidParameter, "order must be >= 1");
  if (!j.contains("params")) return spec;
  const json &p = j.at("params");
  CheckKeys(p,
            {"delta", "beta", "k", "c_min", "c_top", "c_mb", "cg_c_min",
             "p_n1_0", "p_n1_n", "one_count_beta", "one_count_gamma",
             "lambda0", "delta_stop", "max_iterations",
             "additive_denominator"},
            "model.params");
  Get(p, "delta", spec.delta);
  Get(p, "beta", spec.beta);
  Get(p, "k", spec.k);
  GetNumber(p, "c_min", spec.c_min);
  GetNumber(p, "c_top", spec.c_top);
  Get(p, "c_mb", spec.church_gale.c_mb);
  GetNumber(p, "cg_c_min", spec.church_gale.c_min);
  Get(p, "p_n1_0", spec.church_gale.p_n1_0);
  Get(p, "p_n1_n", spec.church_gale.p_n1_n);
  Get(p, "one_count_beta", spec.one_count.beta);
  Get(p, "one_count_gamma", spec.one_count.gamma);
  Get(p, "lambda0", spec.baum_welch.lambda0);
  Get(p, "delta_stop", spec.baum_welch.delta_stop);
  Get(p, "max_iterations", spec.baum_welch.max_iterations);
  std::string denom = "predicted-events";
  Get(p, "additive_denominator", denom);
  if (denom == "content-words") {
    spec.additive_denominator = AdditiveDenominator::kContentWords;
  } else if (denom != "predicted-events") {
    Fail(ErrorKind::kFormat, "additive_denominator must be predicted-events "
                             "or content-words");
  }
  return spec;
}

json ConfigToJson(const ExperimentConfig &c) {
  json j;
  j["corpus"] = c.corpus;
  j["train_file"] = c.train_file;
  j["dev1_file"] = c.dev1_file;
  j["dev2_file"] = c.dev2_file;
  j["test_file"] = c.test_file;
  j["vocab_file"] = c.vocab_file;
  j["min_count"] = c.min_count;
  j["lowercase"] = c.lowercase;
  j["split"] = {{"test", c.split.test},
                {"dev1", c.split.dev1},
                {"dev2", c.split.dev2},
                {"train", c.split.train}};
  j["shuffle_seed"] = c.shuffle_seed ? json(*c.shuffle_seed) : json(nullptr);
  j["model"] = ModelSpecToJson(c.model);
  j["tune"] = c.tune;
  j["count_eos"] = c.count_eos;
  j["output_dir"] = c.output_dir;
  j["threads"] = c.threads;
  return j;
}

ExperimentConfig ConfigFromJson(const json &j) {
  CheckKeys(j,
            {"corpus", "train_file", "dev1_file", "dev2_file", "test_file",
             "vocab_file", "min_count", "lowercase", "split", "shuffle_seed",
             "model", "tune", "count_eos", "output_dir", "threads"},
            "config");
  ExperimentConfig c;
  Get(j, "corpus", c.corpus);
  Get(j, "train_file", c.train_file);
  Get(j, "dev1_file", c.dev1_file);
  Get(j, "dev2_file", c.dev2_file);
  Get(j, "test_file", c.test_file);
  Get(j, "vocab_file", c.vocab_file);
  Get(j, "min_count", c.min_count);
  Get(j, "lowercase", c.lowercase);
  if (j.contains("split")) {
    const json &s = j.at("split");
    CheckKeys(s, {"test", "dev1", "dev2", "train"}, "split");
    Get(s, "test", c.split.test);
    Get(s, "dev1", c.split.dev1);
    Get(s, "dev2", c.split.dev2);
    Get(s, "train", c.split.train);
  }
  if (j.contains("shuffle_seed") && !j.at("shuffle_seed").is_null()) {
    std::uint64_t seed = 0;
    Get(j, "shuffle_seed", seed);
    c.shuffle_seed = seed;
  }
  if (j.contains("model")) c.model = ModelSpecFromJson(j.at("model"));
  Get(j, "tune", c.tune);
  Get(j, "count_eos", c.count_eos);
  Get(j, "output_dir", c.output_dir);
  Get(j, "threads", c.threads);
  if (c.corpus.empty() && c.train_file.empty()) {
    Fail(ErrorKind::kInvalidParameter,
         "config needs a corpus or a train_file");
  }
  return c;
}

ExperimentConfig ReadConfigFile(const std::string &path) {
  std::ifstream in(path);
  if (!in) Fail(ErrorKind::kIo, "cannot read " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception &e) {
    Fail(ErrorKind::kFormat, path + ": " + e.what());
  }
  return ConfigFromJson(j);
}

void WriteConfigFile(const ExperimentConfig &config, const std::string &path) {
  std::ofstream out(path);
  if (!out) Fail(ErrorKind::kIo, "cannot write " + path);
  out << ConfigToJson(config).dump(2) << '\n';
  if (!out.flush()) Fail(ErrorKind::kIo, "write failed: " + path);
}

void ShuffleSentences(std::vector<Sentence> &sentences, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (std::size_t i = sentences.size(); i > 1; --i) {
    // Unbiased draw from [0, i) by rejection.
    const std::uint64_t bound = i;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t r;
    do {
      r = rng();
    } while (r >= limit);
    std::swap(sentences[i - 1], sentences[r % bound]);
  }
}

PreparedData PrepareData(const ExperimentConfig &config) {
  PreparedData out;
  if (!config.corpus.empty()) {
    auto all = ReadSentencesFile(config.corpus, config.lowercase);
    if (config.shuffle_seed) ShuffleSentences(all, *config.shuffle_seed);
    DataSplit split = SplitCorpus(all.size(), config.split);
    auto take = [&](const Range &r) {
      return std::vector<Sentence>(all.begin() + r.begin, all.begin() + r.end);
    };
    out.test = take(split.test);
    out.dev1 = take(split.dev1);
    out.dev2 = take(split.dev2);
    out.train = take(split.train);
  } else {
    out.train = ReadSentencesFile(config.train_file, config.lowercase);
    if (!config.dev1_file.empty()) {
      out.dev1 = ReadSentencesFile(config.dev1_file, config.lowercase);
    }
    if (!config.dev2_file.empty()) {
      out.dev2 = ReadSentencesFile(config.dev2_file, config.lowercase);
    }
    if (!config.test_file.empty()) {
      out.test = ReadSentencesFile(config.test_file, config.lowercase);
    }
  }
  if (!config.vocab_file.empty()) {
    out.vocab = ReadVocabularyFile(config.vocab_file);
  } else {
    out.vocab = BuildVocabulary(out.train, config.min_count);
  }
  return out;
}

}  // namespace smoothlm
