// config.hpp
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
// Experiment configuration and the data preparation it drives. A config and
// its corpus files determine every output byte.

#ifndef SMOOTHLM_CONFIG_HPP_
#define SMOOTHLM_CONFIG_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "smoothlm/build.hpp"
#include "smoothlm/corpus.hpp"

namespace smoothlm {

struct ExperimentConfig {
  // Either one corpus cut by `split`, or separate files per role.
  std::string corpus;
  std::string train_file;
  std::string dev1_file;
  std::string dev2_file;
  std::string test_file;
  // Vocabulary: an explicit file, or the training words seen min_count times.
  std::string vocab_file;
  int min_count = 1;
  bool lowercase = false;
  SplitSizes split;
  // Shuffles sentences before splitting when set.
  std::optional<std::uint64_t> shuffle_seed;
  ModelSpec model;
  bool tune = false;
  bool count_eos = true;
  std::string output_dir = "out";
  int threads = 1;
};

nlohmann::json ConfigToJson(const ExperimentConfig &config);
// Throws kFormat on unknown keys or wrong types.
ExperimentConfig ConfigFromJson(const nlohmann::json &j);
ExperimentConfig ReadConfigFile(const std::string &path);
void WriteConfigFile(const ExperimentConfig &config, const std::string &path);

nlohmann::json ModelSpecToJson(const ModelSpec &spec);
ModelSpec ModelSpecFromJson(const nlohmann::json &j);

struct PreparedData {
  Vocabulary vocab;
  std::vector<Sentence> train;
  std::vector<Sentence> dev1;
  std::vector<Sentence> dev2;
  std::vector<Sentence> test;
};

PreparedData PrepareData(const ExperimentConfig &config);

// Fisher-Yates with a 64-bit Mersenne twister; the same on every platform.
void ShuffleSentences(std::vector<Sentence> &sentences, std::uint64_t seed);

}  // namespace smoothlm

#endif  // SMOOTHLM_CONFIG_HPP_
