// test_cli.cc
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

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"

namespace {

namespace fs = std::filesystem;

struct RunResult {
  int code = -1;
  std::string out;
  std::string err;
};

std::string Slurp(const fs::path &p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class Workdir {
 public:
  explicit Workdir(const std::string &name)
      : dir_(fs::temp_directory_path() / ("smoothlm_cli_" + name)) {
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  ~Workdir() { fs::remove_all(dir_); }
  fs::path operator/(const std::string &name) const { return dir_ / name; }
  std::string str(const std::string &name) const { return (dir_ / name).string(); }

  RunResult Run(const std::string &args) const {
    auto out = dir_ / "stdout.txt", err = dir_ / "stderr.txt";
    std::string cmd = std::string(SMOOTHLM_CLI_PATH) + " " + args + " >" +
                      out.string() + " 2>" + err.string();
    int status = std::system(cmd.c_str());
    RunResult r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = Slurp(out);
    r.err = Slurp(err);
    return r;
  }

  void Write(const std::string &name, const std::string &text) const {
    std::ofstream(dir_ / name) << text;
  }

 private:
  fs::path dir_;
};

// Value of a "key  value" line in the eval report.
double ReportValue(const std::string &report, const std::string &key) {
  std::istringstream in(report);
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream fields(line);
    std::string k;
    double v;
    if (fields >> k >> v && k == key) return v;
  }
  return NAN;
}

const std::string kJohn = std::string(SMOOTHLM_DATA_DIR) + "/john.txt";
const std::string kSample = std::string(SMOOTHLM_DATA_DIR) + "/sample.txt";

TEST_CASE("train then eval reproduces the plus-one worked example") {
  Workdir w("golden");
  auto t = w.Run("train --corpus " + kJohn +
                 " --method plus-one --order 2"
                 " --additive-denominator content-words --out-dir " +
                 w.str("m"));
  REQUIRE(t.code == 0);
  w.Write("test.txt", "John read a book\n");
  auto e = w.Run("eval --model " + w.str("m/model.txt") + " --vocab " +
                 w.str("m/vocab.txt") + " --test " + w.str("test.txt"));
  REQUIRE(e.code == 0);
  CHECK(ReportValue(e.out, "tokens") == 5.0);
  CHECK(ReportValue(e.out, "bits/word") ==
        doctest::Approx(-std::log2(12.0 / 99372.0) / 5.0).epsilon(1e-14));
  CHECK(e.out.find("\tJohn read a book") != std::string::npos);
  auto no_eos = w.Run("eval --model " + w.str("m/model.txt") + " --vocab " +
                      w.str("m/vocab.txt") + " --test " + w.str("test.txt") +
                      " --count-eos false");
  CHECK(ReportValue(no_eos.out, "tokens") == 4.0);
}

TEST_CASE("compare puts plus-one above the baseline") {
  Workdir w("compare");
  for (std::string m : {"interp-baseline", "plus-one"}) {
    w.Write(m + ".json", "{\"corpus\":\"" + kSample +
                             "\",\"split\":{\"test\":50,\"dev1\":20,"
                             "\"dev2\":20,\"train\":400},"
                             "\"model\":{\"method\":\"" + m +
                             "\",\"order\":2}}");
  }
  auto r = w.Run("compare --config " + w.str("interp-baseline.json") +
                 " --config " + w.str("plus-one.json") + " --out-dir " +
                 w.str("cmp"));
  REQUIRE(r.code == 0);
  std::istringstream in(Slurp(w / "cmp/compare.tsv"));
  std::string header, method;
  std::getline(in, header);
  CHECK(header == "method\torder\tbits\tperplexity\tdiff_vs_baseline");
  int order;
  double bits, ppl, diff;
  REQUIRE(static_cast<bool>(in >> method >> order >> bits >> ppl >> diff));
  CHECK(method == "interp-baseline");
  CHECK(diff == 0.0);
  REQUIRE(static_cast<bool>(in >> method >> order >> bits >> ppl >> diff));
  CHECK(method == "plus-one");
  CHECK(diff > 0.5);
  CHECK(ppl == doctest::Approx(std::exp2(bits)).epsilon(1e-12));
}

TEST_CASE("a model evaluated with the wrong vocabulary is refused") {
  Workdir w("mismatch");
  REQUIRE(w.Run("train --corpus " + kJohn + " --method plus-one --order 2" +
                " --out-dir " + w.str("a"))
              .code == 0);
  REQUIRE(w.Run("train --corpus " + kSample + " --method plus-one --order 2" +
                " --out-dir " + w.str("b"))
              .code == 0);
  w.Write("test.txt", "John read a book\n");
  auto r = w.Run("eval --model " + w.str("a/model.txt") + " --vocab " +
                 w.str("b/vocab.txt") + " --test " + w.str("test.txt"));
  CHECK(r.code != 0);
  auto report = Slurp(w / "a/train_report.json");
  auto pos = report.find("\"vocab\": \"");
  REQUIRE(pos != std::string::npos);
  std::string hash = report.substr(pos + 10, 16);
  CHECK(r.err.find(hash) != std::string::npos);
  CHECK(r.err.find("\"error\"") != std::string::npos);
}

TEST_CASE("dry run writes nothing") {
  Workdir w("dry");
  auto r = w.Run("--dry-run train --corpus " + kJohn +
                 " --method katz --order 2 --out-dir " + w.str("m"));
  CHECK(r.code == 0);
  CHECK(!fs::exists(w / "m"));
  auto c = w.Run("--dry-run count --corpus " + kJohn + " --out " +
                 w.str("c.txt"));
  CHECK(c.code == 0);
  CHECK(!fs::exists(w / "c.txt"));
}

TEST_CASE("two runs produce identical files") {
  Workdir w("determinism");
  w.Write("c.json", "{\"corpus\":\"" + kSample +
                        "\",\"min_count\":2,\"shuffle_seed\":7,"
                        "\"split\":{\"test\":100,\"dev1\":100,"
                        "\"dev2\":100,\"train\":1000},"
                        "\"model\":{\"method\":\"new-one-count\","
                        "\"order\":2}}");
  for (std::string run : {"one", "two"}) {
    auto r = w.Run("--threads 2 tune --config " + w.str("c.json") +
                   " --out-dir " + w.str(run));
    REQUIRE(r.code == 0);
  }
  int compared = 0;
  for (const auto &entry : fs::directory_iterator(w / "one")) {
    auto name = entry.path().filename().string();
    CAPTURE(name);
    auto a = Slurp(entry.path()), b = Slurp(w / "two" / name);
    // Configs name their own output directory.
    for (auto *text : {&a, &b}) {
      auto at = text->find("\"output_dir\"");
      if (at != std::string::npos) text->erase(at, text->find('\n', at) - at);
    }
    CHECK(a == b);
    ++compared;
  }
  CHECK(compared >= 3);
}

TEST_CASE("exit codes") {
  Workdir w("codes");
  CHECK(w.Run("train --corpus " + kJohn + " --method no-such-method").code ==
        2);
  CHECK(w.Run("train --corpus " + kJohn + " --method plus-delta --delta -1" +
              " --out-dir " + w.str("m"))
            .code == 2);
  auto missing = w.Run("count --corpus " + w.str("missing.txt") + " --out " +
                       w.str("c.txt"));
  CHECK(missing.code == 4);
  CHECK(missing.err.find("missing.txt") != std::string::npos);
  w.Write("test.txt", "Moby read a book\n");
  REQUIRE(w.Run("train --corpus " + kJohn + " --method ml --order 2" +
                " --out-dir " + w.str("ml"))
              .code == 0);
  auto inf = w.Run("eval --model " + w.str("ml/model.txt") + " --vocab " +
                   w.str("ml/vocab.txt") + " --test " + w.str("test.txt"));
  CHECK(inf.code == 3);
}

}  // namespace
