// tune.cc
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

#include "smoothlm/tune.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "smoothlm/error.hpp"
#include "smoothlm/evaluate.hpp"
#include "smoothlm/text_format.hpp"

namespace smoothlm {

double DevEntropy(const ModelSpec &spec, const TuneData &data, int threads) {
  auto built = BuildModel(data.train, spec, data.dev2);
  EvalOptions eo;
  eo.threads = threads;
  return CrossEntropy(*built.model, data.dev1, eo).bits;
}

double KatzPresetDelta(double training_sentences) {
  return 0.0011 * std::pow(training_sentences, 0.7);
}

ChurchGaleOptions ChurchGalePreset(double training_sentences,
                                   bool scale_c_min) {
  ChurchGaleOptions o;
  o.c_min = scale_c_min ? std::max(1.0, training_sentences / 200.0) : 500.0;
  o.c_mb = 100000;
  o.p_n1_0 = 0.01;
  o.p_n1_n = 0.995;
  return o;
}

TuneResult TuneParameters(const ModelSpec &start, const TuneData &data,
                          const TuneOptions &options) {
  if (data.dev1.empty()) {
    Fail(ErrorKind::kInvalidParameter, "tuning needs a nonempty dev1 set");
  }
  TuneResult out;
  out.spec = start;
  ModelSpec &spec = out.spec;
  auto score = [&](const ModelSpec &s, ParamMap p) {
    double v = DevEntropy(s, data, options.threads);
    out.audit.push_back({std::move(p), v});
    return v;
  };
  const double sentences =
      static_cast<double>(data.train->CountOf(std::vector<WordId>{kEos}));

  if (!options.search) {
    if (spec.method == Method::kKatz) spec.delta = KatzPresetDelta(sentences);
    if (spec.method == Method::kChurchGale) {
      spec.church_gale = ChurchGalePreset(sentences);
    }
    out.dev1_bits = DevEntropy(spec, data, options.threads);
    return out;
  }

  switch (spec.method) {
    case Method::kMl:
    case Method::kPlusOne:
    case Method::kBaseline:
      out.dev1_bits = DevEntropy(spec, data, options.threads);
      return out;
    case Method::kInterpHeldOut:
    case Method::kInterpDelInt:
    case Method::kAvgCount: {
      auto r = IntegerLogSearch(
          [&](long long c) {
            ModelSpec s = spec;
            s.c_min = static_cast<double>(c);
            return score(s, {{"c_min", s.c_min}});
          },
          1, options.c_min_max);
      spec.c_min = static_cast<double>(r.x);
      out.dev1_bits = r.f;
      return out;
    }
    case Method::kPlusDelta:
    case Method::kKatz: {
      double x0 = std::clamp(std::log10(spec.delta), -4.0, 2.0);
      auto r = PowellMinimize(
          [&](std::span<const double> x) {
            ModelSpec s = spec;
            s.delta = std::pow(10.0, x[0]);
            return score(s, {{"delta", s.delta}});
          },
          {x0}, {{-4.0, 2.0}}, options.powell);
      spec.delta = std::pow(10.0, r.x[0]);
      out.dev1_bits = r.f;
      return out;
    }
    case Method::kOneCount: {
      const int n = spec.order;
      if (spec.one_count.beta.empty()) spec.one_count.beta.assign(n, 1.0);
      if (spec.one_count.gamma.empty()) spec.one_count.gamma.assign(n, 1.0);
      // log10 space keeps every alpha positive.
      const Bounds beta_range{-2.0, 2.0}, gamma_range{-3.0, 1.5};
      std::vector<double> x0;
      std::vector<Bounds> bounds;
      for (int j = 0; j < n; ++j) {
        double b = spec.one_count.beta[j] > 0.0
                       ? std::log10(spec.one_count.beta[j])
                       : 0.0;
        x0.push_back(std::clamp(b, beta_range.lo, beta_range.hi));
        bounds.push_back(beta_range);
      }
      for (int j = 0; j < n; ++j) {
        double g = spec.one_count.gamma[j] > 0.0
                       ? std::log10(spec.one_count.gamma[j])
                       : 0.0;
        x0.push_back(std::clamp(g, gamma_range.lo, gamma_range.hi));
        bounds.push_back(gamma_range);
      }
      auto apply = [n](ModelSpec &s, std::span<const double> x) {
        ParamMap p;
        for (int j = 0; j < n; ++j) {
          s.one_count.beta[j] = std::pow(10.0, x[j]);
          s.one_count.gamma[j] = std::pow(10.0, x[n + j]);
          p["beta" + std::to_string(j + 1)] = s.one_count.beta[j];
          p["gamma" + std::to_string(j + 1)] = s.one_count.gamma[j];
        }
        return p;
      };
      auto r = PowellMinimize(
          [&](std::span<const double> x) {
            ModelSpec s = spec;
            ParamMap p = apply(s, x);
            return score(s, std::move(p));
          },
          x0, bounds, options.powell);
      apply(spec, r.x);
      out.dev1_bits = r.f;
      return out;
    }
    case Method::kChurchGale: {
      auto params = [](const ChurchGaleOptions &o) {
        return ParamMap{{"c_min", o.c_min},
                        {"c_mb", static_cast<double>(o.c_mb)},
                        {"p_n1_n", o.p_n1_n}};
      };
      double best = HUGE_VAL;
      for (int round = 0; round < options.church_gale_rounds; ++round) {
        auto rc = IntegerLogSearch(
            [&](long long c) {
              ModelSpec s = spec;
              s.church_gale.c_min = static_cast<double>(c);
              return score(s, params(s.church_gale));
            },
            1, options.c_min_max);
        spec.church_gale.c_min = static_cast<double>(rc.x);
        auto rm = IntegerLogSearch(
            [&](long long c) {
              ModelSpec s = spec;
              s.church_gale.c_mb = static_cast<int>(c);
              return score(s, params(s.church_gale));
            },
            options.c_mb_min, options.c_mb_max);
        spec.church_gale.c_mb = static_cast<int>(rm.x);
        double x0 = std::clamp(spec.church_gale.p_n1_n, 0.5, 0.9999);
        auto rp = PowellMinimize(
            [&](std::span<const double> x) {
              ModelSpec s = spec;
              s.church_gale.p_n1_n = x[0];
              return score(s, params(s.church_gale));
            },
            {x0}, {{0.5, 0.9999}}, options.powell);
        spec.church_gale.p_n1_n = rp.x[0];
        if (!(rp.f < best - 1e-9)) {
          best = std::min(best, rp.f);
          break;
        }
        best = rp.f;
      }
      out.dev1_bits = best;
      return out;
    }
  }
  return out;
}

void WriteAudit(const std::vector<AuditEntry> &audit, std::ostream &out) {
  for (const auto &e : audit) {
    for (const auto &[k, v] : e.params) out << k << '=' << FormatDouble(v) << '\t';
    out << "dev1_bits=" << FormatDouble(e.dev1_bits) << '\n';
  }
}

}  // namespace smoothlm
