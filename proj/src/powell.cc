// powell.cc
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

#include "smoothlm/powell.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "smoothlm/error.hpp"
#include "smoothlm/text_format.hpp"

namespace smoothlm {

namespace {

constexpr double kGolden = 0.6180339887498949;

class Minimizer {
 public:
  Minimizer(const Objective &f, const std::vector<Bounds> &bounds,
            const PowellOptions &options)
      : f_(f), bounds_(bounds), options_(options) {}

  double Eval(const std::vector<double> &x) {
    double v = f_(x);
    ++evaluations_;
    if (!std::isfinite(v)) {
      std::string point;
      for (double xi : x) point += (point.empty() ? "" : ",") + FormatDouble(xi);
      Fail(ErrorKind::kNumericFailure,
           "objective is not finite at (" + point + ")");
    }
    return v;
  }

  // Minimizes along d from x, updating both x and fx.
  void LineMin(std::vector<double> &x, double &fx,
               const std::vector<double> &d) {
    double tmin = -HUGE_VAL, tmax = HUGE_VAL;
    for (std::size_t i = 0; i < x.size() && !bounds_.empty(); ++i) {
      if (d[i] == 0.0) continue;
      double a = (bounds_[i].lo - x[i]) / d[i];
      double b = (bounds_[i].hi - x[i]) / d[i];
      tmin = std::max(tmin, std::min(a, b));
      tmax = std::min(tmax, std::max(a, b));
    }
    tmin = std::min(tmin, 0.0);
    tmax = std::max(tmax, 0.0);
    auto at = [&](double t) {
      std::vector<double> y(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) {
        y[i] = x[i] + t * d[i];
        if (!bounds_.empty()) y[i] = std::clamp(y[i], bounds_[i].lo, bounds_[i].hi);
      }
      return y;
    };
    std::map<double, double> seen{{0.0, fx}};
    auto F = [&](double t) {
      auto it = seen.find(t);
      if (it != seen.end()) return it->second;
      double v = Eval(at(t));
      seen[t] = v;
      return v;
    };

    // Bracket [a, c] around a minimum.
    double a = 0.0, c = 0.0;
    double plus = std::min(1.0, tmax), minus = std::max(-1.0, tmin);
    double step;
    if (plus > 0.0 && F(plus) < fx) {
      step = plus;
    } else if (minus < 0.0 && F(minus) < fx) {
      step = minus;
    } else {
      step = 0.0;
    }
    if (step == 0.0) {
      a = minus;
      c = plus;
    } else {
      double prev = 0.0, mid = step, fmid = F(mid);
      bool bracketed = false;
      for (int grow = 0; grow < 200 && !bracketed; ++grow) {
        double next = std::clamp(mid + (mid - prev) / kGolden, tmin, tmax);
        if (next == mid) break;  // still falling at the bound
        double fn = F(next);
        if (fn >= fmid) {
          bracketed = true;
          a = std::min(prev, next);
          c = std::max(prev, next);
        } else {
          prev = mid;
          mid = next;
          fmid = fn;
        }
      }
      if (!bracketed) {
        a = std::min(prev, mid);
        c = std::max(prev, mid);
      }
    }
    double x1 = c - kGolden * (c - a), x2 = a + kGolden * (c - a);
    double f1 = F(x1), f2 = F(x2);
    while (c - a > options_.xtol * (1.0 + std::fabs(x1))) {
      if (f1 <= f2) {
        c = x2;
        x2 = x1;
        f2 = f1;
        x1 = c - kGolden * (c - a);
        f1 = F(x1);
      } else {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = a + kGolden * (c - a);
        f2 = F(x2);
      }
    }
    // Best point evaluated on this line, including the start.
    double best_t = 0.0;
    double best_f = fx;
    for (const auto &[t, v] : seen) {
      if (v < best_f) {
        best_f = v;
        best_t = t;
      }
    }
    x = at(best_t);
    fx = best_f;
  }

  int evaluations() const { return evaluations_; }

 private:
  const Objective &f_;
  const std::vector<Bounds> &bounds_;
  const PowellOptions &options_;
  int evaluations_ = 0;
};

}  // namespace

PowellResult PowellMinimize(const Objective &f, std::vector<double> x0,
                            const std::vector<Bounds> &bounds,
                            const PowellOptions &options) {
  const std::size_t n = x0.size();
  if (!bounds.empty() && bounds.size() != n) {
    Fail(ErrorKind::kInvalidParameter, "one bound per coordinate required");
  }
  for (std::size_t i = 0; i < n && !bounds.empty(); ++i) {
    if (!(x0[i] >= bounds[i].lo && x0[i] <= bounds[i].hi)) {
      Fail(ErrorKind::kInvalidParameter, "start point outside the bounds");
    }
  }
  Minimizer m(f, bounds, options);
  PowellResult out;
  out.x = std::move(x0);
  out.f = m.Eval(out.x);
  if (n == 0) {
    out.converged = true;
    out.evaluations = m.evaluations();
    return out;
  }
  // Unit directions, scaled to a tenth of the box where it is finite.
  std::vector<std::vector<double>> dirs(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    double scale = 1.0;
    if (!bounds.empty() && std::isfinite(bounds[i].hi - bounds[i].lo)) {
      scale = 0.1 * (bounds[i].hi - bounds[i].lo);
    }
    dirs[i][i] = scale;
  }
  for (out.iterations = 1; out.iterations <= options.max_iterations;
       ++out.iterations) {
    const double fstart = out.f;
    const std::vector<double> xstart = out.x;
    double biggest = 0.0;
    std::size_t ibig = 0;
    for (std::size_t i = 0; i < n; ++i) {
      double before = out.f;
      m.LineMin(out.x, out.f, dirs[i]);
      if (before - out.f > biggest) {
        biggest = before - out.f;
        ibig = i;
      }
    }
    if (2.0 * (fstart - out.f) <=
        options.ftol * (std::fabs(fstart) + std::fabs(out.f)) + 1e-300) {
      out.converged = true;
      break;
    }
    if (n == 1) continue;
    std::vector<double> xe(n), dnew(n);
    for (std::size_t i = 0; i < n; ++i) {
      dnew[i] = out.x[i] - xstart[i];
      xe[i] = 2.0 * out.x[i] - xstart[i];
      if (!bounds.empty()) xe[i] = std::clamp(xe[i], bounds[i].lo, bounds[i].hi);
    }
    double fe = m.Eval(xe);
    if (fe < fstart) {
      double t = 2.0 * (fstart - 2.0 * out.f + fe) *
                     std::pow(fstart - out.f - biggest, 2) -
                 biggest * std::pow(fstart - fe, 2);
      if (t < 0.0) {
        m.LineMin(out.x, out.f, dnew);
        dirs[ibig] = dirs.back();
        dirs.back() = dnew;
      }
    }
  }
  out.iterations = std::min(out.iterations, options.max_iterations);
  out.evaluations = m.evaluations();
  return out;
}

IntegerSearchResult IntegerLogSearch(const std::function<double(long long)> &f,
                                     long long lo, long long hi,
                                     int per_decade) {
  if (lo < 1 || hi < lo || per_decade < 1) {
    Fail(ErrorKind::kInvalidParameter, "bad integer search range");
  }
  std::map<long long, double> seen;
  auto F = [&](long long x) {
    x = std::clamp(x, lo, hi);
    auto it = seen.find(x);
    if (it != seen.end()) return it->second;
    double v = f(x);
    if (!std::isfinite(v)) {
      Fail(ErrorKind::kNumericFailure,
           "objective is not finite at " + std::to_string(x));
    }
    seen[x] = v;
    return v;
  };
  const double decades = std::log10(static_cast<double>(hi) / lo);
  const int steps = std::max(1, static_cast<int>(std::ceil(decades * per_decade)));
  for (int i = 0; i <= steps; ++i) {
    double v = static_cast<double>(lo) *
               std::pow(10.0, decades * i / static_cast<double>(steps));
    F(static_cast<long long>(std::llround(v)));
  }
  auto best = [&] {
    return std::min_element(seen.begin(), seen.end(), [](auto &a, auto &b) {
             return a.second < b.second;
           })->first;
  };
  double ratio = std::pow(10.0, 1.0 / per_decade);
  while (true) {
    ratio = std::sqrt(ratio);
    long long x = best();
    long long up = std::max(x + 1, static_cast<long long>(std::llround(x * ratio)));
    long long down =
        std::min(x - 1, static_cast<long long>(std::llround(x / ratio)));
    if (up <= hi) F(up);
    if (down >= lo) F(down);
    if (up == x + 1 && (down == x - 1 || down < lo)) break;
  }
  // Walk by one while it helps.
  for (long long x = best();;) {
    if (x + 1 <= hi) F(x + 1);
    if (x - 1 >= lo) F(x - 1);
    long long b = best();
    if (b == x) break;
    x = b;
  }
  long long x = best();
  return {x, seen[x]};
}

}  // namespace smoothlm
