// text_format.cc
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

#include "smoothlm/text_format.hpp"

#include <charconv>
#include <cmath>

#include "smoothlm/error.hpp"

namespace smoothlm {

std::string FormatDouble(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

double ParseDouble(std::string_view text, std::string_view what) {
  if (text == "inf" || text == "+inf") return HUGE_VAL;
  if (text == "-inf") return -HUGE_VAL;
  double x = 0.0;
  const char *begin = text.data();
  if (!text.empty() && text.front() == '+') ++begin;
  auto res = std::from_chars(begin, text.data() + text.size(), x);
  if (text.empty() || res.ec != std::errc() ||
      res.ptr != text.data() + text.size()) {
    Fail(ErrorKind::kFormat,
         "bad number '" + std::string(text) + "' for " + std::string(what));
  }
  return x;
}

long long ParseInteger(std::string_view text, std::string_view what) {
  long long x = 0;
  auto res = std::from_chars(text.data(), text.data() + text.size(), x);
  if (text.empty() || res.ec != std::errc() ||
      res.ptr != text.data() + text.size()) {
    Fail(ErrorKind::kFormat,
         "bad integer '" + std::string(text) + "' for " + std::string(what));
  }
  return x;
}

std::vector<std::string_view> SplitFields(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

std::vector<std::string_view> SplitWhitespace(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

}  // namespace smoothlm
