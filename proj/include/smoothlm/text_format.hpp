// text_format.hpp
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
// Locale-free number formatting and parsing for the text file formats.

#ifndef SMOOTHLM_TEXT_FORMAT_HPP_
#define SMOOTHLM_TEXT_FORMAT_HPP_

#include <string>
#include <string_view>
#include <vector>

namespace smoothlm {

// Shortest form that reads back to the same double; "inf", "-inf", "nan".
std::string FormatDouble(double x);
// Throws kFormat naming `what` on malformed input.
double ParseDouble(std::string_view text, std::string_view what);
long long ParseInteger(std::string_view text, std::string_view what);

// Splits on `sep`, keeping empty fields.
std::vector<std::string_view> SplitFields(std::string_view line, char sep);
// Splits on runs of spaces and tabs.
std::vector<std::string_view> SplitWhitespace(std::string_view line);

}  // namespace smoothlm

#endif  // SMOOTHLM_TEXT_FORMAT_HPP_
